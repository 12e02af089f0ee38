"""Acceleration plumbing: numba when available, plain numpy otherwise.

The hot kernels in :mod:`gup_tunnel.kernels` are decorated with :func:`njit`.
Setting the environment variable ``GUP_TUNNEL_DISABLE_NUMBA`` to ``1``/``true``
/``yes``/``on`` before import forces the pure-numpy path; the same path is
taken automatically when numba is not importable.  Which path won is recorded
in :data:`BACKEND` so benchmarks and bug reports can state it.
"""

from __future__ import annotations

import os

ENV_FLAG = "GUP_TUNNEL_DISABLE_NUMBA"


def _resolve_backend() -> str:
    if os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}:
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _resolve_backend()
NUMBA_ENABLED = BACKEND == "numba"

if NUMBA_ENABLED:
    from numba import njit
else:

    def njit(*args, **kwargs):
        """Identity stand-in for numba.njit on the numpy fallback path."""
        if args and callable(args[0]) and not kwargs:
            return args[0]

        def decorate(func):
            return func

        return decorate
