"""Numba acceleration switch.

Hot kernels in :mod:`zetalab.kernels` come in two flavours: a numba
``@njit`` loop and a vectorised pure-numpy fallback.  Which one runs is
decided once at import time:

* ``ZETALAB_NO_NUMBA=1`` in the environment forces the numpy path;
* otherwise numba is used when it imports cleanly.

``benchmarks/bench_kernels.py`` times the two paths against each other
and checks they agree.
"""

import os

_DISABLED = os.environ.get("ZETALAB_NO_NUMBA", "").strip() not in ("", "0")

if not _DISABLED:
    try:
        import numba

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - exercised via env flag instead
        numba = None
        HAVE_NUMBA = False
else:
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise.

    Kernels decorated with this must stay nopython-compilable; the
    fallback path never calls them (it has its own numpy implementation),
    so the identity decorator only matters for introspection.
    """
    if USE_NUMBA:
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def wrap(fn):
        return fn

    return wrap


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
