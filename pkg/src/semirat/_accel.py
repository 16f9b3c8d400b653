"""Backend switch for the compiled kernels.

Set ``SEMIRAT_DISABLE_NUMBA=1`` to force the pure-numpy path.
"""

from __future__ import annotations

import os

_disabled = os.environ.get("SEMIRAT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    import numba  # noqa: F401
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

BACKEND = "numba" if HAVE_NUMBA else "numpy"
