"""Kernel backend selection.

Hot numeric kernels are compiled with numba when it is available. Setting
the environment variable ``ZNLCS_PURE_NUMPY=1`` (before import) forces the
pure-NumPy/Python fallback path, which runs the same code uncompiled.
"""

from __future__ import annotations

import os

PURE_NUMPY = os.environ.get("ZNLCS_PURE_NUMPY", "").strip() in ("1", "true", "yes")

if not PURE_NUMPY:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

if not HAVE_NUMBA:

    def njit(*args, **kwargs):
        """Identity decorator standing in for numba.njit."""
        if args and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(func):
            return func

        return wrap


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
