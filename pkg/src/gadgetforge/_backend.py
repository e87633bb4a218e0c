"""Kernel backend selection.

Hot numeric loops (the Jacobi eigensolver, the Monte-Carlo hitting trials)
exist twice: a numba ``@njit`` version and a pure numpy/Python version.
``GADGETFORGE_BACKEND`` picks one:

    GADGETFORGE_BACKEND=numba   force numba (error if not importable)
    GADGETFORGE_BACKEND=numpy   force the pure path
    unset/auto                  numba when importable, numpy otherwise

Both paths run the same algorithm on the same integer RNG streams, so
integer-valued results (hit counts, sampled sets) are identical; float
results agree to solver tolerance.
"""

import os

_CHOICE = os.environ.get("GADGETFORGE_BACKEND", "auto").strip().lower()

if _CHOICE not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"GADGETFORGE_BACKEND must be auto|numba|numpy, got {_CHOICE!r}")

_HAVE_NUMBA = False
if _CHOICE in ("auto", "numba"):
    try:
        import numba  # noqa: F401

        _HAVE_NUMBA = True
    except ImportError:
        if _CHOICE == "numba":
            raise RuntimeError("GADGETFORGE_BACKEND=numba but numba is not installed")

USE_NUMBA = _HAVE_NUMBA and _CHOICE in ("auto", "numba")


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def njit_or_none(**kwargs):
    """Return numba.njit(**kwargs) when the numba backend is active, else None.

    Modules define the kernel body once and compile it only on the numba path;
    the fallback calls the plain function.
    """
    if not USE_NUMBA:
        return None
    from numba import njit

    return njit(**kwargs)


def thread_cap() -> int:
    """Worker cap from GADGETFORGE_THREADS (>=1). Results never depend on it."""
    raw = os.environ.get("GADGETFORGE_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise RuntimeError(f"GADGETFORGE_THREADS must be an integer, got {raw!r}")
    return max(1, val)
