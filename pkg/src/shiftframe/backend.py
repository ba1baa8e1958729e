"""Backend selection: numba-accelerated kernels vs pure numpy.

The env var SHIFTFRAME_BACKEND picks the path explicitly ("numba" or "numpy");
unset, numba is used when importable. Import-time failure of numba silently
falls back to numpy unless numba was requested explicitly.
"""

import os

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_requested = os.environ.get("SHIFTFRAME_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"SHIFTFRAME_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )
if _requested == "numba" and not HAS_NUMBA:
    raise ImportError("SHIFTFRAME_BACKEND=numba but numba is not importable")

USE_NUMBA = HAS_NUMBA if _requested == "" else _requested == "numba"


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def resolve_threads(cli_value=None) -> int:
    """Thread count: CLI flag wins, then SHIFTFRAME_THREADS, then 1."""
    if cli_value is not None:
        n = int(cli_value)
    else:
        n = int(os.environ.get("SHIFTFRAME_THREADS", "1"))
    if n < 1:
        raise ValueError(f"thread count must be >= 1, got {n}")
    return n
