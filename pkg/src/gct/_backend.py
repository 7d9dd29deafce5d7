"""Backend selection for the evaluation kernels.

``GCT_BACKEND=numpy`` forces the pure-numpy path; the default uses numba
when it imports.  ``GCT_THREADS`` sets the numba thread count.
"""

from __future__ import annotations

import os
import warnings

_forced: str | None = None


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def backend() -> str:
    choice = _forced or os.environ.get("GCT_BACKEND", "numba").strip().lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"GCT_BACKEND must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numba" and not numba_available():
        return "numpy"
    return choice


def set_backend(name: str | None) -> None:
    """Override the env flag for this process (``None`` restores it)."""
    global _forced
    if name is not None and name not in ("numba", "numpy"):
        raise ValueError(name)
    _forced = name


def configured_threads() -> int:
    return max(1, int(os.environ.get("GCT_THREADS", "1")))


def set_threads(n: int) -> None:
    if n < 1:
        raise ValueError("threads must be >= 1")
    os.environ["GCT_THREADS"] = str(n)
    if numba_available():
        import numba

        with warnings.catch_warnings():
            # an old system TBB is reported and skipped; the OpenMP/workqueue layer is used instead
            warnings.filterwarnings("ignore", message="The TBB threading layer")
            numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
