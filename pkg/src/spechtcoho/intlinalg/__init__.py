"""Exact integer linear algebra: Smith normal form, mod-p ranks, p-part
elementary divisors.

Hot kernels come from the compiled extension when it is importable, else from
the pure-Python module.  Set SPECHTCOHO_BACKEND=python (or =compiled) to force
a choice; forcing "compiled" raises if the extension is missing.
"""

import os

from . import _pykernels

_requested = os.environ.get("SPECHTCOHO_BACKEND")
if _requested not in (None, "", "compiled", "python"):
    raise RuntimeError(f"SPECHTCOHO_BACKEND must be 'compiled' or 'python', got {_requested!r}")

if _requested == "python":
    _kernels = _pykernels
else:
    try:
        from . import _fastkernels as _kernels  # type: ignore[no-redef]
    except ImportError:
        if _requested == "compiled":
            raise
        _kernels = _pykernels

BACKEND = _kernels.NAME

from .api import (  # noqa: E402
    ElemDivisors,
    assemble_from_p_parts,
    p_part_elementary_divisors,
    rank_mod_p,
    rational_rank,
    smith_divisors_auto,
    smith_elementary_divisors,
)
from .matrix import asmatrix, imatmul, int_eye, load_matrix, max_abs, save_matrix  # noqa: E402

__all__ = [
    "BACKEND",
    "ElemDivisors",
    "asmatrix",
    "assemble_from_p_parts",
    "imatmul",
    "int_eye",
    "load_matrix",
    "max_abs",
    "p_part_elementary_divisors",
    "rank_mod_p",
    "rational_rank",
    "save_matrix",
    "smith_divisors_auto",
    "smith_elementary_divisors",
]


def backend() -> str:
    """Name of the active kernel backend ("compiled" or "python")."""
    return BACKEND
