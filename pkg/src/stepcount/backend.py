"""Kernel lane selection.

Imports the Cython-compiled kernels when the extension was built, otherwise
the interpreted module with identical semantics (both come from the same
source file).  Set ``STEPCOUNT_PURE=1`` to force the interpreted lane.
"""

import os

if os.environ.get("STEPCOUNT_PURE"):
    from . import _kernels as kernels

    COMPILED = False
else:
    try:
        from . import _kernels_c as kernels  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from . import _kernels as kernels

        COMPILED = False

LANE = "compiled" if COMPILED else "pure"

lp_solve = kernels.lp_solve
rref = kernels.rref
LP_OPTIMAL = kernels.LP_OPTIMAL
LP_INFEASIBLE = kernels.LP_INFEASIBLE
LP_UNBOUNDED = kernels.LP_UNBOUNDED
