"""Kernel backend selection.

The compiled extension is preferred when present; the NumPy fallback is
always available.  ``CPSCALE_FORCE_FALLBACK=1`` pins the fallback (useful for
benchmarking and for debugging suspected kernel discrepancies).
"""

import os

if os.environ.get("CPSCALE_FORCE_FALLBACK"):
    from . import _fallback as impl
else:
    try:
        from . import _core as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fallback as impl

from . import _fallback as fallback

BACKEND = impl.BACKEND_NAME

conv_table_lattice = impl.conv_table_lattice
lattice_series = impl.lattice_series
lattice_prim_series = impl.lattice_prim_series
recursion_build = impl.recursion_build
recursion_eval = impl.recursion_eval
grid_series = impl.grid_series

__all__ = [
    "BACKEND",
    "impl",
    "fallback",
    "conv_table_lattice",
    "lattice_series",
    "lattice_prim_series",
    "recursion_build",
    "recursion_eval",
    "grid_series",
]
