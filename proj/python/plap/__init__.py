"""Finite-difference solvers for the normalized p-Laplacian and the
infinity Laplacian on square grids.

Everything is implemented in the C++ extension ``_plap``; this package
just re-exports it.
"""

try:
    from ._plap import *  # noqa: F401,F403  (installed layout)
    from ._plap import __doc__ as _core_doc
except ImportError:  # build-tree layout: _plap.so on sys.path directly
    from _plap import *  # noqa: F401,F403
    from _plap import __doc__ as _core_doc

__all__ = [n for n in dir() if not n.startswith("_")]
