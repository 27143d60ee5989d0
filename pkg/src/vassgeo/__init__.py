"""Exact cycle-space geometry, certificates and reachability for VASS."""

from .core import Configuration, Run, Transition, Vass, characteristic, effect, execute, reverse, traversal_number
from .geodim import cycle_space_basis, gdim
from .linalg import Subspace, span_basis

__all__ = [
    "Configuration",
    "Run",
    "Subspace",
    "Transition",
    "Vass",
    "characteristic",
    "cycle_space_basis",
    "effect",
    "execute",
    "gdim",
    "reverse",
    "span_basis",
    "traversal_number",
]
__version__ = "0.1.0"
