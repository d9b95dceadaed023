"""Exhaustive computation with finite near-rings, loops, designs and semi-automata."""

from .construct import Algebra2
from .tables import Magma

__all__ = ["Algebra2", "Magma"]
__version__ = "0.1.0"
