"""Virtual knot diagrams, Jones-type invariants and intrinsic linking of graph diagrams."""

from .diagram import Arc, Diagram, HalfInt, Kind, Node
from .laurent import LaurentPoly
from .vgd import dump, dumps, load, loads

__all__ = ["Arc", "Diagram", "HalfInt", "Kind", "LaurentPoly", "Node", "dump", "dumps", "load", "loads"]
__version__ = "0.1.0"
