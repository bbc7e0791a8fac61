"""Leavitt path algebra toolkit: classification, centers, exact verification."""

__version__ = "0.1.0"

from .fields import QQ, PrimeField
from .graphs import INFINITE, Edge, Graph, parse_graph
from .engine import LeavittAlgebra

__all__ = [
    "__version__",
    "QQ",
    "PrimeField",
    "INFINITE",
    "Edge",
    "Graph",
    "parse_graph",
    "LeavittAlgebra",
]
