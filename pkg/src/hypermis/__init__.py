"""Distributed symmetry breaking on hypergraphs, on a synchronous network simulator."""

from .hypergraph import Graph, Hypergraph, build, parse, serialize
from .mis import ENGINES, solve

__version__ = "0.1.0"

__all__ = ["ENGINES", "Graph", "Hypergraph", "build", "parse", "serialize", "solve"]
