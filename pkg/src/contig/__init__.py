"""Diameter, eccentricity, and mean distance of continuous graphs.

A continuous graph treats every interior point of every edge as a
point.  The package ships a quadratic reference engine, a treewidth
divide-and-conquer engine, and a sliding-source planar engine, plus the
supporting structures (orthogonal range trees with canonical-set
aggregates, dynamic forests) and a command-line front end.
"""

from .graph import (ContinuousGraph, DomainError, Edge, EdgePoint,
                    GraphFormatError, dump_graph, load_graph, subdivide)

__all__ = [
    "ContinuousGraph", "DomainError", "Edge", "EdgePoint",
    "GraphFormatError", "dump_graph", "load_graph", "subdivide",
]

__version__ = "0.1.0"
