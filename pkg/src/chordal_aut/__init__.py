"""Automorphism groups and isomorphism testing for chordal graphs of
bounded leafage, with a general isomorphism engine for order-k hypergraphs
with bounded vertex color classes."""

from .errors import (
    ChordalAutError,
    NonCriticalDeadlock,
    NotChordalError,
    NotIntervalError,
    ParseError,
    StructuralError,
)
from .graphs import Coloring, Graph, TreeRepresentation, realize
from .hyper import OrderKHypergraph
from .hyperiso import aut_hypergraph, iso_hypergraphs
from .interval import aut_colored_interval, canonical_tree
from .perm import Coset, Perm, PermGroup, group_from_generators
from .pipeline import aut, iso
from .wl import check_stable, wl_refine

__all__ = [
    "ChordalAutError",
    "Coloring",
    "Coset",
    "Graph",
    "NonCriticalDeadlock",
    "NotChordalError",
    "NotIntervalError",
    "OrderKHypergraph",
    "ParseError",
    "Perm",
    "PermGroup",
    "StructuralError",
    "TreeRepresentation",
    "aut",
    "aut_colored_interval",
    "aut_hypergraph",
    "canonical_tree",
    "check_stable",
    "group_from_generators",
    "iso",
    "iso_hypergraphs",
    "realize",
    "wl_refine",
]
