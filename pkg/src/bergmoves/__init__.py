"""Bergman presentations and graphs, their moves, and the associated algebras."""

from .monoid import Certificate, Element, MonoidPresentation, Relation, congruence_equal, verify_certificate
from .structures import (
    BLUE,
    RED,
    BergmanGraph,
    BergmanPresentation,
    ColouredRelation,
    Digraph,
    Hyperedge,
    admissible_orderings,
    graph_to_pres,
    pres_to_graph,
    validate_presentation,
)

__version__ = "0.1.0"
__all__ = [
    "BLUE",
    "RED",
    "BergmanGraph",
    "BergmanPresentation",
    "Certificate",
    "ColouredRelation",
    "Digraph",
    "Element",
    "Hyperedge",
    "MonoidPresentation",
    "Relation",
    "admissible_orderings",
    "congruence_equal",
    "graph_to_pres",
    "pres_to_graph",
    "validate_presentation",
    "verify_certificate",
]
