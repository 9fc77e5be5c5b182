"""Exact verification and search for hyperbolic Coxeter polytopes with n+3 facets."""
from .classify import DiagramClass, classify, enumerate_connected
from .diagram import CoxeterDiagram, Dotted, Infinity, Order, Unknown, canonical_form, parse_diagram
from .gale import GaleDiagram, derive_constraints, enumerate_gale
from .gram import gram_matrix, inertia
from .radical import RadicalNumber, parse_expr, sign
from .search import enumerate_candidates, run_pipeline, solve_weights, verify

__all__ = [
    "CoxeterDiagram",
    "DiagramClass",
    "Dotted",
    "GaleDiagram",
    "Infinity",
    "Order",
    "RadicalNumber",
    "Unknown",
    "canonical_form",
    "classify",
    "derive_constraints",
    "enumerate_candidates",
    "enumerate_connected",
    "enumerate_gale",
    "gram_matrix",
    "inertia",
    "parse_diagram",
    "parse_expr",
    "run_pipeline",
    "sign",
    "solve_weights",
    "verify",
]
