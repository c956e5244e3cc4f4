"""Exact counts of n-arcs in P^3(F_q) via planar spaces and hyperfigurations."""

from .canonical import canonical_encoding, canonical_form, is_isomorphic
from .enumerate import enumerate_hyperfigurations, enumerate_planar_spaces, labeled_spaces
from .field import Field, build_field
from .geometry import pgl_order, projective_space
from .polynomial import IntegerPolynomial, Quasipolynomial, SymbolicCount
from .realize import closed_form, count_arcs, count_strong, count_weak
from .reduction import arc_count_formula, arc_count_symbolic, mds_count, mu, reduce_all
from .spaces import PlanarSpace, is_hyperfiguration, leq, validate

__all__ = [
    "Field", "IntegerPolynomial", "PlanarSpace", "Quasipolynomial", "SymbolicCount",
    "arc_count_formula", "arc_count_symbolic", "build_field", "canonical_encoding", "canonical_form",
    "closed_form", "count_arcs", "count_strong", "count_weak", "enumerate_hyperfigurations",
    "enumerate_planar_spaces", "is_hyperfiguration", "is_isomorphic", "labeled_spaces", "leq",
    "mds_count", "mu", "pgl_order", "projective_space", "reduce_all", "validate",
]
