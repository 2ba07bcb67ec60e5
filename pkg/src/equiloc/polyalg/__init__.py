"""Exact polynomial arithmetic, gradings and Groebner bases."""

from .fields import GF, QQ, PrimeField, RationalField
from .grading import (
    Grading,
    homogeneous_components,
    is_homogeneous,
    is_homogeneous_poly,
    nonhomogeneous_generators,
    require_homogeneous,
    z_ideal,
)
from .groebner import (
    DEFAULT_BUDGET,
    Ideal,
    groebner,
    groebner_budget,
    ideal_equal,
    ideal_member,
    is_groebner,
    normal_form,
    s_polynomial,
)
from .parser import parse_poly, tokenize
from .poly import ORDERS, Poly, PolyRing

__all__ = [
    "GF",
    "QQ",
    "PrimeField",
    "RationalField",
    "Grading",
    "homogeneous_components",
    "is_homogeneous",
    "is_homogeneous_poly",
    "nonhomogeneous_generators",
    "require_homogeneous",
    "z_ideal",
    "DEFAULT_BUDGET",
    "Ideal",
    "groebner",
    "groebner_budget",
    "ideal_equal",
    "ideal_member",
    "is_groebner",
    "normal_form",
    "s_polynomial",
    "parse_poly",
    "tokenize",
    "ORDERS",
    "Poly",
    "PolyRing",
]
