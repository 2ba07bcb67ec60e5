"""Borel equivariant cohomology of points and projective-space models."""

from .localize import ECMembership, LocalizedClass, in_EC, in_EC_character, localize_eq
from .model import (
    ConcentrationReport,
    FixedComponent,
    ModelClass,
    ProjectiveModelRing,
    bott_pushforward,
    concentration_check,
    fixed_components,
    interpolation_sum,
    presentation_pushforward,
    restriction_matrix,
)
from .pointring import EquivariantPointRing, PointClass, euler_class

__all__ = [
    "ECMembership",
    "LocalizedClass",
    "in_EC",
    "in_EC_character",
    "localize_eq",
    "ConcentrationReport",
    "FixedComponent",
    "ModelClass",
    "ProjectiveModelRing",
    "bott_pushforward",
    "concentration_check",
    "fixed_components",
    "interpolation_sum",
    "presentation_pushforward",
    "restriction_matrix",
    "EquivariantPointRing",
    "PointClass",
    "euler_class",
]
