"""Equivariant localization, fixed loci and Smith theory for diagonalizable groups.

Subpackages and modules:

* :mod:`equiloc.lattice` - character lattices, subgroups, representations
* :mod:`equiloc.polyalg` - exact polynomials, gradings, Groebner bases, parser
* :mod:`equiloc.comodule` - comodules as gradings, fixed parts, Reynolds operators
* :mod:`equiloc.fixedloc` - fixed-locus ideals, concentration sections, finite-field oracles
* :mod:`equiloc.eqcoh` - equivariant cohomology of points and projective models, localization
* :mod:`equiloc.smith` - Steenrod operations, unstable parts, fixed-point cohomology
* :mod:`equiloc.cli` - problem files and reports
"""

from .errors import (
    EquilocError,
    InputError,
    InvariantViolation,
    ResourceError,
)

__version__ = "0.1.0"

__all__ = ["EquilocError", "InputError", "InvariantViolation", "ResourceError", "__version__"]
