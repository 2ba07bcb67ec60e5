"""Gradings of polynomial rings by character lattices.

For a diagonalizable group ``G = D(Gamma)``, a coaction ``A -> k[G] (x) A`` on
``A = k[x_1..x_n]`` fixing the coordinate lines is the same thing as an
assignment of characters (weights) to the variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import InputError, LatticeMismatch, NonHomogeneousIdeal
from ..lattice import Character, CharacterLattice, SubgroupPresentation
from .groebner import Ideal
from .poly import Poly, PolyRing


@dataclass(frozen=True)
class Grading:
    lattice: CharacterLattice
    weights: tuple[Character, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        for w in self.weights:
            if w.lattice != self.lattice:
                raise LatticeMismatch(f"weight {w} is not a character of {self.lattice}")

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def degree(self, mono) -> Character:
        coords = [0] * self.lattice.ngens
        for e, w in zip(mono, self.weights):
            if e:
                for k, a in enumerate(w.coords):
                    coords[k] += e * a
        return self.lattice(coords)

    def check_ring(self, ring: PolyRing):
        if ring.nvars != self.nvars:
            raise InputError(
                f"grading has {self.nvars} weights but the ring has {ring.nvars} variables"
            )


def _degree_map(g: Grading, C: SubgroupPresentation | None):
    if C is None:
        return g.degree
    if C.ambient != g.lattice:
        raise LatticeMismatch(f"subgroup of D({C.ambient}) used with a grading by {g.lattice}")
    return lambda m: C.apply(g.degree(m))


def homogeneous_components(
    f: Poly, g: Grading, C: SubgroupPresentation | None = None
) -> dict[Character, Poly]:
    """Split ``f`` by degree in ``Gamma`` (or in ``Gamma_C`` when ``C`` is given).

    Keys are sorted by coordinates so iteration order is deterministic.
    """
    g.check_ring(f.ring)
    deg = _degree_map(g, C)
    buckets: dict[Character, dict] = {}
    for m, c in f.terms.items():
        buckets.setdefault(deg(m), {})[m] = c
    return {
        d: Poly(f.ring, buckets[d], _clean=True) for d in sorted(buckets, key=Character.key)
    }


def is_homogeneous_poly(f: Poly, g: Grading) -> bool:
    return len(homogeneous_components(f, g)) <= 1


def nonhomogeneous_generators(I: Ideal, g: Grading) -> list[tuple[Poly, list[Character]]]:
    """Generators whose homogeneous components are not all in ``I``, with their component degrees."""
    bad = []
    for f in I.generators:
        comps = homogeneous_components(f, g)
        if len(comps) > 1 and not all(p in I for p in comps.values()):
            bad.append((f, list(comps)))
    return bad


def is_homogeneous(I: Ideal, g: Grading) -> bool:
    """Whether ``I`` is stable under the coaction, i.e. a homogeneous ideal."""
    g.check_ring(I.ring)
    return not nonhomogeneous_generators(I, g)


def require_homogeneous(I: Ideal, g: Grading) -> None:
    bad = nonhomogeneous_generators(I, g)
    if bad:
        f, degrees = bad[0]
        raise NonHomogeneousIdeal(f, degrees)


def z_ideal(ring: PolyRing, vectors: Iterable[Sequence[Poly]]) -> Ideal:
    """``Z_A(Sigma)`` for a set of vectors in the free module ``A^n``.

    Functionals on a free module are spanned by the coordinate projections, so
    the ideal is generated by all coordinates of all vectors.
    """
    gens = [ring(c) for v in vectors for c in v]
    return Ideal(ring, gens)
