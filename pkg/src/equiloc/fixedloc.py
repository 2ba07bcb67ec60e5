"""Fixed loci of diagonalizable group actions on affine schemes.

For ``X = Spec k[x_1..x_n]/I`` with ``x_i`` of weight ``w_i`` and ``I``
homogeneous, the fixed locus of a subgroup ``C`` is cut out by
``Z_A(rho_C(A))``, where ``rho_C(a) = alpha_C(a) - 1 (x) a``.  Writing
``a = sum a_g`` by ``C``-degree, the coordinates of ``rho_C(a)`` are the
``a_g`` with ``g != 0``, so the ideal is generated by all homogeneous elements
of nonzero ``C``-degree.  Each such element is a combination of monomials of
nonzero ``C``-degree, and every such monomial is divisible by some ``x_i``
with ``w_i|_C != 0``; conversely those ``x_i`` have nonzero degree.  Hence

    X^C = V(I + <x_i : w_i|_C != 0>).

:func:`coaction_fixed_ideal` computes ``Z_A(rho_C(A))`` directly on a window
of monomials and :func:`fixed_points_oracle` enumerates rational points, both
as independent checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError, LatticeMismatch
from .finitefield import finite_field
from .lattice import Character, Representation, SubgroupPresentation
from .polyalg import Grading, Ideal, PolyRing, homogeneous_components, require_homogeneous
from .polyalg.poly import Poly


class EquivariantAffineScheme:
    def __init__(self, ring: PolyRing, grading: Grading, ideal: Ideal | Sequence = ()):
        grading.check_ring(ring)
        if not isinstance(ideal, Ideal):
            ideal = Ideal(ring, ideal)
        if ideal.ring != ring:
            raise InputError("ideal lives in a different ring")
        require_homogeneous(ideal, grading)
        self.ring = ring
        self.grading = grading
        self.ideal = ideal

    @classmethod
    def build(cls, field, names, weights, generators=(), order="grevlex"):
        weights = list(weights)
        if not weights:
            raise InputError("at least one variable is required")
        ring = PolyRing(field, names, order)
        if len(weights) != ring.nvars:
            raise InputError(f"{ring.nvars} variables but {len(weights)} weights")
        g = Grading(weights[0].lattice, tuple(weights))
        return cls(ring, g, Ideal(ring, generators))

    @property
    def lattice(self):
        return self.grading.lattice

    @property
    def weights(self):
        return self.grading.weights

    def _check_subgroup(self, C: SubgroupPresentation):
        if C.ambient != self.lattice:
            raise LatticeMismatch(f"subgroup of D({C.ambient}) acting on a D({self.lattice})-scheme")

    def moving_variables(self, C: SubgroupPresentation) -> list[int]:
        """Indices of the coordinates whose weight is nontrivial on ``C``."""
        self._check_subgroup(C)
        return [i for i, w in enumerate(self.weights) if not C.apply(w).is_zero()]

    def __str__(self):
        vs = ", ".join(f"{n}:{w}" for n, w in zip(self.ring.names, self.weights))
        return f"Spec {self.ring.field}[{vs}]/{self.ideal}"


@dataclass
class EquivariantSection:
    """A section ``s = sum s_i b_i`` of the pullback of ``V`` to ``X``.

    ``b_i`` spans the line of character ``chi_i``; invariance of ``s`` means
    ``s_i`` is homogeneous of degree ``-chi_i``.
    """

    scheme: EquivariantAffineScheme
    representation: Representation
    components: tuple[Poly, ...] = field(default=())

    def __post_init__(self):
        self.components = tuple(self.scheme.ring(c) for c in self.components)
        if len(self.components) != self.representation.rank:
            raise InputError(
                f"section has {len(self.components)} components for a rank {self.representation.rank} bundle"
            )
        if self.representation.lattice != self.scheme.lattice:
            raise LatticeMismatch("representation and scheme have different groups")
        for s, chi in zip(self.components, self.representation):
            bad = self.component_degrees(s, chi)
            if bad:
                raise InputError(f"section component {s} is not of degree {-chi}: has degrees {bad}")

    def component_degrees(self, s: Poly, chi: Character) -> list[str]:
        comps = homogeneous_components(s, self.scheme.grading)
        return [str(d) for d in comps if d != -chi]

    def is_invariant(self) -> bool:
        return all(not self.component_degrees(s, chi) for s, chi in zip(self.components, self.representation))


def fixed_locus_ideal(X: EquivariantAffineScheme, C: SubgroupPresentation) -> Ideal:
    moving = X.moving_variables(C)
    return X.ideal + [X.ring.gens[i] for i in moving]


def coaction_fixed_ideal(X: EquivariantAffineScheme, C: SubgroupPresentation, max_degree: int = 2) -> Ideal:
    """``I + Z_A(rho_C(A_{<=d}))`` computed from the coaction on all monomials of degree ``<= d``.

    ``rho_C(m) = (e_g - e_0) (x) m`` for a monomial of ``C``-degree ``g``;
    its coordinates in the basis ``e_h`` of ``k[Gamma_C]`` are ``m`` and ``-m``
    when ``g != 0`` and nothing otherwise.
    """
    X._check_subgroup(C)
    gens = []
    n = X.ring.nvars
    for m in itertools.product(range(max_degree + 1), repeat=n):
        if sum(m) > max_degree:
            continue
        g = C.apply(X.grading.degree(m))
        coords = {}
        if not g.is_zero():
            coords[g] = X.ring.monomial(m)
            coords[C.quotient.zero()] = -X.ring.monomial(m)
        gens.extend(coords.values())
    return X.ideal + gens


def sigma_G(X: EquivariantAffineScheme, C: SubgroupPresentation, a) -> list[tuple[Character, Poly]]:
    """``sigma_G(a) = sum e_{-g} (x) a_g`` over the ``Gamma``-degrees ``g`` nontrivial on ``C``.

    Components are listed in increasing order of ``-g``; each summand has
    total degree ``-g + g = 0``.
    """
    X._check_subgroup(C)
    a = X.ring(a)
    out = []
    for g, comp in homogeneous_components(a, X.grading).items():
        if not C.apply(g).is_zero():
            out.append((-g, comp))
    out.sort(key=lambda t: t[0].key())
    return out


def zero_locus(s: EquivariantSection, X: EquivariantAffineScheme | None = None) -> Ideal:
    X = X or s.scheme
    return X.ideal + list(s.components)


def concentration_section(X: EquivariantAffineScheme, C: SubgroupPresentation, minimize: bool = False):
    """A representation ``V`` with ``V^C = 0`` and a section of its pullback with zero scheme ``X^C``.

    ``V`` has one character ``-w_i`` per coordinate ``x_i`` moved by ``C``,
    and ``s = (x_i)``.  With ``minimize`` the coordinates are dropped greedily
    (in order) whenever the remaining ones still cut out ``X^C``.
    """
    moving = X.moving_variables(C)
    if minimize and moving:
        target = fixed_locus_ideal(X, C)
        kept = list(moving)
        for i in list(moving):
            trial = [j for j in kept if j != i]
            if (X.ideal + [X.ring.gens[j] for j in trial]).equals(target):
                kept = trial
        moving = kept
    V = Representation(X.lattice, tuple(-X.weights[i] for i in moving))
    s = EquivariantSection(X, V, tuple(X.ring.gens[i] for i in moving))
    return V, s


# --- finite-field oracle -------------------------------------------------------


def _check_field(X: EquivariantAffineScheme, q: int):
    F = finite_field(q)
    ch = X.ring.field.characteristic
    if ch and ch != F.p:
        raise InputError(f"GF({q}) has characteristic {F.p}, the scheme is over GF({ch})")
    return F


def vanishing_set(I: Ideal, q: int) -> set[tuple[int, ...]]:
    """All points of ``GF(q)^n`` where every generator of ``I`` vanishes."""
    F = finite_field(q)
    ch = I.ring.field.characteristic
    if ch and ch != F.p:
        raise InputError(f"GF({q}) has characteristic {F.p}, the ideal is over GF({ch})")
    n = I.ring.nvars
    gens = list(I.generators)
    out = set()
    for pt in itertools.product(range(q), repeat=n):
        if all(F.evaluate(g, pt) == 0 for g in gens):
            out.add(pt)
    return out


def group_points(C: SubgroupPresentation, q: int) -> list[tuple[int, ...]]:
    """``C(GF(q)) = Hom(Gamma_C, GF(q)^*)``, as images of the generators of ``Gamma_C``."""
    F = finite_field(q)
    Q = C.quotient
    choices = [list(F.units()) for _ in range(Q.rank)]
    for m in Q.torsion:
        if (q - 1) % m:
            raise InputError(f"GF({q}) lacks the {m}-th roots of unity needed for the oracle")
        choices.append(F.roots_of_unity(m))
    return list(itertools.product(*choices))


def admissible(X: EquivariantAffineScheme, C: SubgroupPresentation, q: int) -> bool:
    """Whether every weight moved by ``C`` is also moved by ``C(GF(q))``."""
    try:
        _check_field(X, q)
        pts = group_points(C, q)
    except InputError:
        return False
    F = finite_field(q)
    for i in X.moving_variables(C):
        coords = C.apply(X.weights[i]).coords
        if all(_char_value(F, g, coords) == 1 for g in pts):
            return False
    return True


def _char_value(F, g, coords) -> int:
    v = 1
    for x, a in zip(g, coords):
        if a:
            v = F.mul(v, F.power(x, a))
    return v


def fixed_points_oracle(X: EquivariantAffineScheme, C: SubgroupPresentation, q: int) -> set[tuple[int, ...]]:
    """``GF(q)``-points of ``X`` fixed by every element of ``C(GF(q))``, by enumeration."""
    F = _check_field(X, q)
    pts = group_points(C, q)
    if not admissible(X, C, q):
        raise InputError(f"q = {q} is not admissible: some weight moved by C is trivial on C(GF({q}))")
    scalars = {
        tuple(_char_value(F, g, C.apply(w).coords) for w in X.weights) for g in pts
    }
    fixed = set()
    for pt in vanishing_set(X.ideal, q):
        if all(all(F.mul(s, x) == x for s, x in zip(sc, pt)) for sc in scalars):
            fixed.add(pt)
    return fixed


def admissible_fields(X: EquivariantAffineScheme, C: SubgroupPresentation, count: int = 2, limit: int = 64) -> list[int]:
    """The first ``count`` admissible prime powers ``q <= limit``."""
    out = []
    for q in range(2, limit + 1):
        try:
            ok = admissible(X, C, q)
        except InputError:
            ok = False
        if ok:
            out.append(q)
            if len(out) == count:
                break
    return out


__all__ = [
    "EquivariantAffineScheme",
    "EquivariantSection",
    "Representation",
    "fixed_locus_ideal",
    "coaction_fixed_ideal",
    "sigma_G",
    "zero_locus",
    "concentration_section",
    "vanishing_set",
    "group_points",
    "admissible",
    "admissible_fields",
    "fixed_points_oracle",
]
