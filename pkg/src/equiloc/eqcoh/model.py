"""Projective-space models ``P(W)`` and fixed-point integration.

    H_G(P(W)) = H_G(pt)[z] / prod_j (z + e_j),      e_j = e(chi_j),

free over the point ring on ``1, z, ..., z^(n-1)``, where ``z = c_1(O(1))``.
Conventions: the fixed component containing ``chi_j`` is ``P(W_g)`` with
``W_g`` the characters restricting to the same ``g`` on ``C``; restriction is
``z -> z_g`` in ``H_G(P(W_g))``, so a point component sees ``z -> -e_j``; the
class of ``P(W_g)`` is ``prod_{k not in g} (z + e_k)`` and its normal Euler
class is the restriction of that product.  Pushforward to the point is the
coefficient of ``z^(n-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import InputError, InvariantViolation, LatticeMismatch, NotInEC
from ..lattice import Character, SubgroupPresentation
from ..linalg import adjugate_column, bareiss_det
from ..polyalg.poly import Poly
from .localize import LocalizedClass, in_EC_character
from .pointring import EquivariantPointRing, PointClass


class ProjectiveModelRing:
    def __init__(self, base: EquivariantPointRing, weights: Sequence[Character], name: str = "z"):
        weights = tuple(weights)
        if not weights:
            raise InputError("P(W) needs at least one character")
        for w in weights:
            if w.lattice != base.lattice:
                raise LatticeMismatch(f"weight {w} is not a character of {base.lattice}")
        self.base = base
        self.weights = weights
        self.n = len(weights)
        self.name = name
        self.e = [base.euler(w) for w in weights]
        # prod (z + e_j) = z^n + sum_{k<n} rel[k] z^k
        poly = [base.one]
        for ej in self.e:
            nxt = [base.zero] * (len(poly) + 1)
            for k, c in enumerate(poly):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] + c * ej
            poly = nxt
        self.relation = poly[:-1]

    def __eq__(self, other):
        return isinstance(other, ProjectiveModelRing) and other.base == self.base and other.weights == self.weights

    def __hash__(self):
        return hash((self.base, self.weights))

    def __repr__(self):
        return "H_G(P(" + " + ".join(str(w) for w in self.weights) + "))"

    def reduce(self, coeffs: Sequence[PointClass]) -> "ModelClass":
        c = list(coeffs)
        for d in range(len(c) - 1, self.n - 1, -1):
            top = c[d]
            if top:
                for k, r in enumerate(self.relation):
                    c[d - self.n + k] = c[d - self.n + k] - top * r
        c = c[: self.n] + [self.base.zero] * (self.n - len(c))
        return ModelClass(self, c)

    @property
    def zero(self) -> "ModelClass":
        return ModelClass(self, [self.base.zero] * self.n)

    @property
    def one(self) -> "ModelClass":
        return self.from_base(self.base.one)

    def scalar(self, c) -> "ModelClass":
        return self.from_base(self.base.scalar(c))

    def from_base(self, b: PointClass) -> "ModelClass":
        return self.reduce([b])

    def zeta(self, power: int = 1) -> "ModelClass":
        return self.reduce([self.base.zero] * power + [self.base.one])

    def basis(self) -> list["ModelClass"]:
        return [self.zeta(i) for i in range(self.n)]


class ModelClass:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ProjectiveModelRing, coeffs: Sequence[PointClass]):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, ModelClass):
            if other.ring != self.ring:
                raise InputError("classes from different model rings")
            return other
        if isinstance(other, PointClass):
            return self.ring.from_base(other)
        if isinstance(other, int):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ModelClass(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ModelClass(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PointClass):
            return ModelClass(self.ring, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        base = self.ring.base
        out = [base.zero] * (2 * self.ring.n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return self.ring.reduce(out)

    def __rmul__(self, other):
        if isinstance(other, PointClass):
            return ModelClass(self.ring, [other * a for a in self.coeffs])
        return self.__mul__(other)

    def __pow__(self, k: int):
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def divexact(self, d) -> "ModelClass | None":
        out = []
        for c in self.coeffs:
            q = c.divexact(d)
            if q is None:
                return None
            out.append(q)
        return ModelClass(self.ring, out)

    def bidegrees(self) -> set[tuple[int, int]]:
        out = set()
        for i, c in enumerate(self.coeffs):
            for a, b in c.bidegrees():
                out.add((a + 2 * i, b + i))
        return out

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def even_matrix_column(self) -> list[Poly]:
        """Coefficients as even polynomials (error if any u appears)."""
        out = []
        for c in self.coeffs:
            if not c.is_even():
                raise InputError("class has odd coefficients")
            out.append(c.even_part())
        return out

    def __str__(self):
        parts = []
        z = self.ring.name
        for i in range(self.ring.n - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (z if i == 1 else f"{z}^{i}")
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif len(c.parts) == 1 and len(next(iter(c.parts.values())).terms) == 1:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"ModelClass({self})"


def presentation_pushforward(x) -> PointClass | LocalizedClass:
    """``pi_*``: the coefficient of ``z^(n-1)`` (extended to fractions numerator-wise)."""
    if isinstance(x, LocalizedClass):
        return x.map_numerator(presentation_pushforward)
    return x.coeffs[x.ring.n - 1]


@dataclass
class FixedComponent:
    model: ProjectiveModelRing
    restriction: Character
    members: tuple[int, ...]
    ring: ProjectiveModelRing
    normal_weights: tuple[Character, ...]
    outside: tuple[int, ...] = field(default=())

    @property
    def is_point(self) -> bool:
        return len(self.members) == 1

    @property
    def weights(self) -> tuple[Character, ...]:
        return self.ring.weights

    def restrict(self, x: ModelClass) -> ModelClass:
        """``i^*``: ``z -> z_g``."""
        if x.ring != self.model:
            raise InputError("class is not on this model")
        return self.ring.reduce(list(x.coeffs))

    def fundamental_class(self) -> ModelClass:
        P = self.model
        out = P.one
        for k in self.outside:
            out = out * (P.zeta() + P.e[k])
        return out

    def pushforward(self, y) -> ModelClass | LocalizedClass:
        """``i_*(y) = lift(y) * [P(W_g)]``."""
        if isinstance(y, LocalizedClass):
            return y.map_numerator(self.pushforward)
        if y.ring != self.ring:
            raise InputError("class is not on this component")
        return self.model.reduce(list(y.coeffs)) * self.fundamental_class()

    def normal_euler(self) -> ModelClass:
        Q = self.ring
        out = Q.one
        for k in self.outside:
            out = out * (Q.zeta() + self.model.e[k])
        return out

    def normal_denominator(self) -> list[Character]:
        """Characters ``chi_k - chi_j`` (k outside, j inside) whose Euler classes multiply to
        ``det`` of multiplication by the normal Euler class."""
        W = self.model.weights
        return [W[k] - W[j] for k in self.outside for j in self.members]

    def inverse_normal_euler(self) -> LocalizedClass:
        """``e(N)^(-1) = adj(M) e_0 / det(M)``, ``M`` the matrix of multiplication by ``e(N)``."""
        Q = self.ring
        y = self.normal_euler()
        cols = [(y * Q.zeta(i)).even_matrix_column() for i in range(Q.n)]
        M = [[cols[j][i] for j in range(Q.n)] for i in range(Q.n)]
        den = self.normal_denominator()
        det = bareiss_det(M)
        expected = Q.base.one
        for chi in den:
            expected = expected * Q.base.euler(chi)
        if Q.base.from_even(det) != expected:
            raise InvariantViolation(f"normal Euler determinant {det} differs from {expected}")
        adj = adjugate_column(M, 0)
        num = ModelClass(Q, [Q.base.from_even(a) for a in adj])
        return LocalizedClass(num, den)


def fixed_components(P: ProjectiveModelRing, C: SubgroupPresentation) -> list[FixedComponent]:
    """Components of ``P(W)^C``, one per distinct restriction, in order of first appearance."""
    if C.ambient != P.base.lattice:
        raise LatticeMismatch(f"subgroup of D({C.ambient}) acting on a D({P.base.lattice})-model")
    groups: dict[Character, list[int]] = {}
    for j, w in enumerate(P.weights):
        groups.setdefault(C.apply(w), []).append(j)
    out = []
    for g, members in groups.items():
        j0 = members[0]
        outside = tuple(k for k in range(P.n) if k not in members)
        normal = tuple(P.weights[k] - P.weights[j0] for k in outside)
        ring = ProjectiveModelRing(P.base, [P.weights[j] for j in members], P.name)
        out.append(FixedComponent(P, g, tuple(members), ring, normal, outside))
    return out


def _check_normals(comp: FixedComponent, C: SubgroupPresentation):
    for chi in comp.normal_denominator():
        if not in_EC_character(comp.model.base, chi, C):
            raise NotInEC(f"normal Euler class factor e({chi}) is not invertible in the localization at E_C")


def bott_pushforward(x, C: SubgroupPresentation, to_point: bool = True) -> LocalizedClass:
    """Fixed-point sum ``sum_g (i_g)_*(i_g^*(x) / e(N_g))``.

    With ``to_point`` the result is pushed to the point (a fraction over the
    point ring); otherwise it stays on ``P(W)``, where it must equal ``x``.
    """
    if isinstance(x, ModelClass):
        x = LocalizedClass(x)
    P = x.numerator.ring
    comps = fixed_components(P, C)
    total = None
    for comp in comps:
        _check_normals(comp, C)
        inv = comp.inverse_normal_euler()
        local = LocalizedClass(comp.restrict(x.numerator) * inv.numerator, x.denominator + inv.denominator)
        if to_point:
            term = local.map_numerator(presentation_pushforward)
        else:
            term = local.map_numerator(comp.pushforward)
        total = term if total is None else total + term
    return total.simplify()


def interpolation_sum(P: ProjectiveModelRing, C: SubgroupPresentation) -> LocalizedClass:
    """``sum_g (i_g)_*(e(N_g)^(-1))``, which equals 1."""
    return bott_pushforward(P.one, C, to_point=False)


@dataclass
class ConcentrationReport:
    determinant: Poly
    factors: list
    unit: object
    ok: bool
    components: list

    def __bool__(self):
        return self.ok


def restriction_matrix(P: ProjectiveModelRing, C: SubgroupPresentation) -> tuple[list[list[Poly]], list[FixedComponent]]:
    """Rows: component basis elements ``z_g^i``; columns: ``z^k``, ``k < n``."""
    comps = fixed_components(P, C)
    cols = []
    for k in range(P.n):
        z = P.zeta(k)
        col = []
        for comp in comps:
            col.extend(comp.restrict(z).even_matrix_column())
        cols.append(col)
    M = [[cols[j][i] for j in range(P.n)] for i in range(P.n)]
    return M, comps


def concentration_check(P: ProjectiveModelRing, C: SubgroupPresentation) -> ConcentrationReport:
    """Restriction to the fixed locus becomes invertible after inverting ``E_C``.

    The determinant of the restriction matrix is divided by the Euler classes
    ``e(chi_k - chi_j)`` over pairs in different components; the check passes
    when a nonzero constant is left and every factor lies in ``E_C``.
    """
    M, comps = restriction_matrix(P, C)
    det = bareiss_det(M)
    base = P.base
    factors: list[Character] = []
    rest = det
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            for j in comps[a].members:
                for k in comps[b].members:
                    chi = P.weights[k] - P.weights[j]
                    form = base.linear_form(chi)
                    if not form:
                        continue
                    q = rest.divexact(form)
                    if q is not None:
                        rest = q
                        factors.append(chi)
    ok = bool(rest) and rest.is_constant() and all(in_EC_character(base, c, C) for c in factors)
    unit = rest.constant_value() if rest.is_constant() else None
    return ConcentrationReport(det, factors, unit, ok, comps)
