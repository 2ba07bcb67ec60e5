"""Steenrod operations, unstable parts and Smith theory for ``G = (mu_p)^n``.

The algebra of operations is free on ``P^i`` with ``P^0 = 1`` (no Adem
relations).  The total operation ``P(x) = sum P^i(x) t^i`` is a ring map, so
it is determined by its values on generators:

    P(v) = v + v^p t,     P(u) = u,     P(z) = z + z^p t   (z = c_1(O(1))).

It extends to fractions with Euler-class denominators because
``P(l)^(-1) = l^(-1) sum_i (-l^(p-1) t)^i`` for a linear form ``l``.

An element ``y`` of bidegree ``(a, b)`` of an unstable algebra has
``P^i(y) = 0`` for ``i > a - b``.  :func:`unstable_part` decides membership in
``Un(M[E^(-1)])`` exactly by the stripping argument (one linear factor at a
time, after a change of coordinates sending it to ``v_1``) and then certifies
the answer against the operations themselves up to a truncation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation, WindowTooSmall
from .eqcoh import (
    EquivariantPointRing,
    LocalizedClass,
    ModelClass,
    PointClass,
    ProjectiveModelRing,
    concentration_check,
    fixed_components,
)
from .lattice import Character, CharacterLattice, SubgroupPresentation
from .linalg import nullspace, rank, rref
from .polyalg import GF
from .polyalg.poly import Poly

DEFAULT_EXTRA_TRUNCATION = 12


@lru_cache(maxsize=None)
def mu_p_ring(p: int, n: int = 1) -> EquivariantPointRing:
    return EquivariantPointRing(CharacterLattice(0, (p,) * n))


@dataclass
class TotalOperationSeries:
    """``sum_{i<=N} P^i(x) t^i``; ``coefficients[i]`` is ``P^i(x)``."""

    coefficients: list
    truncation: int

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __mul__(self, other: "TotalOperationSeries") -> "TotalOperationSeries":
        N = min(self.truncation, other.truncation)
        out = []
        for i in range(N + 1):
            acc = None
            for r in range(i + 1):
                term = self.coefficients[r] * other.coefficients[i - r]
                acc = term if acc is None else acc + term
            out.append(acc)
        return TotalOperationSeries(out, N)

    def __eq__(self, other):
        if not isinstance(other, TotalOperationSeries):
            return NotImplemented
        N = min(self.truncation, other.truncation)
        return all(self.coefficients[i] == other.coefficients[i] for i in range(N + 1))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            s = str(c)
            wrapped = s if i == 0 or " " not in s else f"({s})"
            parts.append(wrapped if i == 0 else (f"{wrapped}*t" if i == 1 else f"{wrapped}*t^{i}"))
        if not parts:
            return "0"
        out = parts[0]
        for q in parts[1:]:
            out += " - " + q[1:] if q.startswith("-") else " + " + q
        return out


class SteenrodModule:
    """``H_G(pt)`` or ``H_G(P(W))`` for ``G = (mu_p)^n`` with its Steenrod action.

    ``table`` may override ``P^i`` on the generators: a mapping from generator
    name (``v``, ``u``, ``v1``, ..., and ``z`` for a model) to the list
    ``[P^0, P^1, ...]`` of values; ``P^0`` must be the generator itself.
    """

    def __init__(self, algebra, table: dict | None = None):
        if isinstance(algebra, ProjectiveModelRing):
            self.model = algebra
            self.base = algebra.base
        elif isinstance(algebra, EquivariantPointRing):
            self.model = None
            self.base = algebra
        else:
            raise InputError("a Steenrod module is built on a point ring or a projective model")
        R = self.base
        if R.r:
            raise InputError("Steenrod modules are supported for (mu_p)^n only (no torus factors)")
        if R.p is None and R.s == 0 and R.field.characteristic == 0:
            raise InputError("Steenrod operations need coefficients in GF(p)")
        self.p = R.p if R.p is not None else R.field.characteristic
        if R.u_square:
            raise InputError("u^2 != 0 is incompatible with P(u) = u and P(v) = v + v^p t")
        self.table = self._default_table()
        for name, values in (table or {}).items():
            if name not in self.table:
                raise InputError(f"unknown generator {name!r} in the Steenrod table")
            values = list(values)
            if not values or values[0] != self.table[name][0]:
                raise InputError(f"P^0({name}) must be {name}")
            self.table[name] = values
        self._series_cache: dict = {}

    @property
    def algebra(self):
        return self.model if self.model is not None else self.base

    def _default_table(self) -> dict:
        R = self.base
        p = self.p
        table = {}
        for i in range(R.s):
            v = R.v(i)
            table[R.even.names[R.r + i]] = [v, v ** p]
            table[R.u_names[i]] = [R.u(i)]
        if self.model is not None:
            z = self.model.zeta()
            table[self.model.name] = [z, z ** p]
        return table

    def __repr__(self):
        return f"SteenrodModule({self.algebra!r})"

    # -- elements and bases -----------------------------------------------------------

    def one(self):
        return self.algebra.one

    def basis(self, A: int, B: int) -> list:
        """``F_p``-basis of the bidegree ``(A, B)`` part."""
        R = self.base
        if self.model is None:
            return R.monomial_basis(A, B)
        out = []
        for k in range(self.model.n):
            for b in R.monomial_basis(A - 2 * k, B - k):
                out.append(self.model.zeta(k) * b)
        return out

    def flatten(self, x) -> dict:
        """Coordinates of an element as ``{(k, mask, exponents): coeff}`` (``z^k`` coefficient)."""
        coeffs = [x] if isinstance(x, PointClass) else list(x.coeffs)
        out = {}
        for k, c in enumerate(coeffs):
            for mask, f in c.parts.items():
                for m, a in f.terms.items():
                    out[(k, mask, m)] = a
        return out

    def as_algebra(self, x):
        if self.model is not None and isinstance(x, PointClass):
            return self.model.from_base(x)
        return x

    # -- total power ---------------------------------------------------------------

    def _gen_series(self, name: str, e: int, N: int) -> TotalOperationSeries:
        key = (name, e, N)
        if key not in self._series_cache:
            if e == 0:
                one = self.base.one if name != getattr(self.model, "name", None) else self.model.one
                s = TotalOperationSeries([one] + [one * 0] * N, N)
            elif e == 1:
                vals = self.table[name]
                zero = vals[0] * 0
                s = TotalOperationSeries([vals[i] if i < len(vals) else zero for i in range(N + 1)], N)
            else:
                s = self._gen_series(name, e - 1, N) * self._gen_series(name, 1, N)
            self._series_cache[key] = s
        return self._series_cache[key]

    def _point_power(self, x: PointClass, N: int) -> TotalOperationSeries:
        R = self.base
        out = [R.zero] * (N + 1)
        names = R.even.names
        for mask, f in x.parts.items():
            useries = TotalOperationSeries([R.one] + [R.zero] * N, N)
            for j in range(R.s):
                if mask >> j & 1:
                    useries = useries * self._gen_series(R.u_names[j], 1, N)
            for m, c in f.terms.items():
                s = TotalOperationSeries([R.scalar(c)] + [R.zero] * N, N)
                for i, e in enumerate(m):
                    if e:
                        s = s * self._gen_series(names[i], e, N)
                s = s * useries
                out = [a + b for a, b in zip(out, s.coefficients)]
        return TotalOperationSeries(out, N)

    def total_power(self, x, N: int) -> TotalOperationSeries:
        """``P(x)`` up to ``t^N``, by the Cartan formula from the generator table."""
        if isinstance(x, PointClass) and self.model is None:
            return self._point_power(x, N)
        x = self.as_algebra(x)
        M = self.model
        out = [M.zero] * (N + 1)
        for k, c in enumerate(x.coeffs):
            if not c:
                continue
            pc = self._point_power(c, N)
            lifted = TotalOperationSeries([M.from_base(a) for a in pc.coefficients], N)
            s = lifted * self._gen_series(M.name, k, N)
            out = [a + b for a, b in zip(out, s.coefficients)]
        return TotalOperationSeries(out, N)

    def inverse_factor_series(self, denominator: Sequence[Character], N: int) -> list[PointClass]:
        """Coefficients of ``prod_l (1 + l^(p-1) t)^(-1)``, so that ``P(1/D) = (1/D) * this``."""
        R = self.base
        out = [R.one] + [R.zero] * N
        for chi in denominator:
            l = R.euler(chi)
            lp = l ** (self.p - 1)
            geo = [R.one]
            for i in range(1, N + 1):
                geo.append(-(geo[-1] * lp))
            out = TotalOperationSeries(out, N) * TotalOperationSeries(geo, N)
            out = out.coefficients
        return out

    def localized_total_power(self, y: LocalizedClass, N: int) -> list[LocalizedClass]:
        """``P^i(x/D) = (1/D) sum_{r+s=i} P^r(x) q_s`` with ``q = prod (1 + l^(p-1) t)^(-1)``."""
        x = y.numerator
        Px = self.total_power(x, N)
        q = self.inverse_factor_series(y.denominator, N)
        out = []
        for i in range(N + 1):
            acc = Px[0] * 0
            for r in range(i + 1):
                if Px[r] and q[i - r]:
                    acc = acc + Px[r] * q[i - r]
            out.append(LocalizedClass(acc, y.denominator))
        return out


# --- closed forms on v^(-1) -----------------------------------------------------


def total_power(x, N: int, module: SteenrodModule | None = None) -> TotalOperationSeries:
    if module is None:
        ring = x.ring if isinstance(x, PointClass) else x.ring
        module = SteenrodModule(ring)
    return module.total_power(x, N)


def power_on_inverse(i: int, p: int) -> LocalizedClass:
    """``P^i(v^(-1)) = (-1)^i v^(i(p-1)-1)``."""
    if i < 0:
        raise InputError("operation index must be non-negative")
    R = mu_p_ring(p)
    chi = R.lattice(1)
    if i == 0:
        return LocalizedClass(R.one, [chi])
    c = R.v() ** (i * (p - 1) - 1)
    return LocalizedClass(c if i % 2 == 0 else -c)


def _laurent_to_class(R: EquivariantPointRing, poly: dict) -> LocalizedClass:
    chi = R.lattice(1)
    low = min(poly, default=0)
    shift = -low if low < 0 else 0
    num = R.zero
    for e, c in poly.items():
        num = num + R.v() ** (e + shift) * c
    return LocalizedClass(num, [chi] * shift).simplify()


def series_inverse_oracle(p: int, N: int) -> list[LocalizedClass]:
    """Coefficients of ``(v + v^p t)^(-1)`` by formal Laurent-series division.

    Works with Laurent polynomials in ``v`` as exponent dicts and the
    recursion ``b_i = -a_0^(-1) sum_{k>=1} a_k b_(i-k)``; nothing here uses
    the closed form.
    """
    a = [{1: 1}, {p: 1}]
    F = GF(p)
    b = [{-1: 1}]
    for i in range(1, N + 1):
        acc: dict = {}
        for k in range(1, min(i, len(a) - 1) + 1):
            for e1, c1 in a[k].items():
                for e2, c2 in b[i - k].items():
                    acc[e1 + e2] = F.normalize(acc.get(e1 + e2, 0) + c1 * c2)
        # multiply by -a_0^(-1) = -v^(-1)
        b.append({e - 1: F.normalize(-c) for e, c in acc.items() if c})
    R = mu_p_ring(p)
    return [_laurent_to_class(R, bi) for bi in b]


# --- stripping ------------------------------------------------------------------


def _substitute(x: PointClass, v_images: list[Poly], u_images: list[PointClass]) -> PointClass:
    R = x.ring
    out = R.zero
    images = {R.r + i: img for i, img in enumerate(v_images)}
    for mask, f in x.parts.items():
        term = R.from_even(f.substitute(images))
        for j in range(R.s):
            if mask >> j & 1:
                term = term * u_images[j]
        out = out + term
    return out


def _coordinate_change(R: EquivariantPointRing, form: Poly):
    """Substitutions to and from coordinates ``y`` with ``y_1 = form``.

    Returns ``(to_new, from_new)``, each a pair of image lists for the v's
    and u's; u's transform by the same matrix as v's.
    """
    s = R.s
    b = [form.terms.get(tuple(int(k == R.r + i) for k in range(R.r + s)), 0) for i in range(s)]
    i0 = next((i for i in range(s) if b[i]), None)
    if i0 is None:
        raise InputError(f"{form} is not a nonzero form in the v's")
    others = [i for i in range(s) if i != i0]
    pos = {i0: 0}
    for k, i in enumerate(others):
        pos[i] = k + 1
    gens = R.even.gens
    inv = R.field.inv(b[i0])
    # old v_i in new coordinates
    to_v, to_u = [None] * s, [None] * s
    for i in others:
        to_v[i] = gens[R.r + pos[i]]
        to_u[i] = R.u(pos[i])
    ev = gens[R.r]
    eu = R.u(0)
    for i in others:
        ev = ev - gens[R.r + pos[i]].scale(b[i])
        eu = eu - R.u(pos[i]).scale(b[i])
    to_v[i0] = ev.scale(inv)
    to_u[i0] = eu.scale(inv)
    # new y_k in old coordinates
    from_v, from_u = [None] * s, [None] * s
    from_v[0] = Poly(R.even, {tuple(int(k == R.r + i) for k in range(R.r + s)): b[i] for i in range(s) if b[i]})
    from_u[0] = R.zero
    for i in range(s):
        if b[i]:
            from_u[0] = from_u[0] + R.u(i).scale(b[i])
    for i in others:
        from_v[pos[i]] = gens[R.r + i]
        from_u[pos[i]] = R.u(i)
    return (to_v, to_u), (from_v, from_u)


def strip_once(x: PointClass, chi: Character) -> tuple[PointClass, PointClass, PointClass]:
    """Write ``x = l*z + w + u_1' w'`` after the coordinate change sending ``l = e(chi)`` to ``v_1'``.

    Returns ``(z, w, w')`` with ``z`` in the original coordinates and the
    residues ``w, w'`` (free of ``v_1', u_1'``) in the new ones; ``x / l`` is
    in the ring iff both residues vanish, and then it equals ``z``.
    """
    R = x.ring
    (to_v, to_u), (from_v, from_u) = _coordinate_change(R, R.linear_form(chi))
    y = _substitute(x, to_v, to_u)
    zparts, wparts, wpparts = {}, {}, {}
    k0 = R.r
    for mask, f in y.parts.items():
        for m, c in f.terms.items():
            if m[k0] > 0:
                mm = m[:k0] + (m[k0] - 1,) + m[k0 + 1 :]
                zparts.setdefault(mask, {})[mm] = c
            elif mask & 1:
                wpparts.setdefault(mask ^ 1, {})[m] = c
            else:
                wparts.setdefault(mask, {})[m] = c

    def build(parts):
        return PointClass(R, {mk: Poly(R.even, t) for mk, t in parts.items()})

    z = _substitute(build(zparts), from_v, from_u)
    return z, build(wparts), build(wpparts)


def strip_residues(x: PointClass, denominator: Sequence[Character]) -> list[tuple[PointClass, PointClass]]:
    """Residues of the descending induction for ``x / (l_1 ... l_s)``, last factor first.

    All residues vanish iff the fraction lies in the point ring.  Each step
    is ``F_p``-linear in ``x`` so the list can be used as a linear map.
    """
    out = []
    cur = x
    for chi in reversed(list(denominator)):
        z, w, wp = strip_once(cur, chi)
        out.append((w, wp))
        cur = z
    return out


def _component_coefficients(module: SteenrodModule, x) -> list[PointClass]:
    """Restriction of ``x`` to the fixed locus, as point-ring coefficients.

    Each component ``P(W_g)`` carries the trivial action, so ``H_G(P(W_g))`` is
    free over the point ring on ``z_g^k``; membership of a fraction in it is
    coefficientwise.
    """
    if module.model is None:
        return [x]
    out = []
    for comp in module.components:
        out.extend(comp.restrict(x).coeffs)
    return out


def _residue_vector(module: SteenrodModule, x, denominator) -> dict:
    vec = {}
    for a, c in enumerate(_component_coefficients(module, x)):
        for step, (w, wp) in enumerate(strip_residues(c, denominator)):
            for tag, r in (("w", w), ("w'", wp)):
                for mask, f in r.parts.items():
                    for m, coef in f.terms.items():
                        vec[(a, step, tag, mask, m)] = coef
    return vec


def _ensure_components(module: SteenrodModule):
    if module.model is not None and not hasattr(module, "components"):
        G = SubgroupPresentation.whole(module.base.lattice)
        module.components = fixed_components(module.model, G)
    return module


def default_denominator(module: SteenrodModule, depth: int = 1) -> list[Character]:
    """Concentration factors of the model (enough to contain ``Un``) and ``depth`` extra
    copies of each coordinate character (so that the window contains non-unstable fractions)."""
    R = module.base
    chars: list[Character] = []
    if module.model is not None:
        G = SubgroupPresentation.whole(R.lattice)
        chars.extend(concentration_check(module.model, G).factors)
    for _ in range(depth):
        chars.extend(R.lattice.basis())
    return chars


def _matrix(vectors: list[dict], field) -> tuple[list[list], list]:
    keys = sorted({k for v in vectors for k in v}, key=repr)
    index = {k: i for i, k in enumerate(keys)}
    rows = [[field.zero] * len(vectors) for _ in keys]
    for j, v in enumerate(vectors):
        for k, c in v.items():
            rows[index[k]][j] = c
    return rows, keys


@dataclass
class UnstableSlice:
    bidegree: tuple[int, int]
    candidates: list
    kernel: list          # coordinate vectors (in ``candidates``) of unstable fractions
    elements: list        # the unstable fractions themselves
    truncation: int

    @property
    def dim(self) -> int:
        return len(self.kernel)


@dataclass
class UnstablePart:
    module: SteenrodModule
    denominator: list
    slices: dict = field(default_factory=dict)

    def dims(self) -> dict:
        return {bd: s.dim for bd, s in sorted(self.slices.items())}


def _combine(cands, vec, zero):
    acc = zero
    for c, b in zip(vec, cands):
        if c:
            acc = acc + b * c
    return acc


def unstable_slice(module: SteenrodModule, A: int, B: int, denominator: Sequence[Character], truncation: int | None = None) -> UnstableSlice:
    """``Un(M[E^(-1)]) cap (1/D) M`` in bidegree ``(A, B)``.

    Exact answer from the stripping residues; certified by computing
    ``P^i`` for ``A - B < i <= N``: every accepted fraction must have these
    vanish, and the rejected ones must be detected by some of them.
    """
    _ensure_components(module)
    R = module.base
    F = R.field
    s = len(denominator)
    cands = module.basis(A + 2 * s, B + s)
    N = truncation if truncation is not None else max(A - B, 0) + DEFAULT_EXTRA_TRUNCATION
    zero = module.algebra.zero
    if not cands:
        return UnstableSlice((A, B), [], [], [], N)
    residues = [_residue_vector(module, b, denominator) for b in cands]
    rows, _ = _matrix(residues, F)
    kernel = nullspace(rows, F, ncols=len(cands)) if rows else [
        [F.one if i == j else F.zero for i in range(len(cands))] for j in range(len(cands))
    ]
    # certification through the operations
    lo = max(A - B, -1) + 1
    op_vectors = []
    qs = module.inverse_factor_series(denominator, N)
    for b in cands:
        Pb = module.total_power(b, N)
        v = {}
        for i in range(lo, N + 1):
            acc = zero
            for r in range(i + 1):
                if Pb[r] and qs[i - r]:
                    acc = acc + Pb[r] * qs[i - r]
            for key, c in module.flatten(acc).items():
                v[(i,) + key] = c
        op_vectors.append(v)
    op_rows, _ = _matrix(op_vectors, F)
    op_kernel_dim = len(cands) - (rank(op_rows, F) if op_rows and op_rows[0] else 0)
    for vec in kernel:
        total = {}
        for c, v in zip(vec, op_vectors):
            if c:
                for k, a in v.items():
                    total[k] = F.normalize(total.get(k, 0) + c * a)
        if any(total.values()):
            raise InvariantViolation(f"accepted fraction in bidegree {(A, B)} has a nonzero P^i with i > {A - B}")
    if op_kernel_dim != len(kernel):
        raise WindowTooSmall(
            f"bidegree {(A, B)}: operations up to P^{N} do not separate the non-unstable fractions; "
            f"increase the truncation"
        )
    elements = [LocalizedClass(_combine(cands, vec, zero), denominator) for vec in kernel]
    return UnstableSlice((A, B), cands, kernel, elements, N)


def _window_range(window) -> list[tuple[int, int]]:
    (a0, a1), (b0, b1) = window
    return [(A, B) for B in range(b0, b1 + 1) for A in range(a0, a1 + 1)]


def unstable_part(
    module: SteenrodModule,
    window,
    denominator: Sequence[Character] | None = None,
    depth: int = 1,
    truncation: int | None = None,
) -> UnstablePart:
    """``Un(M[E_G^(-1)])`` on a window ``((a0, a1), (b0, b1))`` of bidegrees."""
    if denominator is None:
        denominator = default_denominator(module, depth)
    denominator = list(denominator)
    R = module.base
    for chi in denominator:
        if not R.linear_form(chi):
            raise InputError(f"denominator factor e({chi}) vanishes; it is not in E_G")
    out = UnstablePart(module, denominator)
    for A, B in _window_range(window):
        out.slices[(A, B)] = unstable_slice(module, A, B, denominator, truncation)
    return out


def is_unstable(module: SteenrodModule, y: LocalizedClass, truncation: int | None = None) -> bool:
    """Membership of a single fraction in ``Un``, decided by stripping and certified by ``P^i``."""
    _ensure_components(module)
    if isinstance(y, (PointClass, ModelClass)):
        y = LocalizedClass(y)
    num = module.as_algebra(y.numerator)
    if not num:
        return True
    bds = num.bidegrees()
    if len(bds) != 1:
        raise InputError(f"{y} is not bihomogeneous")
    (a, b), = bds
    s = len(y.denominator)
    A, B = a - 2 * s, b - s
    accepted = not _residue_vector(module, num, y.denominator)
    N = truncation if truncation is not None else max(A - B, 0) + DEFAULT_EXTRA_TRUNCATION
    ops = module.localized_total_power(LocalizedClass(num, y.denominator), N)
    high = [ops[i] for i in range(max(A - B, -1) + 1, N + 1)]
    nonzero = any(not c.is_zero() for c in high)
    if accepted and nonzero:
        raise InvariantViolation(f"{y} strips cleanly but has a nonzero high operation")
    if not accepted and not nonzero:
        raise WindowTooSmall(f"no P^i with {A - B} < i <= {N} detects that {y} is not unstable")
    return accepted


# --- extension by a trivially acting mu_p ---------------------------------------------


def kunneth_extend(module: SteenrodModule, p: int | None = None) -> SteenrodModule:
    """``H_(mu_p x D)(X) = H_(mu_p)(pt) (x) H_D(X)`` when ``mu_p`` acts trivially.

    The new factor comes first; model weights get a zero in the new coordinate.
    """
    R = module.base
    if p is None:
        p = module.p
    if module.p != p:
        raise InputError(f"cannot extend a mod {module.p} module by mu_{p}")
    lat = CharacterLattice(0, (p,) * (R.s + 1))
    newR = EquivariantPointRing(lat)
    if module.model is None:
        return SteenrodModule(newR)
    weights = [lat((0,) + w.coords) for w in module.model.weights]
    return SteenrodModule(ProjectiveModelRing(newR, weights, module.model.name))


def trivial_module(p: int) -> SteenrodModule:
    """``H_D(pt)`` for the trivial group ``D``: the field ``GF(p)``."""
    return SteenrodModule(EquivariantPointRing(CharacterLattice(), field=GF(p)))


# --- Smith theory ---------------------------------------------------------------------


@dataclass
class FixedCohomology:
    ranks: dict
    generators: dict
    products: dict
    unstable_dims: dict
    denominator: list

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())


def _coords(module, x, cands) -> list:
    index = {}
    for j, b in enumerate(cands):
        (key, _), = module.flatten(b).items()
        index[key] = j
    v = [module.base.field.zero] * len(cands)
    for key, c in module.flatten(x).items():
        if key not in index:
            raise InvariantViolation("element outside the candidate space")
        v[index[key]] = c
    return v


def smith_fixed_cohomology(
    module: SteenrodModule,
    window,
    depth: int = 1,
    truncation: int | None = None,
    products: bool = True,
) -> FixedCohomology:
    """``H(X^G) = F_p (x)_{H_G(pt)} Un(H_G(X)[E_G^(-1)])`` on a window of bidegrees.

    The rank in bidegree ``(A, B)`` is ``dim Un - dim(sum v_i Un + u_i Un)``;
    the neighbouring bidegrees are computed as needed.
    """
    den = default_denominator(module, depth)
    R = module.base
    F = R.field
    cache: dict = {}

    def slice_at(A, B):
        if (A, B) not in cache:
            cache[(A, B)] = unstable_slice(module, A, B, den, truncation)
        return cache[(A, B)]

    ranks, gens, un_dims = {}, {}, {}
    reps_num: dict = {}
    for A, B in _window_range(window):
        sl = slice_at(A, B)
        un_dims[(A, B)] = sl.dim
        if not sl.dim:
            continue
        cands = sl.candidates
        image = []
        for i in range(R.s):
            for x in slice_at(A - 2, B - 1).elements:
                image.append(_coords(module, x.numerator * R.v(i), cands))
            for x in slice_at(A - 1, B - 1).elements:
                image.append(_coords(module, R.u(i) * x.numerator if module.model is None else x.numerator * R.u(i), cands))
        base_rank = rank(image, F) if image else 0
        # greedy complement of the image inside Un
        span = list(image)
        cur = base_rank
        chosen = []
        for vec, el in zip(sl.kernel, sl.elements):
            r = rank(span + [vec], F)
            if r > cur:
                span.append(vec)
                cur = r
                chosen.append(el)
        ranks[(A, B)] = len(chosen)
        if chosen:
            gens[(A, B)] = chosen
            reps_num[(A, B)] = (image, chosen, cands)
    prods = {}
    if products:
        Dclass = None
        for (bd1, g1), (bd2, g2) in itertools.combinations_with_replacement(sorted(gens.items()), 2):
            tgt = (bd1[0] + bd2[0], bd1[1] + bd2[1])
            if tgt not in reps_num:
                continue
            image, chosen, cands = reps_num[tgt]
            for i, x in enumerate(g1):
                for j, y in enumerate(g2):
                    if bd1 == bd2 and j < i:
                        continue
                    num = x.numerator * y.numerator
                    for chi in den:
                        q = num.divexact(R.linear_form(chi))
                        if q is None:
                            raise InvariantViolation("product of unstable classes left the candidate space")
                        num = q
                    vec = _coords(module, num, cands)
                    # solve vec = sum a_k chosen_k + (image part)
                    basis = [_coords(module, c.numerator, cands) for c in chosen]
                    rows = [list(col) for col in zip(*(basis + image + [vec]))]
                    R2, piv = rref(rows, F)
                    ncols = len(basis) + len(image)
                    if ncols in piv:
                        raise InvariantViolation("product is not in the unstable part")
                    sol = [F.zero] * len(basis)
                    for r_i, c in enumerate(piv):
                        if c < len(basis):
                            sol[c] = R2[r_i][ncols]
                    prods[(bd1, i, bd2, j)] = (tgt, sol)
    return FixedCohomology(ranks, gens, prods, un_dims, den)
