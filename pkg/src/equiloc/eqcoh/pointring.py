"""Equivariant cohomology of the point for ``Gm^r x (mu_p)^s``.

    H_G(pt) = F[t_1..t_r, v_1..v_s] (x) Lambda[u_1..u_s]

with ``t_i, v_j`` in bidegree (2,1), ``u_j`` in (1,1), ``u_j u_k = -u_k u_j``
and ``u_j^2 = c * v_j`` (``c = 0`` unless configured).  A class is stored as
``{u-mask: polynomial in t, v}``; the even part is an ordinary commutative
polynomial ring, which is where Euler classes live.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Iterable

from ..errors import InputError, LatticeMismatch, NotFactored
from ..lattice import Character, CharacterLattice, Representation
from ..polyalg import GF, QQ, PolyRing
from ..polyalg.fields import _is_prime
from ..polyalg.poly import Poly


class EquivariantPointRing:
    def __init__(self, lattice: CharacterLattice, u_square=0, field=None):
        self.lattice = lattice
        tors = lattice.torsion
        self.r = lattice.rank
        self.s = len(tors)
        if tors:
            p = tors[0]
            if any(m != p for m in tors) or not _is_prime(p):
                raise InputError(
                    f"torsion {tors} is not (Z/p)^s for a single prime p; mixed torsion is not supported"
                )
            self.p = p
            if field is not None and field != GF(p):
                raise InputError(f"coefficients must be GF({p}) for a (mu_{p})-factor")
            self.field = GF(p)
        else:
            self.p = None
            self.field = field if field is not None else QQ
        self.u_square = self.field(u_square)
        if self.u_square and self.s == 0:
            raise InputError("u^2 relation given but the group has no mu_p factor")
        if self.p == 2 and not self.u_square:
            warnings.warn("p = 2: using u^2 = 0, which is a convention, not a theorem", stacklevel=2)
        tn = ["t"] if self.r == 1 else [f"t{i + 1}" for i in range(self.r)]
        vn = ["v"] if self.s == 1 else [f"v{i + 1}" for i in range(self.s)]
        self.u_names = ["u"] if self.s == 1 else [f"u{i + 1}" for i in range(self.s)]
        self.even = PolyRing(self.field, tn + vn)
        self.names = tuple(tn + vn + self.u_names)

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantPointRing)
            and other.lattice == self.lattice
            and other.field == self.field
            and other.u_square == self.u_square
        )

    def __hash__(self):
        return hash((self.lattice, self.field, self.u_square))

    def __repr__(self):
        return f"H_G(pt) for G = D({self.lattice}) over {self.field!r}"

    # -- elements -----------------------------------------------------------------

    @property
    def zero(self) -> "PointClass":
        return PointClass(self, {})

    @property
    def one(self) -> "PointClass":
        return self.scalar(1)

    def scalar(self, c) -> "PointClass":
        return PointClass(self, {0: self.even.constant(c)})

    def from_even(self, f: Poly) -> "PointClass":
        return PointClass(self, {0: f})

    def t(self, i: int = 0) -> "PointClass":
        return self.from_even(self.even.gens[i])

    def v(self, i: int = 0) -> "PointClass":
        return self.from_even(self.even.gens[self.r + i])

    def u(self, i: int = 0) -> "PointClass":
        return PointClass(self, {1 << i: self.even.one})

    def gens(self) -> dict[str, "PointClass"]:
        out = {}
        for k in range(self.r + self.s):
            out[self.even.names[k]] = self.from_even(self.even.gens[k])
        for k in range(self.s):
            out[self.u_names[k]] = self.u(k)
        return out

    def parse(self, text: str) -> "PointClass":
        """Read a class from a polynomial string in the generator names (u's in increasing order)."""
        ring = PolyRing(self.field, self.names)
        f = ring(text)
        out = self.zero
        g = self.gens()
        for m, c in f.terms.items():
            term = self.scalar(c)
            for name, e in zip(self.names, m):
                for _ in range(e):
                    term = term * g[name]
            out = out + term
        return out

    # -- characters and Euler classes ---------------------------------------------

    def _check(self, chi: Character):
        if chi.lattice != self.lattice:
            raise LatticeMismatch(f"character {chi} is not in {self.lattice}")

    def linear_form(self, chi: Character) -> Poly:
        """First Chern class of the line of character ``chi``: ``sum a_i t_i + sum b_j v_j``."""
        self._check(chi)
        return Poly(self.even, {tuple(1 if k == i else 0 for k in range(self.r + self.s)): a for i, a in enumerate(chi.coords) if a})

    def euler(self, chi: Character) -> "PointClass":
        return self.from_even(self.linear_form(chi))

    def character_of(self, form: Poly) -> Character:
        """The character whose linear form is ``form`` (symmetric lift of coefficients mod p)."""
        if form.ring != self.even:
            raise InputError("linear form from a different ring")
        coords = [0] * (self.r + self.s)
        for m, c in form.terms.items():
            if sum(m) != 1:
                raise NotFactored(f"{form} is not a linear form")
            i = m.index(1)
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise NotFactored(f"{form} has a non-integral coefficient")
                c = int(c)
            elif self.field.characteristic and c > self.field.characteristic // 2:
                c -= self.field.characteristic
            coords[i] = c
        return self.lattice(coords)

    def monomial_basis(self, A: int, B: int) -> list["PointClass"]:
        """Basis of bidegree ``(A, B)``: even monomials of degree ``A - B`` times ``|mask| = 2B - A`` u's."""
        d, k = A - B, 2 * B - A
        if d < 0 or k < 0 or k > self.s:
            return []
        n = self.r + self.s
        out = []
        for mask in range(1 << self.s):
            if bin(mask).count("1") != k:
                continue
            for e in _compositions(d, n):
                out.append(PointClass(self, {mask: Poly(self.even, {e: 1})}))
        return out


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(d - a, n - 1):
            yield (a,) + rest


def _umul(a: int, b: int, s: int) -> tuple[int, int, int]:
    """``u^a * u^b = sign * u^(a xor b) * prod_{i in a & b} (u_i^2)``; returns (sign, mask, overlap)."""
    inv = 0
    for j in range(s):
        if b >> j & 1:
            inv += bin(a >> (j + 1)).count("1")
    return (-1 if inv % 2 else 1), a ^ b, a & b


class PointClass:
    __slots__ = ("ring", "parts")

    def __init__(self, ring: EquivariantPointRing, parts: dict[int, Poly]):
        self.ring = ring
        self.parts = {m: f for m, f in parts.items() if f}

    def _coerce(self, other):
        if isinstance(other, PointClass):
            if other.ring != self.ring:
                raise InputError("classes from different point rings")
            return other
        if isinstance(other, Poly):
            return self.ring.from_even(other)
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.parts)
        for m, f in other.parts.items():
            out[m] = out[m] + f if m in out else f
        return PointClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return PointClass(self.ring, {m: -f for m, f in self.parts.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        R = self.ring
        out: dict[int, Poly] = {}
        for a, f in self.parts.items():
            for b, g in other.parts.items():
                sign, mask, overlap = _umul(a, b, R.s)
                h = f * g
                if overlap:
                    if not R.u_square:
                        continue
                    for j in range(R.s):
                        if overlap >> j & 1:
                            h = h * R.even.gens[R.r + j].scale(R.u_square)
                if sign < 0:
                    h = -h
                out[mask] = out[mask] + h if mask in out else h
        return PointClass(R, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        return hash(frozenset((m, f) for m, f in self.parts.items()))

    def __bool__(self):
        return bool(self.parts)

    def scale(self, c) -> "PointClass":
        return PointClass(self.ring, {m: f.scale(c) for m, f in self.parts.items()})

    def is_even(self) -> bool:
        return all(m == 0 for m in self.parts)

    def even_part(self) -> Poly:
        return self.parts.get(0, self.ring.even.zero)

    def divexact(self, d) -> "PointClass | None":
        """Exact quotient by an even class (e.g. an Euler class), or ``None``."""
        if isinstance(d, PointClass):
            if not d.is_even():
                raise InputError("can only divide by even classes")
            d = d.even_part()
        out = {}
        for m, f in self.parts.items():
            q = f.divexact(d)
            if q is None:
                return None
            out[m] = q
        return PointClass(self.ring, out)

    def bidegrees(self) -> set[tuple[int, int]]:
        out = set()
        for m, f in self.parts.items():
            k = bin(m).count("1")
            for e in f.terms:
                d = sum(e)
                out.add((2 * d + k, d + k))
        return out

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> tuple[int, int] | None:
        b = self.bidegrees()
        if len(b) > 1:
            raise InputError(f"{self} is not bihomogeneous")
        return next(iter(b)) if b else None

    def linear_factors(self) -> tuple[object, list[Character]]:
        """``(unit, characters)`` with ``self = unit * prod e(chi)``.

        Accepted inputs are linear forms and scalar multiples of monomials in
        the even generators; anything else is rejected (no factoring).
        """
        if not self.is_even() or not self:
            raise NotFactored(f"{self} is not a product of linear forms")
        f = self.even_part()
        R = self.ring
        if len(f.terms) == 1:
            (m, c), = f.terms.items()
            chars = []
            for i, e in enumerate(m):
                unit = R.lattice([int(j == i) for j in range(len(m))])
                chars.extend([unit] * e)
            return c, chars
        if all(sum(m) == 1 for m in f.terms):
            return R.field.one, [R.character_of(f)]
        raise NotFactored(f"{self} is not presented as a product of linear forms")

    def __str__(self):
        if not self.parts:
            return "0"
        R = self.ring
        pieces = []
        for m in sorted(self.parts):
            f = self.parts[m]
            us = [R.u_names[j] for j in range(R.s) if m >> j & 1]
            if not us:
                pieces.append(str(f))
                continue
            u = "*".join(us)
            if f == 1:
                pieces.append(u)
            elif f == -1:
                pieces.append("-" + u)
            elif len(f.terms) == 1:
                pieces.append(f"{f}*{u}")
            else:
                pieces.append(f"({f})*{u}")
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"PointClass({self})"


def euler_class(rep: Representation | Iterable[Character], R: EquivariantPointRing) -> PointClass:
    """Euler class of a sum of characters: the product of their linear forms."""
    out = R.one
    for chi in rep:
        out = out * R.euler(chi)
    return out
