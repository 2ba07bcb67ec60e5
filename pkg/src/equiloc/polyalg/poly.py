"""Sparse multivariate polynomials over QQ or GF(p)."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from ..errors import InputError

Monomial = tuple


def _grevlex(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def _grlex(e):
    return (sum(e), e)


def _lex(e):
    return e


ORDERS: dict[str, Callable] = {"grevlex": _grevlex, "grlex": _grlex, "lex": _lex}


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    def __init__(self, field, names: Iterable[str], order: str = "grevlex"):
        if order not in ORDERS:
            raise InputError(f"unknown monomial order {order!r}")
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise InputError(f"repeated variable names in {self.names}")
        self.nvars = len(self.names)
        self.order = order
        self.key = ORDERS[order]
        self._index = {n: i for i, n in enumerate(self.names)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.names)}, {self.order!r})"

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: self.field(c)})

    def monomial(self, exps, coeff=1) -> "Poly":
        return Poly(self, {tuple(exps): self.field(coeff)})

    @property
    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(n) for n in self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    def var(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): self.field.one})

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise InputError("polynomial belongs to a different ring")
            return x
        if isinstance(x, str):
            from .parser import parse_poly

            return parse_poly(x, self)
        return self.constant(x)

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(field, self.names, self.order)


class Poly:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object], _clean=False):
        self.ring = ring
        if _clean:
            self.terms = dict(terms)
        else:
            norm = ring.field.normalize
            self.terms = {}
            for m, c in terms.items():
                c = norm(c)
                if c:
                    self.terms[tuple(m)] = c
        self._lm = None

    # -- coercion / comparison ---------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise InputError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    # -- arithmetic --------------------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return Poly(self.ring, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        return Poly(self.ring, {m: c * a for m, a in self.terms.items()})

    def mul_term(self, mono, c) -> "Poly":
        return Poly(self.ring, {mono_mul(m, mono): c * a for m, a in self.terms.items()})

    # -- order-dependent data --------------------------------------------------------

    def leading_monomial(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coeff())
        return Poly(self.ring, {m: c * inv for m, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda mc: self.ring.key(mc[0]), reverse=True)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- maps ---------------------------------------------------------------------

    def substitute(self, images: Mapping[int, "Poly"], ring: PolyRing | None = None) -> "Poly":
        """Ring map sending variable ``i`` to ``images[i]`` (others to themselves, which
        then must exist in the target ring)."""
        target = ring or self.ring
        result = target.zero
        powers: dict = {}
        for m, c in self.terms.items():
            term = target.constant(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in images:
                    img = images[i]
                else:
                    img = target.var(self.ring.names[i])
                key = (i, e)
                if key not in powers:
                    powers[key] = img ** e
                term = term * powers[key]
            result = result + term
        return result

    def map_coefficients(self, ring: PolyRing) -> "Poly":
        """Image under the coefficient map into ``ring`` (same variables), e.g. QQ -> GF(p)."""
        if ring.names != self.ring.names:
            raise InputError("coefficient change needs the same variables")
        return Poly(ring, {m: ring.field(c) for m, c in self.terms.items()})

    def evaluate(self, values: Mapping[int, object] | list) -> object:
        total = self.ring.field.zero
        for m, c in self.terms.items():
            t = c
            for i, e in enumerate(m):
                if e:
                    t = t * values[i] ** e
            total = total + t
        return self.ring.field.normalize(total)

    def divexact(self, g: "Poly") -> "Poly | None":
        """Quotient ``self / g`` if ``g`` divides ``self`` exactly, else ``None``."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        key = self.ring.key
        lm = g.leading_monomial()
        inv = self.ring.field.inv(g.leading_coeff())
        rest = dict(self.terms)
        quot: dict = {}
        norm = self.ring.field.normalize
        while rest:
            m = max(rest, key=key)
            if not mono_divides(lm, m):
                return None
            q = mono_div(m, lm)
            c = norm(rest[m] * inv)
            quot[q] = c
            for gm, gc in g.terms.items():
                t = mono_mul(gm, q)
                v = norm(rest.get(t, 0) - c * gc)
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        return Poly(self.ring, quot, _clean=True)

    # -- printing ----------------------------------------------------------------------

    def _mono_str(self, m) -> str:
        parts = []
        for name, e in zip(self.ring.names, m):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.ring.field.format
        out = []
        for m, c in self.sorted_terms():
            s = fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = self._mono_str(m)
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"Poly({self})"
