"""Buchberger's algorithm, normal forms and ideals.

Desk-scale only: the classical algorithm with the product and chain criteria
and the normal selection strategy.  The number of S-polynomial reductions is
capped; exceeding the cap raises :class:`GroebnerBudgetExceeded` instead of
returning a partial basis.
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar
from typing import Iterable, Sequence

from ..errors import GroebnerBudgetExceeded, InputError
from .poly import Poly, PolyRing, mono_div, mono_divides, mono_lcm, mono_mul

DEFAULT_BUDGET = 20_000

_budget: ContextVar[int] = ContextVar("groebner_budget", default=DEFAULT_BUDGET)


@contextlib.contextmanager
def groebner_budget(n: int):
    """Temporarily cap the number of S-polynomial reductions per basis computation."""
    token = _budget.set(int(n))
    try:
        yield
    finally:
        _budget.reset(token)


def current_budget() -> int:
    return _budget.get()


def normal_form(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Fully reduced remainder of ``f`` modulo ``basis`` (any list; unique when it is a Groebner basis)."""
    ring = f.ring
    key = ring.key
    norm = ring.field.normalize
    inv = ring.field.inv
    leads = [(g.leading_monomial(), inv(g.leading_coeff()), g) for g in basis if g]
    rest = dict(f.terms)
    rem = {}
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for lm, lc_inv, g in leads:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = norm(c * lc_inv)
                for gm, gc in g.terms.items():
                    t = mono_mul(gm, q)
                    v = norm(rest.get(t, 0) - factor * gc)
                    if v:
                        rest[t] = v
                    else:
                        rest.pop(t, None)
                break
        else:
            rem[m] = c
            del rest[m]
    return Poly(ring, rem, _clean=True)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    inv = f.ring.field.inv
    a = f.mul_term(mono_div(lcm, lf), inv(f.leading_coeff()))
    b = g.mul_term(mono_div(lcm, lg), inv(g.leading_coeff()))
    return a - b


def _reduce_basis(G: list[Poly]) -> list[Poly]:
    G = [g.monic() for g in G if g]
    # minimal: drop elements whose leading monomial is divisible by another's
    minimal: list[Poly] = []
    for i, g in enumerate(G):
        lm = g.leading_monomial()
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            hm = h.leading_monomial()
            if mono_divides(hm, lm) and (hm != lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        lm = g.leading_monomial()
        tail = Poly(g.ring, {m: c for m, c in g.terms.items() if m != lm}, _clean=True)
        r = normal_form(tail, others)
        reduced.append((g.ring.monomial(lm, 1) + r).monic())
    key = reduced[0].ring.key if reduced else None
    reduced.sort(key=lambda p: key(p.leading_monomial()), reverse=True)
    return reduced


def groebner(polys: Iterable[Poly], budget: int | None = None) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    The result is monic, sorted by decreasing leading monomial, and uniquely
    determined by the ideal and the ring's monomial order.
    """
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise InputError("generators belong to different rings")
    if any(p.is_constant() for p in polys):
        return [ring.one]
    limit = current_budget() if budget is None else budget
    key = ring.key

    G: list[Poly] = [p.monic() for p in polys]
    lms = [g.leading_monomial() for g in G]
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    steps = 0

    def chain_skip(i, j, lcm):
        for k in range(len(G)):
            if k in (i, j) or G[k] is None:
                continue
            if mono_divides(lms[k], lcm):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    return True
        return False

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(mono_lcm(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        if chain_skip(i, j, lcm):
            continue
        steps += 1
        if steps > limit:
            raise GroebnerBudgetExceeded(
                f"Groebner basis computation exceeded {limit} S-polynomial reductions"
            )
        h = normal_form(s_polynomial(G[i], G[j]), [g for g in G if g is not None])
        if h:
            if h.is_constant():
                return [ring.one]
            G.append(h.monic())
            lms.append(h.leading_monomial())
            n = len(G) - 1
            pairs.update((k, n) for k in range(n) if G[k] is not None)
    return _reduce_basis([g for g in G if g is not None])


def is_groebner(G: Sequence[Poly]) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if g]
    for j in range(len(G)):
        for i in range(j):
            if normal_form(s_polynomial(G[i], G[j]), G):
                return False
    return True


class Ideal:
    """Ideal of a polynomial ring, given by generators.

    Questions about the ideal (membership, equality) go through the reduced
    Groebner basis, which is computed once and cached.
    """

    def __init__(self, ring: PolyRing, generators: Iterable[Poly | str | int] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        self._gb: list[Poly] | None = None

    def groebner_basis(self) -> list[Poly]:
        if self._gb is None:
            self._gb = groebner(self.generators)
        return self._gb

    def reduce(self, f) -> Poly:
        return normal_form(self.ring(f), self.groebner_basis())

    def __contains__(self, f) -> bool:
        return not self.reduce(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise InputError("ideals of different rings")
        return [g.terms for g in self.groebner_basis()] == [g.terms for g in other.groebner_basis()]

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.ring, self.generators + tuple(self.ring(g) for g in other))

    def map(self, fn) -> "Ideal":
        mapped = [fn(g) for g in self.generators]
        ring = mapped[0].ring if mapped else self.ring
        return Ideal(ring, mapped)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"

    def __repr__(self):
        return f"Ideal{self}"


def ideal_member(f: Poly, I: Ideal) -> bool:
    return f in I


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I.equals(J)
