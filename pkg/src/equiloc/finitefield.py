"""Small finite fields GF(q), q = p^k, by table lookup.

Elements are the integers ``0..q-1``, read as coefficient vectors in base
``p`` of polynomials modulo a fixed irreducible polynomial.  Only meant for
the brute-force point-count oracle, so ``q`` stays small.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import InputError


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, k


def _polymulmod(a, b, mod, p):
    # coefficient lists, low degree first; mod is monic of degree k
    k = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, k - 1, -1):
        c = out[d]
        if c:
            for j in range(k + 1):
                out[d - k + j] = (out[d - k + j] - c * mod[j]) % p
    return (out + [0] * k)[:k]


def _irreducible(p: int, k: int):
    if k == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=k):
        mod = list(tail) + [1]
        if mod[0] == 0:
            continue
        # irreducible iff no root-free factor of degree <= k/2: test by trial division
        if all(_has_no_factor(mod, d, p) for d in range(1, k // 2 + 1)):
            return mod
    raise AssertionError("no irreducible polynomial found")


def _has_no_factor(mod, d, p):
    for tail in itertools.product(range(p), repeat=d):
        f = list(tail) + [1]
        r = list(mod)
        while len(r) - 1 >= d:
            c = r[-1]
            shift = len(r) - 1 - d
            for j in range(d + 1):
                r[shift + j] = (r[shift + j] - c * f[j]) % p
            r.pop()
        if not any(r):
            return False
    return True


class FiniteField:
    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        mod = _irreducible(p, k)
        vecs = [self._digits(a) for a in range(q)]
        self._mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                c = self._number(_polymulmod(vecs[a], vecs[b], mod, p)) if k > 1 else a * b % p
                self._mul[a][b] = self._mul[b][a] = c
        self._add = [[self._number([(x + y) % p for x, y in zip(vecs[a], vecs[b])]) for b in range(q)] for a in range(q)]
        self._neg = [self._number([(-x) % p for x in vecs[a]]) for a in range(q)]
        self.generator = next(g for g in range(1, q) if self._order(g) == q - 1)

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _number(self, v):
        n = 0
        for x in reversed(v):
            n = n * self.p + x
        return n

    def _order(self, g):
        x, n = g, 1
        while x != 1:
            x = self._mul[x][g]
            n += 1
        return n

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def add(self, a, b):
        return self._add[a][b]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def power(self, a, n: int):
        if n < 0:
            a = self.inv(a)
            n = -n
        r = 1
        while n:
            if n & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            n >>= 1
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.power(a, self.q - 2)

    def embed(self, c) -> int:
        """Image of an integer or a rational under ``Z -> GF(p) -> GF(q)``."""
        from fractions import Fraction

        if isinstance(c, Fraction):
            num = self.embed(c.numerator)
            den = c.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"{c} has no image in GF({self.q})")
            return self.mul(num, self.inv(den))
        return int(c) % self.p

    def roots_of_unity(self, n: int) -> list[int]:
        """All ``zeta`` with ``zeta^n = 1``."""
        return [z for z in self.units() if self.power(z, n) == 1]

    def evaluate(self, f, point) -> int:
        total = 0
        for m, c in f.terms.items():
            t = self.embed(c)
            for x, e in zip(point, m):
                if e:
                    t = self.mul(t, self.power(x, e))
            total = self.add(total, t)
        return total


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    return FiniteField(q)
