"""Coefficient fields: the rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..errors import InputError


class RationalField:
    characteristic = 0

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def normalize(self, a):
        return a if type(a) is Fraction else Fraction(a)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(a)

    def format(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "rational"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    def __init__(self, p: int):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def normalize(self, a):
        return a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return pow(a, -1, self.p)

    def format(self, a) -> str:
        # symmetric representatives read better: x - 1 rather than x + 4
        return str(a - self.p if a > self.p // 2 else a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __str__(self):
        return f"prime {self.p}"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)
