"""Fractions with Euler-class denominators.

A :class:`LocalizedClass` is ``numerator / prod e(chi)`` where the numerator
is a point class or a model class and the denominator is a sorted tuple of
characters.  Denominators in ``E_C`` are nonzerodivisors on free modules, so
equality is decided by cross-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..errors import DegenerateLocalization, InputError, NotInEC
from ..lattice import Character, SubgroupPresentation
from .pointring import EquivariantPointRing, PointClass


def _base(x) -> EquivariantPointRing:
    if isinstance(x, PointClass):
        return x.ring
    return x.ring.base


class LocalizedClass:
    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator: Iterable[Character] = ()):
        self.numerator = numerator
        den = tuple(sorted(denominator, key=Character.key))
        base = _base(numerator)
        for chi in den:
            if not base.linear_form(chi):
                raise DegenerateLocalization(f"Euler class of {chi} vanishes over {base.field}")
        self.denominator = den

    @property
    def base(self) -> EquivariantPointRing:
        return _base(self.numerator)

    def denominator_class(self) -> PointClass:
        out = self.base.one
        for chi in self.denominator:
            out = out * self.base.euler(chi)
        return out

    def _coerce(self, other):
        if isinstance(other, LocalizedClass):
            return other
        if isinstance(other, int):
            if isinstance(self.numerator, PointClass):
                return LocalizedClass(self.base.scalar(other))
            return LocalizedClass(self.numerator.ring.scalar(other))
        return LocalizedClass(other)

    def __add__(self, other):
        other = self._coerce(other)
        a = self.numerator * other.denominator_class()
        b = other.numerator * self.denominator_class()
        return LocalizedClass(a + b, self.denominator + other.denominator).simplify()

    __radd__ = __add__

    def __neg__(self):
        return LocalizedClass(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return LocalizedClass(self.numerator * other.numerator, self.denominator + other.denominator).simplify()

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        return self.numerator * other.denominator_class() == other.numerator * self.denominator_class()

    def __hash__(self):
        raise TypeError("LocalizedClass is unhashable (equality is up to cross-multiplication)")

    def is_zero(self) -> bool:
        return not self.numerator

    def simplify(self) -> "LocalizedClass":
        """Cancel denominator factors that divide the numerator exactly."""
        num = self.numerator
        if not num:
            return LocalizedClass(num)
        kept = []
        for chi in self.denominator:
            q = num.divexact(self.base.linear_form(chi))
            if q is None:
                kept.append(chi)
            else:
                num = q
        return LocalizedClass(num, kept)

    def map_numerator(self, fn) -> "LocalizedClass":
        """Apply a base-linear map to the numerator (e.g. a pushforward)."""
        return LocalizedClass(fn(self.numerator), self.denominator)

    def check_denominators(self, C: SubgroupPresentation) -> None:
        for chi in self.denominator:
            if not in_EC_character(self.base, chi, C):
                raise NotInEC(f"denominator factor e({chi}) is not in E_C")

    def cleared(self) -> object:
        """The numerator, if the denominator is trivial; otherwise an error."""
        s = self.simplify()
        if s.denominator:
            raise InputError(f"{self} has a nontrivial denominator")
        return s.numerator

    def __str__(self):
        if not self.denominator:
            return str(self.numerator)
        den = "*".join(f"e({chi})" for chi in self.denominator)
        return f"({self.numerator}) / ({den})"

    def __repr__(self):
        return f"LocalizedClass({self})"


def in_EC_character(R: EquivariantPointRing, chi: Character, C: SubgroupPresentation) -> bool:
    """Whether ``e(chi)`` is an invertible element of ``E_C``.

    Over ``GF(p)`` the linear form only sees the free coordinates modulo
    ``p``, so every lift ``chi + p*lam`` has the same Euler class; the class
    is in ``E_C`` if some lift restricts nontrivially.  A vanishing Euler
    class is never accepted.
    """
    if not R.linear_form(chi):
        return False
    if not C.apply(chi).is_zero():
        return True
    p = R.field.characteristic
    if p and R.r:
        for e in R.lattice.basis()[: R.r]:
            if not C.apply(e * p).is_zero():
                return True
    return False


@dataclass
class ECMembership:
    ok: bool
    unit: object
    characters: list

    def __bool__(self):
        return self.ok


def in_EC(x, C: SubgroupPresentation) -> ECMembership:
    """Decide whether ``x`` is a unit times a product of Euler classes from ``E_C``.

    ``x`` may be a point class that is a linear form or a monomial, a list of
    such factors, or a localized class (its denominator is checked).
    """
    if isinstance(x, LocalizedClass):
        R = x.base
        chars = list(x.denominator)
        return ECMembership(all(in_EC_character(R, c, C) for c in chars), R.field.one, chars)
    factors = list(x) if isinstance(x, (list, tuple)) else [x]
    if not factors:
        raise InputError("empty product")
    R = factors[0].ring
    unit = R.field.one
    chars: list[Character] = []
    for f in factors:
        c, cs = f.linear_factors()
        unit = R.field.normalize(unit * c)
        chars.extend(cs)
    ok = all(in_EC_character(R, chi, C) for chi in chars)
    return ECMembership(ok, unit, chars)


def localize_eq(a: LocalizedClass, b: LocalizedClass, C: SubgroupPresentation | None = None) -> bool:
    if C is not None:
        a.check_denominators(C)
        b.check_denominators(C)
    return a == b
