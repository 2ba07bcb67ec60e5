"""Finitely generated abelian groups as character lattices of diagonalizable groups.

A lattice ``Z^r + Z/m_1 + ... + Z/m_s`` (with ``m_1 | m_2 | ...``) is the
character group of ``G = Gm^r x mu_{m_1} x ... x mu_{m_s}``.  Closed subgroups
``C`` of ``G`` are described dually by the surjection of character groups
``Gamma -> Gamma_C`` (restriction of characters), stored as a
:class:`SubgroupPresentation`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, LatticeMismatch


@dataclass(frozen=True)
class CharacterLattice:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if self.rank < 0:
            raise InputError("lattice rank must be non-negative")
        for m in self.torsion:
            if m < 2:
                raise InputError(f"torsion order {m} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InputError(
                    f"torsion orders {self.torsion} do not form a divisibility chain"
                )

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        n = 1
        for m in self.torsion:
            n *= m
        return n

    @property
    def exponent(self) -> int | None:
        if self.rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def __call__(self, *coords) -> "Character":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        if len(coords) != self.ngens:
            raise LatticeMismatch(
                f"character {list(coords)} has {len(coords)} coordinates; "
                f"lattice {self} needs {self.ngens}"
            )
        return Character(self, tuple(coords[: self.rank]), tuple(coords[self.rank :]))

    def zero(self) -> "Character":
        return self((0,) * self.ngens)

    def basis(self) -> list["Character"]:
        out = []
        for i in range(self.ngens):
            v = [0] * self.ngens
            v[i] = 1
            out.append(self(v))
        return out

    def elements(self) -> Iterable["Character"]:
        """All elements of a finite lattice, in lexicographic order."""
        if self.rank:
            raise InputError(f"lattice {self} is infinite")
        for coords in itertools.product(*(range(m) for m in self.torsion)):
            yield self(coords)

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{m}" for m in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Character:
    lattice: CharacterLattice
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def __post_init__(self):
        lat = self.lattice
        if len(self.free) != lat.rank or len(self.torsion) != len(lat.torsion):
            raise LatticeMismatch(f"coordinates do not fit lattice {lat}")
        object.__setattr__(self, "free", tuple(int(a) for a in self.free))
        object.__setattr__(
            self, "torsion", tuple(int(a) % m for a, m in zip(self.torsion, lat.torsion))
        )

    @property
    def coords(self) -> tuple[int, ...]:
        return self.free + self.torsion

    def _check(self, other):
        if not isinstance(other, Character) or other.lattice != self.lattice:
            raise LatticeMismatch(f"cannot combine characters of {self.lattice} and {getattr(other, 'lattice', other)}")

    def __add__(self, other):
        self._check(other)
        return self.lattice([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return self.lattice([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.lattice([-a for a in self.coords])

    def __mul__(self, n: int):
        return self.lattice([n * a for a in self.coords])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def key(self):
        return self.coords

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.coords) + "]"

    def __repr__(self):
        return f"Character{self}"


def character_sum(chars: Iterable[Character], lattice: CharacterLattice) -> Character:
    total = lattice.zero()
    for c in chars:
        total = total + c
    return total


# --- Smith normal form -------------------------------------------------------


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(U, D, V)`` with ``U*M*V == D``.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with non-negative entries
    forming a divisibility chain (zeros last).  ``ncols`` is only needed when
    ``M`` has no rows.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)] for i in range(len(A))]


# --- subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupPresentation:
    """Closed subgroup ``C = D(Gamma_C)`` of ``G = D(Gamma)``.

    ``matrix`` is the integer matrix of the restriction map on coordinates:
    ``restrict(chi).coords == coords(chi) * matrix`` reduced in ``quotient``.
    """

    ambient: CharacterLattice
    quotient: CharacterLattice
    matrix: tuple[tuple[int, ...], ...]
    relations: tuple[Character, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.matrix) != self.ambient.ngens or any(
            len(row) != self.quotient.ngens for row in self.matrix
        ):
            raise InputError("restriction matrix has the wrong shape")

    def apply(self, chi: Character) -> Character:
        if chi.lattice != self.ambient:
            raise LatticeMismatch(
                f"character {chi} lives in {chi.lattice}, subgroup is of D({self.ambient})"
            )
        c = chi.coords
        out = [sum(c[i] * self.matrix[i][j] for i in range(len(c))) for j in range(self.quotient.ngens)]
        return self.quotient(out)

    @property
    def is_whole_group(self) -> bool:
        # a surjection between isomorphic f.g. abelian groups is injective
        return self.quotient == self.ambient

    @classmethod
    def whole(cls, lattice: CharacterLattice) -> "SubgroupPresentation":
        return quotient_lattice(lattice, [])

    @classmethod
    def trivial(cls, lattice: CharacterLattice) -> "SubgroupPresentation":
        return quotient_lattice(lattice, lattice.basis())


def quotient_lattice(G: CharacterLattice, relations: Iterable[Character]) -> SubgroupPresentation:
    """Character group ``Gamma / <relations>`` in invariant-factor form, with the quotient map."""
    relations = tuple(relations)
    for r in relations:
        if r.lattice != G:
            raise LatticeMismatch(f"relation {r} is not in {G}")
    n = G.ngens
    rows = []
    for i, m in enumerate(G.torsion):
        row = [0] * n
        row[G.rank + i] = m
        rows.append(row)
    rows.extend(list(r.coords) for r in relations)
    _, D, V = smith_normal_form(rows, ncols=n)
    diag = [D[i][i] if i < len(D) else 0 for i in range(n)]
    free_cols = [j for j in range(n) if diag[j] == 0]
    tors_cols = [j for j in range(n) if diag[j] > 1]
    torsion = tuple(diag[j] for j in tors_cols)
    quotient = CharacterLattice(len(free_cols), torsion)
    cols = free_cols + tors_cols
    matrix = tuple(tuple(V[i][j] for j in cols) for i in range(n))
    return SubgroupPresentation(G, quotient, matrix, relations)


def restrict(chi: Character, C: SubgroupPresentation) -> Character:
    """Restriction of the character ``chi`` of ``G`` to the subgroup ``C``."""
    return C.apply(chi)


def restricts_trivially(chi: Character, C: SubgroupPresentation) -> bool:
    return C.apply(chi).is_zero()


# --- representations -----------------------------------------------------------


@dataclass(frozen=True)
class Representation:
    """A finite multiset of characters, kept in a chosen order (the basis order)."""

    lattice: CharacterLattice
    characters: tuple[Character, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "characters", tuple(self.characters))
        for c in self.characters:
            if c.lattice != self.lattice:
                raise LatticeMismatch(f"character {c} is not in {self.lattice}")

    @property
    def rank(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __len__(self):
        return len(self.characters)

    def __add__(self, other: "Representation") -> "Representation":
        if other.lattice != self.lattice:
            raise LatticeMismatch("direct sum of representations of different groups")
        return Representation(self.lattice, self.characters + other.characters)

    def multiset(self) -> tuple[Character, ...]:
        return tuple(sorted(self.characters, key=Character.key))

    def fixed_dimension(self, C: SubgroupPresentation) -> int:
        """``dim V^C``: the number of characters trivial on ``C``."""
        return sum(1 for c in self.characters if restricts_trivially(c, C))

    def has_no_fixed_part(self, C: SubgroupPresentation) -> bool:
        return self.fixed_dimension(C) == 0

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.characters) + "}"
