"""Comodules over the Hopf algebra ``k[Gamma]`` of a diagonalizable group.

A comodule structure ``F -> k[G] (x) F`` on a vector space is the same as a
``Gamma``-grading, so comodules are stored as gradings.  The equalizer-kernel
definition of the fixed part (kernel of ``1 (x) id - mu_F``) is kept as an
independent oracle, :func:`equalizer_fixed_space`.

Elements of a free comodule are dense coefficient lists in the basis order.
Elements of ``k[G]`` and of ``k[G] (x) F`` are dicts keyed by characters
(respectively ``(character, basis index)`` pairs).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, LatticeMismatch
from .lattice import Character, CharacterLattice, SubgroupPresentation
from .linalg import nullspace, rank, rref
from .polyalg import Grading, Ideal, PolyRing, is_homogeneous
from .polyalg.poly import Poly


def _add(d: dict, key, c, field):
    v = field.normalize(d.get(key, field.zero) + c)
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class GroupAlgebra:
    """``k[Gamma]`` with its Hopf structure; elements are ``{Character: coeff}``."""

    def __init__(self, lattice: CharacterLattice, field):
        self.lattice = lattice
        self.field = field

    def e(self, chi: Character) -> dict:
        self._check(chi)
        return {chi: self.field.one}

    def _check(self, chi):
        if chi.lattice != self.lattice:
            raise LatticeMismatch(f"{chi} is not a character of {self.lattice}")

    def unit(self) -> dict:
        return self.e(self.lattice.zero())

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for g, x in a.items():
            for h, y in b.items():
                _add(out, g + h, x * y, self.field)
        return out

    def counit(self, a: dict):
        return self.field.normalize(sum(a.values(), self.field.zero))

    def antipode(self, a: dict) -> dict:
        return {-g: c for g, c in a.items()}

    def coproduct(self, a: dict) -> dict:
        return {(g, g): c for g, c in a.items()}


@dataclass(frozen=True)
class FreeComodule:
    """Finite-dimensional graded vector space: one weight per basis symbol."""

    lattice: CharacterLattice
    names: tuple[str, ...]
    weights: tuple[Character, ...]
    field: object

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.names) != len(self.weights):
            raise InputError("one weight per basis symbol is required")
        for w in self.weights:
            if w.lattice != self.lattice:
                raise LatticeMismatch(f"weight {w} is not in {self.lattice}")

    @classmethod
    def from_weights(cls, lattice, weights: Iterable[Character], field, prefix="m"):
        weights = tuple(weights)
        return cls(lattice, tuple(f"{prefix}{i}" for i in range(len(weights))), weights, field)

    @property
    def dim(self) -> int:
        return len(self.names)

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def basis_vector(self, i: int) -> list:
        v = self.zero()
        v[i] = self.field.one
        return v

    def coaction(self, x: Sequence) -> dict:
        """``mu_F(x)`` as ``{(weight, i): coeff}``; homogeneous ``m`` goes to ``e_deg(m) (x) m``."""
        out: dict = {}
        for i, c in enumerate(x):
            if c:
                _add(out, (self.weights[i], i), c, self.field)
        return out

    def __str__(self):
        return "{" + ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights)) + "}"


def regular_comodule(lattice: CharacterLattice, field, support: Iterable[Character] | None = None):
    """``k[Gamma]`` as a comodule over itself (a finite sub-comodule when ``Gamma`` is infinite)."""
    if support is None:
        support = list(lattice.elements())
    support = tuple(support)
    return FreeComodule(lattice, tuple(f"e{chi}" for chi in support), support, field)


class AlgebraComodule:
    """``A = k[x_1..x_n]/I`` with variable weights.

    The coaction ``x_i -> e_{w_i} (x) x_i`` is a ring map on the polynomial
    ring; it descends to ``A`` exactly when ``I`` is homogeneous.  Linear
    algebra happens on :meth:`truncate`, the span of standard monomials of
    total degree at most ``max_degree``.
    """

    def __init__(self, grading: Grading, ideal: Ideal):
        grading.check_ring(ideal.ring)
        self.grading = grading
        self.ideal = ideal
        self.ring: PolyRing = ideal.ring

    @property
    def lattice(self):
        return self.grading.lattice

    @property
    def field(self):
        return self.ring.field

    def coaction_is_defined(self) -> bool:
        return is_homogeneous(self.ideal, self.grading)

    def standard_monomials(self, max_degree: int) -> list[tuple]:
        gb = self.ideal.groebner_basis()
        leads = [g.leading_monomial() for g in gb]
        n = self.ring.nvars
        out = []

        def rec(prefix, remaining):
            if len(prefix) == n:
                m = tuple(prefix)
                if not any(all(a <= b for a, b in zip(l, m)) for l in leads):
                    out.append(m)
                return
            for e in range(remaining + 1):
                rec(prefix + [e], remaining - e)

        rec([], max_degree)
        out.sort(key=lambda m: self.ring.key(m))
        return out

    def truncate(self, max_degree: int) -> tuple[FreeComodule, list[tuple]]:
        monos = self.standard_monomials(max_degree)
        names = tuple(str(self.ring.monomial(m)) for m in monos)
        weights = tuple(self.grading.degree(m) for m in monos)
        return FreeComodule(self.lattice, names, weights, self.field), monos

    def vector(self, f: Poly, monos: list[tuple]) -> list:
        """Coordinates of the normal form of ``f`` in the truncated standard basis."""
        r = self.ideal.reduce(f)
        index = {m: i for i, m in enumerate(monos)}
        v = [self.field.zero] * len(monos)
        for m, c in r.terms.items():
            if m not in index:
                raise InputError(f"{f} leaves the truncation window")
            v[index[m]] = c
        return v


def check_comodule_axioms(M) -> bool:
    """Counit and coassociativity of the coaction, on every basis element or generator."""
    if isinstance(M, AlgebraComodule):
        if not M.coaction_is_defined():
            return False
        F = FreeComodule(M.lattice, M.ring.names, M.grading.weights, M.field)
    else:
        F = M
    H = GroupAlgebra(F.lattice, F.field)
    for i in range(F.dim):
        x = F.basis_vector(i)
        mu = F.coaction(x)
        # (eps (x) id) mu = id
        back = F.zero()
        for (g, j), c in mu.items():
            back[j] = F.field.normalize(back[j] + H.counit({g: c}))
        if back != x:
            return False
        # (id (x) mu_F) mu  ==  (mu_G (x) id) mu
        left: dict = {}
        for (g, j), c in mu.items():
            for (h, k), d in F.coaction(F.basis_vector(j)).items():
                _add(left, (g, h, k), c * d, F.field)
        right: dict = {}
        for (g, j), c in mu.items():
            for (a, b), d in H.coproduct({g: c}).items():
                _add(right, (a, b, j), d, F.field)
        if left != right:
            return False
    return True


def _require_subgroup(M: FreeComodule, C: SubgroupPresentation):
    if C.ambient != M.lattice:
        raise LatticeMismatch(f"subgroup of D({C.ambient}) applied to a comodule over {M.lattice}")


def fixed_indices(M: FreeComodule, C: SubgroupPresentation) -> list[int]:
    _require_subgroup(M, C)
    return [i for i, w in enumerate(M.weights) if C.apply(w).is_zero()]


def fixed_part(M, C: SubgroupPresentation, max_degree: int | None = None) -> FreeComodule:
    """``M^C``: span of the basis elements whose weight restricts to zero on ``C``.

    The result keeps its ``Gamma``-grading, which is the statement that
    ``M^C`` is a ``G``-subcomodule.  Algebra presentations need ``max_degree``.
    """
    if isinstance(M, AlgebraComodule):
        if max_degree is None:
            raise InputError("fixed part of an algebra presentation needs a degree bound")
        M, _ = M.truncate(max_degree)
    idx = fixed_indices(M, C)
    return FreeComodule(M.lattice, tuple(M.names[i] for i in idx), tuple(M.weights[i] for i in idx), M.field)


def reynolds(M: FreeComodule, x: Sequence, C: SubgroupPresentation) -> list:
    """Degree-zero projection onto ``M^C``, written in ``M``'s coordinates."""
    keep = set(fixed_indices(M, C))
    return [c if i in keep else M.field.zero for i, c in enumerate(x)]


def tensor(M: FreeComodule, N: FreeComodule) -> FreeComodule:
    if M.lattice != N.lattice:
        raise LatticeMismatch("tensor product of comodules over different groups")
    names, weights = [], []
    for a, v in zip(M.names, M.weights):
        for b, w in zip(N.names, N.weights):
            names.append(f"{a}*{b}")
            weights.append(v + w)
    return FreeComodule(M.lattice, tuple(names), tuple(weights), M.field)


def equalizer_fixed_space(M: FreeComodule, C: SubgroupPresentation, vectors: Sequence[Sequence]) -> list[list]:
    """Oracle for ``M^C`` straight from the definition.

    Restricts the coaction to ``C`` (weights pushed to ``Gamma_C``) and returns
    a basis, in the coordinates of ``vectors``, of the combinations ``x`` with
    ``e_0 (x) x == mu_F(x)``.  ``vectors`` may be any spanning family,
    homogeneous or not.
    """
    _require_subgroup(M, C)
    field = M.field
    zero = C.quotient.zero()
    keys: dict = {}
    columns = []
    for v in vectors:
        col: dict = {}
        for (g, i), c in M.coaction(v).items():
            _add(col, (C.apply(g), i), c, field)
        for i, c in enumerate(v):
            if c:
                _add(col, (zero, i), -c, field)
        for k in col:
            keys.setdefault(k, len(keys))
        columns.append(col)
    if not keys:
        return [[field.one if j == i else field.zero for j in range(len(vectors))] for i in range(len(vectors))]
    rows = [[field.zero] * len(vectors) for _ in keys]
    for j, col in enumerate(columns):
        for k, c in col.items():
            rows[keys[k]][j] = c
    return nullspace(rows, field, ncols=len(vectors))


@dataclass
class GradedMap:
    """Degree-preserving linear map ``source -> target``; ``matrix[i][j]`` is the
    coefficient of target basis ``i`` in the image of source basis ``j``."""

    source: FreeComodule
    target: FreeComodule
    matrix: list

    def __post_init__(self):
        if self.source.lattice != self.target.lattice:
            raise LatticeMismatch("graded map between comodules over different groups")
        if len(self.matrix) != self.target.dim or any(len(r) != self.source.dim for r in self.matrix):
            raise InputError("matrix shape does not match the comodules")
        for i, row in enumerate(self.matrix):
            for j, c in enumerate(row):
                if c and self.target.weights[i] != self.source.weights[j]:
                    raise InputError(
                        f"map is not graded: {self.source.names[j]} ({self.source.weights[j]}) "
                        f"-> {self.target.names[i]} ({self.target.weights[i]})"
                    )

    def __call__(self, x: Sequence) -> list:
        F = self.target.field
        return [F.normalize(sum((a * b for a, b in zip(row, x)), F.zero)) for row in self.matrix]

    def on_fixed(self, C: SubgroupPresentation) -> "GradedMap":
        """The induced map ``f^C`` between fixed parts."""
        si = fixed_indices(self.source, C)
        ti = fixed_indices(self.target, C)
        mat = [[self.matrix[i][j] for j in si] for i in ti]
        return GradedMap(fixed_part(self.source, C), fixed_part(self.target, C), mat)


def embed_fixed(M: FreeComodule, C: SubgroupPresentation, y: Sequence) -> list:
    """Coordinates in ``M`` of an element given in ``M^C``'s basis."""
    out = M.zero()
    for i, c in zip(fixed_indices(M, C), y):
        out[i] = c
    return out


def project_fixed(M: FreeComodule, C: SubgroupPresentation, x: Sequence) -> list:
    return [x[i] for i in fixed_indices(M, C)]


def submodule_is_graded(M: FreeComodule, vectors: Sequence[Sequence]) -> bool:
    """Whether every vector is homogeneous (so their span is a subcomodule)."""
    for v in vectors:
        degs = {M.weights[i] for i, c in enumerate(v) if c}
        if len(degs) > 1:
            return False
    return True


def quotient(M: FreeComodule, vectors: Sequence[Sequence]) -> tuple[FreeComodule, GradedMap]:
    """``M / span(vectors)`` for homogeneous ``vectors``, with the projection map.

    The quotient basis is the set of basis symbols that are not pivots of the
    row-reduced submodule, taken weight by weight.
    """
    if not submodule_is_graded(M, vectors):
        raise InputError("submodule generators must be homogeneous")
    field = M.field
    keep = []
    pivot_rows = []
    if vectors:
        R, pivots = rref(vectors, field)
        pivot_rows = list(zip(pivots, R))
    else:
        pivots = []
    pivset = set(pivots)
    keep = [i for i in range(M.dim) if i not in pivset]
    Q = FreeComodule(M.lattice, tuple(M.names[i] for i in keep), tuple(M.weights[i] for i in keep), field)
    # basis vector e_j maps to itself if kept; a pivot e_c equals -(rest of its row) mod the submodule
    mat = [[field.zero] * M.dim for _ in keep]
    pos = {i: k for k, i in enumerate(keep)}
    for j in range(M.dim):
        if j in pos:
            mat[pos[j]][j] = field.one
    for c, row in pivot_rows:
        for j, a in enumerate(row):
            if j != c and a:
                mat[pos[j]][c] = field.normalize(-a)
    return Q, GradedMap(M, Q, mat)


def map_rank(f: GradedMap) -> int:
    if not f.matrix or not f.matrix[0]:
        return 0
    return rank(f.matrix, f.target.field)
