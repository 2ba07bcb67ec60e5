import random

import pytest
from hypothesis import given, settings, strategies as st

from equiloc.comodule import (
    AlgebraComodule,
    FreeComodule,
    GradedMap,
    GroupAlgebra,
    check_comodule_axioms,
    embed_fixed,
    equalizer_fixed_space,
    fixed_part,
    map_rank,
    project_fixed,
    quotient,
    regular_comodule,
    reynolds,
    tensor,
)
from equiloc.errors import InputError
from equiloc.lattice import CharacterLattice, SubgroupPresentation, quotient_lattice
from equiloc.linalg import rank
from equiloc.polyalg import GF, QQ, Grading, Ideal, PolyRing

Z = CharacterLattice(1)
G = SubgroupPresentation.whole(Z)
MU2 = quotient_lattice(Z, [Z(2)])
MU3 = quotient_lattice(Z, [Z(3)])


def free(ws, lattice=Z, field=QQ):
    return FreeComodule.from_weights(lattice, [lattice(w) for w in ws], field)


def test_axioms_hold_for_gradings():
    assert check_comodule_axioms(free([1, 0, -1, 1]))
    L = CharacterLattice(1, (4,))
    assert check_comodule_axioms(regular_comodule(CharacterLattice(0, (4,)), GF(5)))
    assert check_comodule_axioms(FreeComodule.from_weights(L, [L(1, 3), L(0, 2)], QQ))


def test_axioms_fail_for_nonhomogeneous_quotient():
    S = PolyRing(QQ, ["x", "y"])
    g = Grading(Z, (Z(1), Z(0)))
    assert not check_comodule_axioms(AlgebraComodule(g, Ideal(S, ["x + y"])))
    assert check_comodule_axioms(AlgebraComodule(g, Ideal(S, ["x*y"])))


def test_regular_comodule_fixed_part_is_unit_line():
    L = CharacterLattice(0, (5,))
    M = regular_comodule(L, QQ)
    F = fixed_part(M, SubgroupPresentation.whole(L))
    assert F.weights == (L(0),)
    M = regular_comodule(Z, QQ, [Z(k) for k in range(-3, 4)])
    assert fixed_part(M, G).weights == (Z(0),)


def test_fixed_part_examples():
    assert fixed_part(free([1, 0, -1]), G).weights == (Z(0),)
    F = fixed_part(free([2, 1]), MU2)
    assert F.weights == (Z(2),)


def test_reynolds_examples():
    M = regular_comodule(Z, QQ, [Z(0), Z(1), Z(3)])
    assert reynolds(M, [1, 1, 0], G) == [1, 0, 0]
    assert reynolds(M, [4, 0, 0], G) == [4, 0, 0]
    assert reynolds(M, [0, 0, 1], MU3) == [0, 0, 1]


def test_tensor_examples():
    assert tensor(free([1]), free([-1])).weights == (Z(0),)
    assert tensor(free([1, 2]), free([0])).weights == (Z(1), Z(2))
    T = tensor(free([1]), free([1]))
    assert MU2.apply(T.weights[0]).is_zero()


def test_group_algebra_hopf_identities():
    L = CharacterLattice(1, (3,))
    H = GroupAlgebra(L, QQ)
    a = {L(1, 2): 3, L(0, 1): -1}
    # m (S x id) Delta = eta eps
    conv: dict = {}
    for (g, h), c in H.coproduct(a).items():
        for k, d in H.mul(H.antipode({g: c}), {h: 1}).items():
            conv[k] = conv.get(k, 0) + d
    conv = {k: v for k, v in conv.items() if v}
    assert conv == {L.zero(): H.counit(a)}


weights = st.lists(st.integers(-4, 4), min_size=1, max_size=6)


def random_graded_map(rng, M, N):
    mat = [[(rng.randint(-3, 3) if N.weights[i] == M.weights[j] else 0) for j in range(M.dim)] for i in range(N.dim)]
    return GradedMap(M, N, mat)


def test_reynolds_functoriality_on_random_maps():
    rng = random.Random(11)
    for _ in range(100):
        M = free([rng.randint(-2, 2) for _ in range(rng.randint(1, 5))])
        N = free([rng.randint(-2, 2) for _ in range(rng.randint(1, 5))])
        C = rng.choice([G, MU2, MU3])
        f = random_graded_map(rng, M, N)
        x = [rng.randint(-5, 5) for _ in range(M.dim)]
        fC = f.on_fixed(C)
        assert reynolds(N, f(x), C) == embed_fixed(N, C, fC(project_fixed(M, C, reynolds(M, x, C))))


@settings(max_examples=100, deadline=None)
@given(weights, st.sampled_from([0, 2, 3]))
def test_quotient_by_fixed_part_has_no_fixed_vectors(ws, m):
    C = G if m == 0 else quotient_lattice(Z, [Z(m)])
    M = free(ws)
    fixed = [embed_fixed(M, C, v) for v in _identity(fixed_part(M, C).dim)]
    Q, _ = quotient(M, fixed)
    assert fixed_part(Q, C).dim == 0


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@settings(max_examples=60, deadline=None)
@given(weights, st.sampled_from([0, 2, 3]), st.randoms(use_true_random=False))
def test_fixed_part_is_exact_on_submodule_sequences(ws, m, rng):
    C = G if m == 0 else quotient_lattice(Z, [Z(m)])
    M = free(ws)
    # random homogeneous vectors span a graded submodule K
    K_vecs = []
    for i in range(M.dim):
        if rng.random() < 0.5:
            v = [0] * M.dim
            for j in range(M.dim):
                if M.weights[j] == M.weights[i]:
                    v[j] = rng.randint(-2, 2)
            if any(v):
                K_vecs.append(v)
    Q, proj = quotient(M, K_vecs)
    k = rank(K_vecs, QQ) if K_vecs else 0
    kC = rank([reynolds(M, v, C) for v in K_vecs], QQ) if K_vecs else 0
    # dim M^C = dim K^C + dim Q^C and the induced map on fixed parts is onto
    assert fixed_part(M, C).dim == kC + fixed_part(Q, C).dim
    assert map_rank(proj.on_fixed(C)) == fixed_part(Q, C).dim
    assert Q.dim == M.dim - k


@settings(max_examples=60, deadline=None)
@given(weights, st.sampled_from([0, 2, 3]))
def test_equalizer_oracle_matches_degree_zero_part(ws, m):
    C = G if m == 0 else quotient_lattice(Z, [Z(m)])
    M = free(ws)
    ker = equalizer_fixed_space(M, C, _identity(M.dim))
    assert len(ker) == fixed_part(M, C).dim
    support = {i for v in ker for i, c in enumerate(v) if c}
    assert support == {i for i, w in enumerate(M.weights) if C.apply(w).is_zero()}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(0, 3)), min_size=1, max_size=5))
def test_coaction_element_is_invariant(ws):
    L = CharacterLattice(1, (4,))
    M = FreeComodule.from_weights(L, [L(a, b) for a, b in ws], QQ)
    for i in range(M.dim):
        for (g, j), c in M.coaction(M.basis_vector(i)).items():
            # e_{-d} (x) m has total degree 0
            assert (-g + M.weights[j]).is_zero()


def test_graded_map_rejects_degree_change():
    with pytest.raises(InputError):
        GradedMap(free([1]), free([2]), [[1]])


def test_algebra_fixed_part_needs_bound():
    S = PolyRing(QQ, ["x", "y"])
    A = AlgebraComodule(Grading(Z, (Z(1), Z(-1))), Ideal(S, ["x*y - 1"]))
    with pytest.raises(InputError):
        fixed_part(A, G)
    F = fixed_part(A, G, max_degree=2)
    assert all(w.is_zero() for w in F.weights)
