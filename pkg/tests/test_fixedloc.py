import itertools
import random

import pytest

from equiloc.errors import InputError, NonHomogeneousIdeal
from equiloc.fixedloc import (
    EquivariantAffineScheme,
    EquivariantSection,
    admissible,
    admissible_fields,
    coaction_fixed_ideal,
    concentration_section,
    fixed_locus_ideal,
    fixed_points_oracle,
    sigma_G,
    vanishing_set,
    zero_locus,
)
from equiloc.lattice import Representation, SubgroupPresentation
from equiloc.polyalg import Ideal, ideal_equal, ideal_member

from instances import GM, MU3, MU5, fixed_locus_suite, scheme

whole = SubgroupPresentation.whole


def test_fixed_locus_examples():
    X = scheme(GM, "xy", [1, 0])
    assert fixed_locus_ideal(X, whole(GM)).groebner_basis() == [X.ring("x")]
    H = scheme(GM, "xy", [1, -1], ["x*y - 1"])
    assert fixed_locus_ideal(H, whole(GM)).is_unit()
    for lat in (MU3, MU5):
        Y = scheme(lat, "xy", [0, 1])
        assert fixed_locus_ideal(Y, whole(lat)).groebner_basis() == [Y.ring("y")]


def test_nonhomogeneous_presentation_rejected():
    with pytest.raises(NonHomogeneousIdeal):
        scheme(GM, "xy", [1, 0], ["x + y"])


def test_sigma_examples():
    X = scheme(MU3, "x", [1])
    C = whole(MU3)
    assert sigma_G(X, C, X.ring("x")) == [(MU3(-1), X.ring("x"))]
    assert sigma_G(X, C, X.ring("x^3")) == []
    assert sigma_G(X, C, X.ring("1 + x")) == [(MU3(-1), X.ring("x"))]


def test_sigma_summands_have_total_degree_zero():
    rng = random.Random(5)
    for label, X, C in fixed_locus_suite():
        for _ in range(5):
            f = X.ring.zero
            for _ in range(3):
                e = tuple(rng.randint(0, 2) for _ in range(X.ring.nvars))
                f = f + X.ring.monomial(e, rng.randint(-2, 2))
            for g, a in sigma_G(X, C, f):
                for m in a.terms:
                    assert C.apply(g + X.grading.degree(m)).is_zero(), label
                    assert not C.apply(X.grading.degree(m)).is_zero()


def test_concentration_section_examples():
    X = scheme(GM, "xy", [1, 2])
    V, s = concentration_section(X, whole(GM))
    assert list(V) == [GM(-1), GM(-2)]
    assert s.components == (X.ring("x"), X.ring("y"))
    assert zero_locus(s).equals(Ideal(X.ring, ["x", "y"]))
    Y = scheme(MU5, "xy", [0, 3])
    V, s = concentration_section(Y, whole(MU5))
    assert list(V) == [MU5(-3)] and s.components == (Y.ring("y"),)
    H = scheme(GM, "xy", [1, -1], ["x*y - 1"])
    V, s = concentration_section(H, whole(GM))
    assert list(V) == [GM(-1), GM(1)]
    assert zero_locus(s).is_unit()


def test_minimized_section_keeps_fewer_coordinates():
    H = scheme(GM, "xy", [1, -1], ["x*y - 1"])
    V, s = concentration_section(H, whole(GM), minimize=True)
    assert len(V) == 1 and zero_locus(s).is_unit()


def test_zero_locus_examples():
    A1 = scheme(GM, "x", [1])
    s = EquivariantSection(A1, Representation(GM, (GM(-1),)), ("x",))
    assert zero_locus(s).equals(Ideal(A1.ring, ["x"]))
    H = scheme(GM, "xy", [1, -1], ["x*y - 1"])
    empty = EquivariantSection(H, Representation(GM, ()), ())
    assert zero_locus(empty).equals(H.ideal)
    s2 = EquivariantSection(A1, Representation(GM, (GM(-2), GM(-1))), ("x^2", "x"))
    assert zero_locus(s2).equals(Ideal(A1.ring, ["x"]))


def test_section_degree_is_checked():
    A1 = scheme(GM, "x", [1])
    with pytest.raises(InputError):
        EquivariantSection(A1, Representation(GM, (GM(1),)), ("x",))


def test_oracle_examples():
    A1 = scheme(MU3, "x", [1])
    assert fixed_points_oracle(A1, whole(MU3), 7) == {(0,)}
    H = scheme(GM, "xy", [1, -1], ["x*y - 1"])
    assert fixed_points_oracle(H, whole(GM), 5) == set()
    A2 = scheme(MU3, "xy", [0, 1])
    assert fixed_points_oracle(A2, whole(MU3), 7) == {(a, 0) for a in range(7)}


def test_inadmissible_fields_are_refused():
    A1 = scheme(MU3, "x", [1])
    assert not admissible(A1, whole(MU3), 5)  # no cube roots of unity
    with pytest.raises(InputError):
        fixed_points_oracle(A1, whole(MU3), 5)
    W = scheme(GM, "x", [2])
    assert not admissible(W, whole(GM), 3)  # a^2 = 1 on GF(3)^*
    assert admissible(W, whole(GM), 4)


@pytest.mark.parametrize("label,X,C", fixed_locus_suite(), ids=[t[0] for t in fixed_locus_suite()])
def test_oracle_agreement_on_suite(label, X, C):
    I = fixed_locus_ideal(X, C)
    qs = admissible_fields(X, C)
    assert len(qs) == 2
    for q in qs:
        assert vanishing_set(I, q) == fixed_points_oracle(X, C, q)
    assert coaction_fixed_ideal(X, C, max_degree=2).equals(I)


@pytest.mark.parametrize("label,X,C", fixed_locus_suite(), ids=[t[0] for t in fixed_locus_suite()])
def test_any_section_vanishes_on_fixed_locus(label, X, C):
    rng = random.Random(label)
    target = fixed_locus_ideal(X, C)
    monos = [e for e in itertools.product(range(3), repeat=X.ring.nvars)]
    chars, comps = [], []
    for e in rng.sample(monos, min(6, len(monos))):
        d = X.grading.degree(e)
        if C.apply(d).is_zero():
            continue
        chars.append(-d)
        comps.append(X.ring.monomial(e, rng.randint(1, 3)))
    V = Representation(X.lattice, tuple(chars))
    assert V.has_no_fixed_part(C)
    s = EquivariantSection(X, V, tuple(comps))
    for g in zero_locus(s).generators:
        assert ideal_member(g, target)


def test_zero_loci_pull_back():
    # f: k[x, y] -> k[t], x -> t, y -> t^2 is equivariant for weights (1, 2) and (1)
    X = scheme(GM, "xy", [1, 2])
    Y = scheme(GM, "t", [1])
    images = {0: Y.ring("t"), 1: Y.ring("t^2")}
    V, s = concentration_section(X, whole(GM))
    pulled = EquivariantSection(Y, V, tuple(c.substitute(images, Y.ring) for c in s.components))
    ZY = zero_locus(pulled)
    for g in zero_locus(s).generators:
        assert ideal_member(g.substitute(images, Y.ring), ZY)


def test_normal_weights_are_moved():
    for label, X, C in fixed_locus_suite():
        if not X.ideal.is_zero():
            continue
        fixed_vars = {i for i in range(X.ring.nvars) if X.ring.gens[i] not in fixed_locus_ideal(X, C)}
        for i in range(X.ring.nvars):
            if i not in fixed_vars:
                assert not C.apply(X.weights[i]).is_zero(), label


def test_section_certificate_on_suite():
    for label, X, C in fixed_locus_suite():
        V, s = concentration_section(X, C)
        assert ideal_equal(zero_locus(s), fixed_locus_ideal(X, C)), label
        assert V.has_no_fixed_part(C)
        for comp, chi in zip(s.components, V):
            assert not s.component_degrees(comp, chi)
