import random
import warnings

import pytest

from equiloc.eqcoh import (
    EquivariantPointRing,
    LocalizedClass,
    ProjectiveModelRing,
    bott_pushforward,
    concentration_check,
    euler_class,
    fixed_components,
    in_EC,
    in_EC_character,
    interpolation_sum,
    localize_eq,
    presentation_pushforward,
)
from equiloc.errors import DegenerateLocalization, InputError, NotFactored, NotInEC
from equiloc.polyalg import GF
from equiloc.lattice import CharacterLattice, Representation, SubgroupPresentation, quotient_lattice

from instances import GM, model_suite

whole = SubgroupPresentation.whole


def mu(p, n=1):
    return CharacterLattice(0, (p,) * n)


def test_euler_class_examples():
    L = mu(3)
    R = EquivariantPointRing(L)
    assert euler_class([L(1)], R) == R.v()
    assert euler_class([L(0)], R) == R.zero
    L5 = mu(5)
    R5 = EquivariantPointRing(L5)
    assert euler_class([L5(2)], R5) == R5.v() * 2


def test_euler_of_square_character_from_fixed_points():
    L = mu(5)
    R = EquivariantPointRing(L)
    P = ProjectiveModelRing(R, [L(0), L(2)])
    a, b = fixed_components(P, whole(L))
    za, zb = a.restrict(P.zeta()).coeffs[0], b.restrict(P.zeta()).coeffs[0]
    assert za - zb == R.v() * 2


def test_in_EC_examples():
    for p in (3, 5):
        L = mu(p)
        R = EquivariantPointRing(L)
        assert in_EC(R.v(), whole(L))
    T = CharacterLattice(2)
    R = EquivariantPointRing(T)
    second = quotient_lattice(T, [T(1, 0)])
    assert not in_EC(R.t(0), second)
    for p, expected in ((3, True), (5, True), (2, False)):
        L = mu(p, 2)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            R = EquivariantPointRing(L)
        diagonal = quotient_lattice(L, [L(1, -1)])
        assert bool(in_EC(R.v(0) + R.v(1), diagonal)) is expected


def test_in_EC_rejects_zero_and_unfactored():
    L = mu(3)
    R = EquivariantPointRing(L)
    with pytest.raises(NotFactored):
        in_EC(R.euler(L(0)), whole(L))
    # over GF(3) the character 3 of Gm has Euler class 3t = 0
    Rt = EquivariantPointRing(GM, field=GF(3))
    assert not in_EC_character(Rt, GM(3), whole(GM))
    assert in_EC_character(Rt, GM(1), whole(GM))
    with pytest.raises(NotFactored):
        in_EC(R.v() ** 2 + R.v(), whole(L))
    with pytest.raises(NotFactored):
        in_EC(R.zero, whole(L))


def test_localize_eq_examples():
    L = mu(3, 2)
    R = EquivariantPointRing(L)
    v = R.v(0)
    e1, e2 = L(1, 0), L(0, 1)
    assert localize_eq(LocalizedClass(v, [e1]), LocalizedClass(R.one))
    assert localize_eq(LocalizedClass(R.one, [e1]), LocalizedClass(v, [e1, e1]))
    assert not localize_eq(LocalizedClass(R.one, [e1]), LocalizedClass(R.one, [e2]))


def test_zero_denominator_is_degenerate():
    L = mu(3)
    R = EquivariantPointRing(L)
    with pytest.raises(DegenerateLocalization):
        LocalizedClass(R.one, [L(0)])


def test_denominators_checked_against_subgroup():
    T = CharacterLattice(2)
    R = EquivariantPointRing(T)
    second = quotient_lattice(T, [T(1, 0)])
    with pytest.raises(NotInEC):
        localize_eq(LocalizedClass(R.one, [T(1, 0)]), LocalizedClass(R.one, [T(1, 0)]), second)


def test_fixed_components_examples():
    L = mu(3)
    R = EquivariantPointRing(L)
    comps = fixed_components(ProjectiveModelRing(R, [L(0), L(1)]), whole(L))
    assert [c.normal_weights for c in comps] == [(L(1),), (L(-1),)]
    (line,) = fixed_components(ProjectiveModelRing(R, [L(1), L(1)]), whole(L))
    assert line.members == (0, 1) and line.normal_weights == ()
    L5 = mu(5)
    R5 = EquivariantPointRing(L5)
    comps = fixed_components(ProjectiveModelRing(R5, [L5(0), L5(1), L5(2)]), whole(L5))
    assert [set(c.normal_weights) for c in comps] == [
        {L5(1), L5(2)},
        {L5(-1), L5(1)},
        {L5(-2), L5(-1)},
    ]


def test_bott_examples():
    R = EquivariantPointRing(GM)
    P = ProjectiveModelRing(R, [GM(0), GM(1)])
    assert bott_pushforward(P.one, whole(GM)) == 0
    assert bott_pushforward(P.zeta(), whole(GM)) == 1
    assert interpolation_sum(P, whole(GM)) == 1


def test_concentration_examples():
    R = EquivariantPointRing(GM)
    rep = concentration_check(ProjectiveModelRing(R, [GM(0), GM(1)]), whole(GM))
    assert rep.ok and rep.factors == [GM(1)] and rep.unit in (1, -1)
    rep = concentration_check(ProjectiveModelRing(R, [GM(1), GM(1)]), whole(GM))
    assert rep.ok and rep.factors == [] and rep.unit == 1
    L5 = mu(5)
    rep = concentration_check(ProjectiveModelRing(EquivariantPointRing(L5), [L5(0), L5(1), L5(2)]), whole(L5))
    assert rep.ok and len(rep.factors) == 3
    assert all(not f.is_zero() for f in rep.factors)


def test_concentration_fails_when_weights_collapse():
    # restricted to the trivial subgroup every weight lands in one component: nothing is inverted
    R = EquivariantPointRing(GM)
    P = ProjectiveModelRing(R, [GM(0), GM(1)])
    rep = concentration_check(P, SubgroupPresentation.trivial(GM))
    assert rep.factors == [] and len(rep.components) == 1


@pytest.mark.parametrize("label,P,C", model_suite(), ids=[m[0] for m in model_suite()])
def test_bott_matches_presentation(label, P, C):
    for k in range(P.n + 4):
        x = P.zeta(k)
        assert bott_pushforward(x, C) == presentation_pushforward(x), (label, k)
    assert interpolation_sum(P, C) == 1
    assert concentration_check(P, C).ok


def test_bott_on_mixed_basis_classes():
    R = EquivariantPointRing(CharacterLattice(2))
    T = R.lattice
    P = ProjectiveModelRing(R, [T(0, 0), T(1, 0), T(0, 1), T(1, 1)])
    C = whole(T)
    for k in range(P.n):
        x = P.zeta(k) * R.t(0) + P.zeta(k + 1) * R.t(1) ** 2
        b = bott_pushforward(x, C)
        assert b == presentation_pushforward(x)
        assert not b.simplify().denominator


def test_euler_multiplicative_and_degrees():
    rng = random.Random(2)
    with pytest.raises(InputError):
        EquivariantPointRing(CharacterLattice(0, (3, 5)))
    R = EquivariantPointRing(CharacterLattice(0, (3, 3)))
    L = R.lattice
    for _ in range(30):
        a = [L(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(0, 3))]
        b = [L(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(0, 3))]
        ea, eb = euler_class(a, R), euler_class(b, R)
        assert euler_class(a + b, R) == ea * eb
        if any(c.is_zero() for c in a):
            assert not ea
        elif ea:
            assert ea.bidegree() == (2 * len(a), len(a))


def test_p2_warning():
    with pytest.warns(UserWarning, match="p = 2"):
        EquivariantPointRing(mu(2))


def test_sign_rule_for_odd_classes():
    L = mu(3, 2)
    R = EquivariantPointRing(L)
    u1, u2 = R.u(0), R.u(1)
    assert u1 * u2 == -(u2 * u1)
    assert u1 * u1 == R.zero
    assert (u1 * u2).bidegree() == (2, 2)
    R2 = EquivariantPointRing(mu(3), u_square=1)
    assert R2.u() * R2.u() == R2.v()
