import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matfact import PrimeField, QQ, Ring, cone, identity, koszul_factorization, rank_one, stable_hom_dim
from matfact.core import trivial_factorization
from matfact.equivariant import (EquivariantHom, EquivariantMF, GroupData, character_sum_rule_check,
                                 equivariant_cone, equivariant_hom_dims, equivariant_pullback, equivariant_shift,
                                 morphism_violations, pull_character, quotient_correspondence_check,
                                 twist_weights, verify_equivariant)
from matfact.errors import GroupDataError

import oracles


def z2_x2(field=PrimeField(101)):
    R = Ring(field, ["x"])
    x = R.var(0)
    return R, x, GroupData((2,), ((1,),), (0,))


def z3_x3():
    R = Ring(PrimeField(7), ["x"])
    x = R.var(0)
    return R, x, GroupData((3,), ((1,),), (0,))


def z3_pair():
    R, x, G = z3_x3()
    E = EquivariantMF(rank_one(x, x**2), G, ((0,),), ((1,),))
    F = EquivariantMF(rank_one(x**2, x), G, ((0,),), ((2,),))
    return E, F


def z2xz2_koszul():
    R = Ring(PrimeField(5), ["x", "y"])
    x, y = R.gens()
    G = GroupData((2, 2), ((1, 0), (0, 1)), (0, 0))
    K = koszul_factorization([x, y], [x, y])
    return EquivariantMF(K, G, ((0, 0), (1, 1)), ((1, 0), (0, 1)))


def test_z2_x_x_weights():
    R, x, G = z2_x2()
    good = EquivariantMF(rank_one(x, x), G, ((0,),), ((1,),))
    assert verify_equivariant(good).ok
    bad = EquivariantMF(rank_one(x, x), G, ((0,),), ((0,),))
    rep = verify_equivariant(bad)
    assert not rep.ok
    assert {v.matrix for v in rep.violations} == {"delta1", "delta0"}


def test_z3_example_over_f7():
    E, F = z3_pair()
    assert verify_equivariant(E).ok and verify_equivariant(F).ok
    # the stable End of (x, x^2) is one dimensional and invariant
    assert stable_hom_dim(E.base, E.base, 0, 0) == 1
    assert equivariant_hom_dims(E, E, 0, 0, 0) == 1


def test_group_needs_roots_of_unity():
    R = Ring(PrimeField(101), ["x"])
    x = R.var(0)
    with pytest.raises(GroupDataError):
        EquivariantMF(rank_one(x, x**2), GroupData((3,), ((1,),), (0,)), ((0,),), ((1,),))


def test_w_must_be_semi_invariant():
    R, x, _ = z2_x2()
    with pytest.raises(GroupDataError):
        EquivariantMF(rank_one(x, x**2), GroupData((2,), ((1,),), (0,)), ((0,),), ((1,),))


def test_characteristic_dividing_order():
    R = Ring(PrimeField(2), ["x"])
    x = R.var(0)
    with pytest.raises(GroupDataError):
        GroupData((2,), ((1,),), (0,)).validate(R, x**2)


def test_rationals_allow_order_two():
    R, x, G = z2_x2(QQ)
    E = EquivariantMF(rank_one(x, x), G, ((0,),), ((1,),))
    assert verify_equivariant(E).ok
    assert character_sum_rule_check(E, E).ok


def test_trivial_group_matches_plain_hom():
    R = Ring(PrimeField(101), ["x", "y"])
    x, y = R.gens()
    K = koszul_factorization([x, y**2], [x**2, y])
    G = GroupData.trivial(2)
    E = EquivariantMF(K, G, ((),) * 2, ((),) * 2)
    for p in (0, 1):
        for t in range(-6, 7):
            assert equivariant_hom_dims(E, E, p, 0, t) == stable_hom_dim(K, K, p, t)


@pytest.mark.parametrize("make", [z3_pair, lambda: (z2xz2_koszul(), z2xz2_koszul())])
def test_sum_rule_and_commutation(make):
    E, F = make()
    for a, b in ((E, F), (F, E), (E, E)):
        rep = character_sum_rule_check(a, b, degrees=(-1, 0, 1, 2))
        assert rep.ok, rep.to_dict()
        assert rep.checked > 0


@pytest.mark.parametrize("make", [z3_pair, lambda: (z2xz2_koszul(), z2xz2_koszul())])
def test_invariant_dims_match_oracle(make):
    E, F = make()
    H = EquivariantHom(E, F)
    for degree in (0, 1, 2):
        for t in range(-E.base.D, E.base.D + 1):
            for psi in E.group.characters():
                want = oracles.invariant_hom_dim(E, F, degree, t, psi)
                assert H.cohomology_dim(degree, t, psi, "average") == want
                assert H.cohomology_dim(degree, t, psi, "select") == want


def test_averaging_is_idempotent_projector():
    E, F = z3_pair()
    H = EquivariantHom(E, F)
    for t in range(-6, 7):
        for psi in E.group.characters():
            diag = H.averaging_diagonal(0, t, psi)
            assert all(a in (0, 1) for a in diag)
            assert H.averaging_commutes(0, t, psi) and H.averaging_commutes(1, t, psi)


def test_quotient_correspondence():
    E, F = z3_pair()
    assert quotient_correspondence_check(E).ok
    assert quotient_correspondence_check(E, F).ok
    K = z2xz2_koszul()
    assert quotient_correspondence_check(K).ok


def test_contractible_object_has_zero_invariant_hom():
    R, x, G = z3_x3()
    T = EquivariantMF(trivial_factorization(x**3), G, ((0,),), ((0,),))
    assert verify_equivariant(T).ok
    rep = quotient_correspondence_check(T)
    assert rep.ok and all(r[3] == 0 and r[4] == 0 for r in rep.rows)


def test_shift_and_cone_preserve_equivariance():
    E, _ = z3_pair()
    S = equivariant_shift(E)
    assert verify_equivariant(S).ok
    assert verify_equivariant(equivariant_shift(S)).ok
    f = identity(E.base)
    assert not morphism_violations(f, E, E)
    C = equivariant_cone(f, E, E)
    assert verify_equivariant(C).ok
    K = z2xz2_koszul()
    assert verify_equivariant(equivariant_cone(identity(K.base), K, K)).ok


@given(st.integers(0, 2))
def test_twist_preserves_equivariance(psi):
    E, _ = z3_pair()
    assert verify_equivariant(twist_weights(E, psi)).ok


def test_twist_moves_isotypic_components():
    E, F = z3_pair()
    H = EquivariantHom(E, F)
    Ht = EquivariantHom(E, twist_weights(F, 1))
    for t in range(-6, 7):
        for psi in range(3):
            assert Ht.cohomology_dim(0, t, psi) == H.cohomology_dim(0, t, (psi + 1) % 3)


def test_pullback_identity():
    E, _ = z3_pair()
    R = E.base.ring
    P = equivariant_pullback(E, [R.var(0)], E.group, [[1]])
    assert P == E


def test_pullback_z6_to_z3():
    E, _ = z3_pair()
    G6 = GroupData((6,), ((2,),), (0,))
    R = E.base.ring
    P = equivariant_pullback(E, [R.var(0)], G6, [[1]])
    assert P.weights0 == ((0,),) and P.weights1 == ((2,),)
    assert verify_equivariant(P).ok
    assert pull_character((1,), E.group, G6, [[1]]) == (2,)


def test_pullback_restriction_z2_in_z4():
    R = Ring(PrimeField(5), ["x"])
    x = R.var(0)
    G4 = GroupData((4,), ((1,),), (0,))
    E = EquivariantMF(rank_one(x, x**3), G4, ((0,),), ((1,),))
    assert verify_equivariant(E).ok
    G2 = GroupData((2,), ((1,),), (0,))
    P = equivariant_pullback(E, [x], G2, [[2]])
    assert verify_equivariant(P).ok
    assert P.weights1 == ((1,),)


def test_pullback_rejects_non_homomorphism():
    E, _ = z3_pair()
    G2 = GroupData((2,), ((1,),), (0,))
    with pytest.raises(GroupDataError):
        equivariant_pullback(E, [E.base.ring.var(0)], G2, [[1]])


def test_pullback_rejects_non_intertwining():
    E, _ = z3_pair()
    G6 = GroupData((6,), ((1,),), (0,))
    R = E.base.ring
    with pytest.raises(GroupDataError):
        equivariant_pullback(E, [R.var(0)], G6, [[1]])


def test_cone_of_non_invariant_morphism_rejected():
    R, x, G = z2_x2()
    E = EquivariantMF(rank_one(x, x), G, ((0,),), ((1,),))
    F = EquivariantMF(rank_one(x, x), G, ((1,),), ((0,),))
    with pytest.raises(GroupDataError):
        equivariant_cone(identity(E.base), E, F)
    assert cone(identity(E.base))
