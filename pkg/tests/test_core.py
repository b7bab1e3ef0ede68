import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matfact import (PolyMatrix, PrimeField, Ring, cone, direct_sum, identity, koszul_factorization, morphism,
                     pullback, rank_one, shift, trivial_factorization, verify)
from matfact.core import (MfMorphism, compose, differential, from_matrices, is_closed, tensor_sum_potentials,
                          twist_by, zero_morphism)
from matfact.corpus import random_koszul
from matfact.errors import FactorizationError, HomogeneityError, NotClosedError
from matfact.parsing import parse_poly

import oracles

F101 = PrimeField(101)
seeds = st.integers(0, 10**9)


def koszul_from(seed):
    return random_koszul(random.Random(seed))[0]


def test_rank_one_degrees():
    R = Ring(F101, ["x"])
    x = R.var(0)
    E = rank_one(x**2, x**3)
    assert (E.degrees0, E.degrees1) == ((0,), (4,))
    assert E.D == 10
    assert verify(E).ok


def test_verify_lists_every_bad_cell():
    R = Ring(F101, ["x", "y"])
    x, y = R.gens()
    good = koszul_factorization([x, y], [x, y])
    bad = good.with_matrices(delta0=good.delta0 + PolyMatrix(R, [[x * y, 0], [0, 0]]))
    rep = verify(bad)
    assert not rep.ok
    cells = {(v.matrix, v.cell) for v in rep.violations if v.kind == "composition"}
    assert ("delta1*delta0", (1, 1)) in cells and ("delta0*delta1", (1, 1)) in cells
    assert not oracles.verify_products(bad)


def test_verify_homogeneity():
    R = Ring(F101, ["x"])
    x = R.var(0)
    E = from_matrices(R, x**2, [[x]], [[x]], degrees0=(0,), degrees1=(4,))
    kinds = {v.kind for v in verify(E).violations}
    assert kinds == {"homogeneity"}


def test_inhomogeneous_rank_one_rejected():
    R = Ring(F101, ["x"])
    x = R.var(0)
    with pytest.raises(HomogeneityError):
        rank_one(x + x**2, x)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_random_koszul_verifies(seed):
    E = koszul_from(seed)
    assert verify(E).ok
    assert oracles.verify_products(E)
    assert E.rank0 == E.rank1


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_shift_twice_is_twist(seed):
    E = koszul_from(seed)
    S2 = shift(shift(E))
    assert verify(shift(E)).ok
    assert S2.delta1 == E.delta1 and S2.delta0 == E.delta0
    assert S2.degrees0 == twist_by(E, -E.D).degrees0
    assert S2.degrees1 == twist_by(E, -E.D).degrees1


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_cone_of_identity_verifies(seed):
    E = koszul_from(seed)
    C = cone(identity(E))
    assert verify(C).ok
    assert C.rank0 == E.rank0 + E.rank1


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_d_squared_zero_on_elementary_morphisms(seed):
    from matfact.hom import HomSpace

    E = koszul_from(seed)
    H = HomSpace(E, E)
    rng = random.Random(seed)
    p, u = rng.randint(0, 1), rng.randint(0, E.D)
    for f in H.basis_morphisms(p, u)[:6]:
        assert differential(differential(f)).is_zero()


def test_cone_rejects_open_morphism():
    R = Ring(F101, ["x"])
    x = R.var(0)
    A = rank_one(x, x)
    f = morphism(A, A, [[x]], [[R.zero()]], internal=2)
    assert not is_closed(f)
    with pytest.raises((NotClosedError, ValueError)):
        cone(f)


def test_compose_identity():
    R = Ring(F101, ["x", "y"])
    x, y = R.gens()
    E = koszul_factorization([x, y], [x, y])
    I = identity(E)
    assert compose(I, I) == I
    assert is_closed(I)


def test_tensor_sum_is_koszul():
    R = Ring(F101, ["x", "y"])
    x, y = R.gens()
    K = tensor_sum_potentials(rank_one(x, x), rank_one(y, y))
    assert K.potential == x**2 + y**2
    assert verify(K).ok
    assert K.rank0 == 2


def test_direct_sum_and_trivial():
    R = Ring(F101, ["x"])
    x = R.var(0)
    E = rank_one(x, x**2)
    T = trivial_factorization(x**3)
    S = direct_sum(E, T)
    assert verify(S).ok and S.rank0 == 2
    with pytest.raises(FactorizationError):
        direct_sum(E, rank_one(x, x))


def test_pullback_substitution():
    R = Ring(F101, ["x"])
    T = Ring(F101, ["t"])
    x, t = R.var(0), T.var(0)
    E = rank_one(x, x**2)
    P = pullback(E, {"x": t**2})
    assert P.potential == t**6
    assert P.delta1 == PolyMatrix(T, [[t**2]])
    assert (P.degrees0, P.degrees1) == ((0,), (4,))
    assert verify(P).ok


def test_pullback_nonuniform_ratio():
    R = Ring(F101, ["x", "y"])
    T = Ring(F101, ["t"])
    t = T.var(0)
    x, y = R.gens()
    with pytest.raises(HomogeneityError):
        pullback(koszul_factorization([x, y], [x, y]), [t, t**2])


def test_zero_morphism_closed():
    R = Ring(F101, ["x"])
    x = R.var(0)
    E = rank_one(x, x)
    assert is_closed(zero_morphism(E, E))
    assert isinstance(identity(E), MfMorphism)


def test_parse_potential_matches():
    R = Ring(F101, ["x", "y"])
    x, y = R.gens()
    assert parse_poly("x^2 + y^2", R) == koszul_factorization([x, y], [x, y]).potential
