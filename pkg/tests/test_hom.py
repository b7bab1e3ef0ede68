import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matfact import (PrimeField, QQ, Ring, cone, identity, koszul_factorization, rank_one, shift,
                     stable_hom_dim, stable_hom_table, trivial_factorization)
from matfact.core import homotopy_solve, morphism, twist_by
from matfact.corpus import random_koszul
from matfact.errors import NotClosedError, RingMismatchError
from matfact.hom import HomSpace, is_null_homotopic, total_stable_hom_dim

import oracles

F101 = PrimeField(101)

# stable End/Hom of (x^i, x^{n-i}) over k[x]/(x^n), worked out by hand:
# for n = 2 the only object is (x, x) with End = k; for n = 3 the two objects
# (x, x^2) and (x^2, x) are shifts of each other and each Hom is k.
HAND_TABLES = {2: [[1]], 3: [[1, 1], [1, 1]]}


def a_family(n, field=F101):
    R = Ring(field, ["x"])
    x = R.var(0)
    return [rank_one(x**i, x**(n - i)) for i in range(1, n)]


@pytest.mark.parametrize("n", sorted(HAND_TABLES))
def test_hand_values_small_n(n):
    Es = a_family(n)
    got = [[total_stable_hom_dim(a, b, 0) for b in Es] for a in Es]
    assert got == HAND_TABLES[n]


@pytest.mark.parametrize("n", range(2, 7))
def test_a_series_table_matches_oracle(n):
    Es = a_family(n)
    window = (-8 * n, 8 * n)
    for i, a in enumerate(Es, 1):
        for j, b in enumerate(Es, 1):
            want = oracles.total_stable_hom(a, b, 0, window)
            assert want == min(i, j, n - i, n - j)
            assert total_stable_hom_dim(a, b, 0, window) == want


def test_table_reports_window_certification():
    E = a_family(4)[1]
    tab = stable_hom_table(E, E, "even")
    assert tab.lower_certified and tab.upper_edge_zero
    assert tab.total == 2


def test_per_degree_against_oracle_two_variables():
    R = Ring(F101, ["x", "y"])
    x, y = R.gens()
    K = koszul_factorization([x, y**2], [x**2, y])
    for p in (0, 1):
        for t in range(-8, 9):
            assert stable_hom_dim(K, K, p, t) == oracles.stable_hom_dim(K, K, p, t)


@given(st.integers(0, 10**9))
@settings(max_examples=12, deadline=None)
def test_random_koszul_per_degree_oracle(seed):
    E = random_koszul(random.Random(seed), max_vars=2)[0]
    rng = random.Random(seed)
    for _ in range(3):
        p, t = rng.randint(0, 1), rng.randint(-E.D, E.D)
        assert stable_hom_dim(E, E, p, t) == oracles.stable_hom_dim(E, E, p, t)


def test_trivial_factorization_is_zero():
    R = Ring(F101, ["x"])
    x = R.var(0)
    T = trivial_factorization(x**3)
    assert total_stable_hom_dim(T, T, 0) == 0
    assert homotopy_solve(identity(T)) is not None


def test_identity_of_x_x_not_null_homotopic():
    R = Ring(F101, ["x"])
    x = R.var(0)
    A = rank_one(x, x)
    assert homotopy_solve(identity(A)) is None
    assert not is_null_homotopic(identity(A))


def test_homotopy_solution_satisfies_dh_equals_f():
    from matfact.core import differential

    R = Ring(F101, ["x", "y"])
    x, y = R.gens()
    K = koszul_factorization([x, y], [x, y])
    I = identity(cone(identity(K)))
    h = homotopy_solve(I)
    assert h is not None
    assert differential(h) == I


def test_shift_swaps_parity():
    E = a_family(5)[1]
    assert total_stable_hom_dim(E, shift(E), 0) == total_stable_hom_dim(E, E, 1)


def test_twist_moves_internal_degree():
    E = a_family(4)[0]
    F = twist_by(E, 2)
    for t in range(-6, 7):
        assert stable_hom_dim(E, F, 0, t) == stable_hom_dim(E, E, 0, t - 2)


def test_weighted_over_q():
    R = Ring(QQ, ["x", "y"], [4, 3])
    x, y = R.gens()
    E = koszul_factorization([x, y], [x**2, y**3])
    for p in (0, 1):
        for t in range(-12, 13, 2):
            assert stable_hom_dim(E, E, p, t) == oracles.stable_hom_dim(E, E, p, t)


def test_mismatched_potentials():
    R = Ring(F101, ["x"])
    x = R.var(0)
    with pytest.raises(RingMismatchError):
        HomSpace(rank_one(x, x), rank_one(x, x**2))


def test_null_homotopic_needs_closed():
    R = Ring(F101, ["x"])
    x = R.var(0)
    A = rank_one(x, x)
    f = morphism(A, A, [[x]], [[R.zero()]], internal=2)
    with pytest.raises(NotClosedError):
        is_null_homotopic(f)
