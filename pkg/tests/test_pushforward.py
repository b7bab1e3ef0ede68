import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matfact import PolyMatrix, PrimeField, Ring, direct_sum, rank_one, shift, trivial_factorization, verify
from matfact.core import MatrixFactorization
from matfact.errors import HomogeneityError, RingMapError
from matfact.pushforward import FiniteRingMap, permutation_equivalent, pushforward_coker_check, restrict_scalars
from matfact.sing import coker_functor
from matfact.support import fiber_cohomology, fiber_complex

import oracles

F101 = PrimeField(101)


def square_map(weights=(1, 1)):
    Rx = Ring(F101, ["x"], [weights[0]])
    Rt = Ring(F101, ["t"], [weights[1]])
    t = Rt.var(0)
    return Rx, Rt, FiniteRingMap(Rx, Rt, [t**2], [Rt.one(), t])


def test_identity_map_is_identity():
    Rx = Ring(F101, ["x"])
    x = Rx.var(0)
    f = FiniteRingMap(Rx, Rx, [x], [Rx.one()])
    E = rank_one(x**2, x**3)
    assert restrict_scalars(E, f) == E


def test_t_t_pushes_to_rank_two():
    Rx, Rt, f = square_map()
    t, x = Rt.var(0), Rx.var(0)
    P = restrict_scalars(rank_one(t, t), f)
    want = PolyMatrix(Rx, [[0, x], [1, 0]])
    assert P.delta1 == want and P.delta0 == want
    assert P.potential == x
    assert verify(P).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family_verifies_and_cokernels_agree(n):
    Rx, Rt, f = square_map()
    t = Rt.var(0)
    for j in range(1, 2 * n):
        E = rank_one(t**j, t**(2 * n - j))
        P = restrict_scalars(E, f)
        assert verify(P).ok and P.rank0 == 2
        rep = pushforward_coker_check(E, f, 20, P)
        assert rep.ok, rep.to_dict()
        for d in range(0, 21):
            assert oracles.coker_hilbert(P, d) == oracles.coker_hilbert(E, 2 * d)


def test_coker_examples():
    Rx, Rt, f = square_map()
    t = Rt.var(0)
    for E, total in ((rank_one(t, t), 1), (rank_one(t**2, t**2), 2), (trivial_factorization(t**4), 0)):
        P = restrict_scalars(E, f)
        M = coker_functor(P)
        assert sum(M.hilbert(d) for d in range(-2, 21)) == total
        assert pushforward_coker_check(E, f).ok


def test_additivity_up_to_ordering():
    Rx, Rt, f = square_map()
    t = Rt.var(0)
    A, B = rank_one(t, t**3), rank_one(t**2, t**2)
    lhs = restrict_scalars(direct_sum(A, B), f)
    rhs = direct_sum(restrict_scalars(A, f), restrict_scalars(B, f))
    assert permutation_equivalent(lhs, rhs) is not None


def test_commutes_with_shift():
    Rx, Rt, f = square_map()
    t = Rt.var(0)
    E = rank_one(t, t**3)
    a, b = restrict_scalars(shift(E), f), shift(restrict_scalars(E, f))
    assert a.delta1 == b.delta1 and a.delta0 == b.delta0
    assert a.degrees0 == b.degrees0 and a.degrees1 == b.degrees1


def plane_map():
    Rxy = Ring(F101, ["x", "y"], [2, 1])
    Rty = Ring(F101, ["t", "y"], [1, 1])
    t, y = Rty.gens()
    return Rxy, Rty, FiniteRingMap(Rxy, Rty, [t**2, y], [Rty.one(), t])


@given(st.integers(1, 100))
@settings(max_examples=25, deadline=None)
def test_fibers_add_over_unramified_preimages(a):
    # over (x, y) = (a^2, a) the preimages are (a, a) and (-a, a)
    Rxy, Rty, f = plane_map()
    t, y = Rty.gens()
    for E in (rank_one(t**2 - y**2, t**2 - y**2), rank_one(t - y, (t + y) * (t**2 - y**2)),
              rank_one((t - y)**2, (t + y)**2)):
        P = restrict_scalars(E, f)
        assert verify(P).ok
        pushed = fiber_cohomology(fiber_complex(P, (a * a % 101, a)))
        parts = [fiber_cohomology(fiber_complex(E, (s, a))) for s in (a, 101 - a)]
        assert pushed == tuple(map(sum, zip(*parts)))


def test_fiber_sum_values():
    Rxy, Rty, f = plane_map()
    t, y = Rty.gens()
    E = rank_one(t - y, (t + y) * (t**2 - y**2))
    P = restrict_scalars(E, f)
    assert fiber_cohomology(fiber_complex(E, (3, 3))) == (1, 1)
    assert fiber_cohomology(fiber_complex(E, (98, 3))) == (0, 0)
    assert fiber_cohomology(fiber_complex(P, (9, 3))) == (1, 1)


def test_fiber_at_branch_point():
    Rx, Rt, f = square_map()
    t = Rt.var(0)
    E = rank_one(t, t**3)
    P = restrict_scalars(E, f)
    # the fiber of the pushforward at a ramified point is not a sum of point fibers
    assert fiber_cohomology(fiber_complex(P, (0,))) == (1, 1) == oracles.fiber_ranks(P, (0,))
    assert fiber_cohomology(fiber_complex(E, (0,))) == (1, 1)


def test_composition_matches_quartic_map():
    Rx = Ring(F101, ["x"], [4])
    Rt = Ring(F101, ["t"], [2])
    Ru = Ring(F101, ["u"], [1])
    t, u = Rt.var(0), Ru.var(0)
    f = FiniteRingMap(Rx, Rt, [t**2], [Rt.one(), t])
    g = FiniteRingMap(Rt, Ru, [u**2], [Ru.one(), u])
    h = FiniteRingMap(Rx, Ru, [u**4], [Ru.one(), u, u**2, u**3])
    gf = f.compose(g)
    for j in range(1, 8):
        E = rank_one(u**j, u**(8 - j))
        two_step = restrict_scalars(restrict_scalars(E, g), f)
        assert verify(two_step).ok
        assert restrict_scalars(E, gf) == two_step
        assert permutation_equivalent(two_step, restrict_scalars(E, h)) is not None


def test_non_free_basis_rejected():
    Rx, Rt, _ = square_map()
    t = Rt.var(0)
    with pytest.raises(RingMapError):
        FiniteRingMap(Rx, Rt, [t**2], [Rt.one()])
    with pytest.raises(RingMapError):
        FiniteRingMap(Rx, Rt, [t**2], [Rt.one(), t, t**2])


def test_potential_must_come_from_source():
    Rx, Rt, f = square_map()
    t = Rt.var(0)
    with pytest.raises(RingMapError):
        restrict_scalars(rank_one(t, t**2), f)


def test_fractional_degrees_rejected():
    Rx = Ring(F101, ["x"])
    Rt = Ring(F101, ["t"])
    t = Rt.var(0)
    f = FiniteRingMap(Rx, Rt, [t**2], [Rt.one(), t])
    E = MatrixFactorization(Rt, t**2, (1,), (3,), PolyMatrix(Rt, [[t]]), PolyMatrix(Rt, [[t]]))
    with pytest.raises(HomogeneityError):
        restrict_scalars(E, f)
