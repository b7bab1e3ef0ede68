"""Exact linear algebra: both elimination routes against the textbook oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matfact import PrimeField, QQ
from matfact import linalg
from matfact.linalg import SparseEchelon, matmul, nullspace, rank, solve, sparse_rank

import oracles

F101 = PrimeField(101)


def matrices(max_rows=24, max_cols=24, lo=0, hi=100):
    return st.integers(1, max_rows).flatmap(
        lambda n: st.integers(1, max_cols).flatmap(
            lambda m: st.lists(st.lists(st.integers(lo, hi), min_size=m, max_size=m), min_size=n, max_size=n)))


@pytest.fixture
def pure_python(monkeypatch):
    monkeypatch.setattr(linalg, "_use_flint", lambda *a: False)


@given(matrices())
@settings(max_examples=50, deadline=None)
def test_rank_gf_matches_oracle(rows):
    assert rank(rows, F101) == oracles.rank_mod(rows, 101)


@given(matrices(max_rows=40, max_cols=40))
@settings(max_examples=25, deadline=None)
def test_flint_and_python_routes_agree(rows):
    # the flint kernel and the hand-written elimination are independent routes
    fast = rank(rows, F101)
    saved = linalg._use_flint
    linalg._use_flint = lambda *a: False
    try:
        slow = rank(rows, F101)
    finally:
        linalg._use_flint = saved
    assert fast == slow


@given(matrices(max_rows=8, max_cols=8, lo=-6, hi=6))
@settings(max_examples=50, deadline=None)
def test_rank_q_matches_oracle(rows):
    assert rank(rows, QQ) == oracles.rank_mod(rows, 0)


@given(matrices(max_rows=12, max_cols=12))
@settings(max_examples=40, deadline=None)
def test_nullspace_is_kernel(rows):
    n = len(rows[0])
    K = nullspace(rows, F101, n)
    assert len(K) == n - oracles.rank_mod(rows, 101)
    for v in K:
        assert all(x % 101 == 0 for x in (sum(a * b for a, b in zip(r, v)) for r in rows))


@given(matrices(max_rows=10, max_cols=10), st.lists(st.integers(0, 100), min_size=10, max_size=10))
@settings(max_examples=40, deadline=None)
def test_solve_consistent(rows, x):
    n = len(rows[0])
    x = x[:n]
    rhs = [sum(a * b for a, b in zip(r, x)) % 101 for r in rows]
    sol = solve(rows, rhs, F101)
    assert sol.solvable
    got = [sum(a * b for a, b in zip(r, sol.particular)) % 101 for r in rows]
    assert got == rhs


def test_solve_inconsistent():
    sol = solve([[1, 1], [2, 2]], [1, 3], F101)
    assert not sol.solvable


def test_solve_rational():
    sol = solve([[2, 1], [1, 3]], [1, 0], QQ)
    assert sol.particular == [Fraction(3, 5), Fraction(-1, 5)]


@given(st.lists(st.dictionaries(st.integers(0, 29), st.integers(1, 100), max_size=6), max_size=30))
@settings(max_examples=50, deadline=None)
def test_sparse_rank_routes(vectors):
    dense = [[v.get(i, 0) for i in range(30)] for v in vectors]
    want = oracles.rank_mod(dense, 101) if dense else 0
    assert sparse_rank(vectors, F101, 30) == want
    ech = SparseEchelon(F101)
    for v in vectors:
        ech.add(v)
    assert len(ech) == want


def test_matmul():
    assert matmul([[1, 2]], [[3], [4]], F101) == [[11]]


def test_pure_python_rank_large(pure_python):
    rows = [[(i * j + i) % 101 for j in range(30)] for i in range(30)]
    assert rank(rows, F101) == oracles.rank_mod(rows, 101)
