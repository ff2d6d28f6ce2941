from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from htower.exact import Echelon, RationalSampler, rank, rank_fraction_free, solve_coordinates

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=7, max_cols=7):
    return st.integers(1, max_cols).flatmap(lambda c: st.lists(st.lists(fractions, min_size=c, max_size=c), min_size=1, max_size=max_rows))


@given(matrices())
def test_two_rank_routes_agree(m):
    assert rank(m) == rank_fraction_free(m)


@given(matrices())
def test_rank_is_transpose_invariant(m):
    t = [list(col) for col in zip(*m)]
    assert rank(m) == rank(t)


@given(matrices(), st.integers(0, 10))
def test_rank_of_product_is_bounded(m, seed):
    s = RationalSampler(seed)
    cols = len(m[0])
    other = [s.vector(3) for _ in range(cols)]
    prod = [[sum(r[k] * other[k][j] for k in range(cols)) for j in range(3)] for r in m]
    assert rank(prod) <= min(rank(m), rank(other))


def test_sparse_and_dense_rows_agree():
    dense = [[0, 1, 2], [0, 2, 4], [1, 0, 0]]
    sparse = [{1: 1, 2: 2}, {1: 2, 2: 4}, {0: 1}]
    assert rank(dense) == rank(sparse) == 2


def test_echelon_membership():
    e = Echelon()
    assert e.add([1, 1, 0])
    assert not e.add([2, 2, 0])
    assert e.contains([Fraction(1, 2), Fraction(1, 2), 0])
    assert not e.contains([0, 0, 1])


def test_solve_coordinates():
    basis = [[1, 0, 1], [0, 1, 1]]
    assert solve_coordinates(basis, [2, 3, 5]) == [2, 3]
    assert solve_coordinates(basis, [0, 0, 1]) is None


def test_sampler_is_seeded():
    assert RationalSampler(7).vector(5) == RationalSampler(7).vector(5)
    assert all(RationalSampler(3).rational(nonzero=True) for _ in range(20))
