from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dixmier.linalg import (
    CoordinateSystem,
    Subspace,
    kernel_of_columns,
    matmul,
    nullspace,
    rank_fraction_free,
    rref,
    solve,
)
from dixmier.scalars import ONE, ZERO, GaussianRational
from oracles import sympy_rank

entries = st.builds(GaussianRational, st.fractions(-5, 5, max_denominator=4), st.fractions(-2, 2, max_denominator=3))


def matrices(rows, cols):
    return st.lists(st.lists(entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrices(r, c))))
def test_fraction_free_rank_matches_sympy(m):
    assert rank_fraction_free(m) == sympy_rank(m)
    _, pivots = rref(m)
    assert len(pivots) == rank_fraction_free(m)


@given(st.integers(1, 4).flatmap(lambda n: matrices(n, n + 1)))
def test_nullspace_is_kernel(m):
    for v in nullspace(m):
        assert all(not x for row in matmul(m, [[c] for c in v]) for x in row)
    assert len(nullspace(m)) == len(m[0]) - rank_fraction_free(m)


def test_rank_of_rank_deficient_integer_matrix():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank_fraction_free(m) == 2


def test_solve():
    m = [[2, 1], [1, 3]]
    x = solve(m, [3, 5])
    assert x == [GaussianRational(Fraction(4, 5)), GaussianRational(Fraction(7, 5))]
    with pytest.raises(ValueError):
        solve([[1, 2], [2, 4]], [1, 1])


def test_subspace_reduce_and_coords():
    s = Subspace([{"a": ONE, "b": ONE}, {"b": ONE}])
    assert s.dim == 2
    assert s.contains({"a": GaussianRational(3)})
    assert not s.contains({"c": ONE})
    assert not s.add({"a": ONE})
    with pytest.raises(ValueError):
        s.coords({"c": ONE})


def test_kernel_of_columns():
    cols = [{"u": ONE}, {"v": ONE}, {"u": ONE, "v": ONE}]
    (k,) = kernel_of_columns(cols)
    total = {}
    for i, c in k.items():
        for key, v in cols[i].items():
            total[key] = total.get(key, ZERO) + c * v
    assert not any(total.values())


def test_coordinate_system():
    cs = CoordinateSystem([{"a": ONE, "b": ONE}, {"b": GaussianRational(2)}])
    assert cs({"a": GaussianRational(3), "b": GaussianRational(7)}) == [GaussianRational(3), GaussianRational(2)]
    with pytest.raises(ValueError):
        cs({"c": ONE})
    with pytest.raises(ValueError):
        CoordinateSystem([{"a": ONE}, {"a": GaussianRational(2)}])
