import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from netlts.exact import (
    InputError,
    Matrix,
    canonical_pair,
    format_rational,
    iter_shuffles,
    nullspace,
    permutation_sign,
    rank,
    rref,
    shuffle_count,
    shuffles,
    span_basis,
    to_rational,
    wedge_basis,
    wedge_coefficients,
)

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    ).map(Matrix.from_rows)


@pytest.mark.parametrize("text, value", [
    ("2/4", Fraction(1, 2)), ("-3", Fraction(-3)), ("0/7", Fraction(0)), (" 5/10 ", Fraction(1, 2)), (3, Fraction(3)),
])
def test_rational_parsing(text, value):
    assert to_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", 1.5, True, None, "1/2/3"])
def test_rational_rejects(bad):
    with pytest.raises(InputError):
        to_rational(bad)


def test_format_is_normalized():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"


def test_matrix_basics():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    assert A.shape == (2, 2)
    assert A.column(1) == (2, 4)
    assert A.apply([1, 1]) == (3, 7)
    assert (A @ A.inverse()) == Matrix.identity(2)
    assert A.transpose().entries == ((1, 3), (2, 4))
    assert (A - A).is_zero()
    assert A.to_strings() == [["1", "2"], ["3", "4"]]


def test_singular_inverse_raises():
    with pytest.raises(InputError):
        Matrix.from_rows([[1, 2], [2, 4]]).inverse()


def test_rref_known():
    R, pivots = rref(Matrix.from_rows([[2, 4, 2], [1, 2, 3]]))
    assert pivots == [0, 2] or tuple(pivots) == (0, 2)
    assert R.entries[0] == (1, 2, 0)


def test_span_basis_drops_dependents():
    basis = span_basis([[1, 0, 1], [2, 0, 2], [0, 1, 0]], 3)
    assert len(basis) == 2


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(M):
    assert rank(M) + len(nullspace(M)) == M.cols


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_nullspace_is_kernel(M):
    for v in nullspace(M):
        assert all(x == 0 for x in M.apply(v))


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    S = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in r] for r in M.entries])
    assert rank(M) == S.rank()


@settings(max_examples=40, deadline=None)
@given(matrices(rows=st.just(3), cols=st.just(3)))
def test_inverse_when_invertible(M):
    if rank(M) == 3:
        assert M @ M.inverse() == Matrix.identity(3)


def test_wedge_helpers():
    assert canonical_pair(2, 1) == (-1, (1, 2))
    assert canonical_pair(1, 1) is None
    assert wedge_basis(3) == [(0, 1), (0, 2), (1, 2)]
    # (e0 + e1) ^ e1 = e0 ^ e1
    assert wedge_coefficients({0: 1, 1: 1}, {1: 1}) == {(0, 1): 1}


@pytest.mark.parametrize("p, q", [(p, q) for p in range(7) for q in range(7 - p)])
def test_shuffle_counts_are_binomial(p, q):
    assert shuffle_count(p, q) == math.comb(p + q, p) == len(shuffles(p, q))


def test_shuffle_signs():
    got = [(s.first, s.second, s.sign) for s in iter_shuffles(1, 2)]
    assert got == [((0,), (1, 2), 1), ((1,), (0, 2), -1), ((2,), (0, 1), 1)]


@settings(max_examples=50, deadline=None)
@given(st.permutations(range(5)))
def test_permutation_sign_multiplicative(perm):
    inv = [perm.index(i) for i in range(5)]
    assert permutation_sign(perm) == permutation_sign(inv)
    assert permutation_sign(perm) in (1, -1)
