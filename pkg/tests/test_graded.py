import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import netlts.fixtures as fx
from netlts.algebras import TriBracket
from netlts.embedding import NetContext, is_net
from netlts.exact import InputError, Matrix
from netlts.graded import (
    MAX_DEGREE,
    Cochain,
    bracket_3la,
    build_delta,
    circ,
    dT,
    fundamental_defect,
    graded_jacobi,
    include_F,
    l1,
    l2,
    l3,
    mc_oracle,
    mc_residual,
    project_P,
    random_cochain,
    twisted_l1,
    twisted_mc_residual,
)

seeds = st.integers(0, 10**6)
vals = st.sampled_from([Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)])
A = Matrix.from_rows([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
B = Matrix.from_rows([[0, 1, 0], [2, 0, 1], [1, 1, 1]])


def test_cochain_matrix_round_trip():
    f = Cochain.from_matrix(A)
    assert f.degree == 0 and f.arity == 1
    assert f.to_matrix() == A
    assert f.vector()[:3] == [1, 0, 1]


def test_cochain_antisymmetric_access():
    f = Cochain(3, 2, 1, {(((0, 1),), 2): {0: 5}})
    assert f.at([(1, 0)], 2) == {0: -5}
    assert f.at([(1, 1)], 2) == {}
    assert f(((1, 0, 0), (0, 1, 0)), (0, 0, 1)) == (5, 0)


def test_cochain_key_validation():
    with pytest.raises(InputError):
        Cochain(3, 3, 1, {(((1, 0),), 0): {0: 1}})
    with pytest.raises(InputError):
        Cochain(3, 3, MAX_DEGREE + 1)
    with pytest.raises(InputError):
        Cochain(3, 3, 0, {((), 0): {7: 1}})


def test_key_enumeration_is_lexicographic():
    keys = list(Cochain.zero(3, 3, 1).keys())
    assert len(keys) == 9
    assert keys[0] == (((0, 1),), 0)
    assert keys == sorted(keys)


def test_degree_zero_composition_is_matrix_product():
    assert circ(Cochain.from_matrix(A), Cochain.from_matrix(B)).to_matrix() == A @ B


def test_composition_degree_limit():
    big = Cochain(2, 2, 3)
    with pytest.raises(InputError):
        circ(big, Cochain(2, 2, 2))


def test_delta_squares_to_zero(l3ctx):
    delta = build_delta(l3ctx)
    assert delta.degree == 1 and delta.dim == 6
    assert bracket_3la(delta, delta).is_zero()
    assert fundamental_defect(delta).is_zero()


def test_self_composition_is_the_fundamental_defect():
    pi = Cochain.from_trilinear(2, fx.planted_non_lts().table)
    assert circ(pi, pi) == fundamental_defect(pi)
    assert not circ(pi, pi).is_zero()
    assert bracket_3la(pi, pi) == circ(pi, pi).scale(2)


def test_include_and_project(l3ctx):
    T = fx.t_star()
    hat = include_F(l3ctx, T)
    assert hat.value((), 3) == {0: 2}
    assert hat.value((), 0) == {}
    assert project_P(l3ctx, hat).to_matrix() == T


def test_mc_residual_of_t_star(l3ctx):
    assert mc_residual(l3ctx, fx.t_star()).is_zero()
    res = mc_residual(l3ctx, Matrix.identity(3))
    assert not res.is_zero()
    assert res == mc_oracle(l3ctx, Matrix.identity(3))


@settings(max_examples=40, deadline=None)
@given(st.lists(vals, min_size=9, max_size=9))
def test_mc_residual_matches_direct_formula(entries):
    ctx = NetContext(fx.l3(), fx.l3(), fx.l3_adjoint())
    T = fx.l3_matrix(*entries)
    res = mc_residual(ctx, T)
    assert res == mc_oracle(ctx, T)
    assert res.is_zero() == is_net(ctx, T)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_l2_vanishes_and_l3_is_symmetric(seed):
    ctx = NetContext(fx.l3(), fx.l3(), fx.l3_adjoint())
    rng = random.Random(seed)
    P, Q, R = (random_cochain(rng, 3, 3, 0, density=0.4) for _ in range(3))
    assert l2(ctx, P, Q).is_zero()
    x = l3(ctx, P, Q, R)
    assert x == l3(ctx, Q, P, R) == l3(ctx, P, R, Q)


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(0, 1))
def test_twisted_differential_squares_to_zero(seed, degree):
    ctx = NetContext(fx.l3(), fx.l3(), fx.l3_adjoint())
    rng = random.Random(seed)
    f = random_cochain(rng, 3, 3, degree, density=0.4)
    assert dT(ctx, fx.t_star(), dT(ctx, fx.t_star(), f)).is_zero()


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_graded_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    degs = rng.choice([(0, 0, 1), (0, 1, 1), (1, 1, 1), (0, 2, 1), (1, 1, 2), (0, 0, 0)])
    P, Q, R = (random_cochain(rng, 3, 3, d, density=0.3) for d in degs)
    sign = -1 if (P.degree * Q.degree) % 2 else 1
    assert bracket_3la(P, Q) == bracket_3la(Q, P).scale(-sign)
    assert graded_jacobi(P, Q, R).is_zero()


def test_twisted_mc_characterizes_perturbed_nets(l3ctx, grid_nets):
    Ts = fx.t_star()
    for S in grid_nets[:10]:
        assert twisted_mc_residual(l3ctx, Ts, S - Ts).is_zero()
    assert not twisted_mc_residual(l3ctx, Ts, Matrix.identity(3)).is_zero()


def test_twisting_requires_a_net(l3ctx):
    with pytest.raises(InputError):
        twisted_l1(l3ctx, Matrix.identity(3), Cochain.from_matrix(A))


def test_l1_of_matrix_and_cochain_agree(l3ctx):
    assert l1(l3ctx, A) == l1(l3ctx, Cochain.from_matrix(A))


def test_non_leibniz_delta_does_not_square_to_zero():
    pi = Cochain.from_trilinear(2, TriBracket(2, {(0, 1, 0): {0: 1}, (1, 0, 0): {0: -1}}).table)
    assert not bracket_3la(pi, pi).is_zero()


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_fourfold_derived_bracket_vanishes(seed):
    # Delta is cubic in the L' directions, so a fourth insertion leaves nothing
    ctx = NetContext(fx.l3(), fx.l3(), fx.l3_adjoint())
    rng = random.Random(seed)
    P, Q, R, S = (include_F(ctx, random_cochain(rng, 3, 3, 0, density=0.4)) for _ in range(4))
    x = bracket_3la(bracket_3la(bracket_3la(build_delta(ctx), P), Q), R)
    assert project_P(ctx, bracket_3la(x, S)).is_zero()
    assert bracket_3la(x, S).is_zero()


def test_identity_residual_value(l3ctx):
    res = mc_residual(l3ctx, Matrix.identity(3))
    assert res.value(((0, 1),), 0) == {2: -1}
