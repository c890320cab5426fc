import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import netlts.fixtures as fx
from netlts.cohomology import (
    coboundary_matrix,
    cochain_space_dim,
    cohomology_dims,
    compare_with_dT,
    delta_1_explicit,
    delta_n,
    induced_rep,
    partial0,
    regular_rep,
    verify_leibniz_rep,
)
from netlts.embedding import Net, NetContext
from netlts.exact import InputError, Matrix, nullspace, rank
from netlts.graded import Cochain, dT, random_cochain
from netlts.liebridge import lts_bracket_from_lie, transported_context

seeds = st.integers(0, 10**6)


def test_induced_rep_formulas(tstar):
    rep = induced_rep(tstar)
    # l(u, v, x) = [Tu, Tv, x]: [2 e1, 1/2 e2, e1] = e3
    assert rep.l({0: 1}, {1: 1}, {0: 1}) == {2: 1}
    assert verify_leibniz_rep(rep).passed
    assert set(verify_leibniz_rep(rep).checks) == {"4.1", "4.2", "4.3", "4.4", "4.5"}


def test_regular_rep_of_a_3leibniz_algebra():
    for b in (fx.l3_bracket(), lts_bracket_from_lie(fx.heisenberg_lie())):
        assert verify_leibniz_rep(regular_rep(b)).passed


def test_regular_rep_of_non_leibniz_bracket_fails():
    v = verify_leibniz_rep(regular_rep(fx.planted_non_lts()))
    assert not v.passed


def test_delta_one_matches_displayed_formula(tstar):
    rep = induced_rep(tstar)
    rng = random.Random(3)
    for _ in range(5):
        f = random_cochain(rng, 3, 3, 0)
        assert delta_n(rep, f) == delta_1_explicit(rep, f.to_matrix())


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_coboundary_squares_to_zero(seed):
    net = Net(NetContext(fx.l3(), fx.l3(), fx.l3_adjoint()), fx.t_star())
    rep = induced_rep(net)
    rng = random.Random(seed)
    f = random_cochain(rng, 3, 3, rng.choice([0, 1]), density=0.4)
    assert delta_n(rep, delta_n(rep, f)).is_zero()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_comparison_with_twisted_differential(seed):
    net = Net(NetContext(fx.l3(), fx.l3(), fx.l3_adjoint()), fx.t_star())
    rng = random.Random(seed)
    f = random_cochain(rng, 3, 3, rng.choice([0, 1]), density=0.4)
    v = compare_with_dT(net, f)
    assert v.passed
    assert v.checks["comparison"].evaluated > 0


def test_comparison_rejects_high_arity(tstar):
    with pytest.raises(InputError):
        compare_with_dT(tstar, Cochain(3, 3, 2))


def test_partial0_values(tstar):
    # I(e1, e2) sends e1 to -e3 and kills the rest
    assert partial0(tstar, (1, 0, 0), (0, 1, 0)) == fx.l3_nijenhuis_direction()
    assert partial0(tstar, (0, 0, 1), (1, 0, 0)).is_zero()


def test_cochain_space_dims(tstar):
    assert [cochain_space_dim(tstar, n) for n in range(4)] == [3, 9, 27, 81]


def test_coboundary_matrix_shapes(tstar):
    assert coboundary_matrix(tstar, 0).shape == (9, 3)
    assert coboundary_matrix(tstar, 1).shape == (27, 9)
    assert coboundary_matrix(tstar, 2).shape == (81, 27)


def test_cohomology_of_t_star(tstar):
    h1 = cohomology_dims(tstar, 1)
    assert h1.to_dict() == {"n": 1, "dimC": 9, "dimZ": 5, "dimB": 1, "dimH": 4, "degree0_kernel": 2}
    h2 = cohomology_dims(tstar, 2)
    assert (h2.dimC, h2.dimZ, h2.dimB, h2.dimH) == (27, 12, 4, 8)


def test_cocycles_are_kernel_vectors(tstar):
    rep = cohomology_dims(tstar, 1, with_cocycles=True)
    d1 = coboundary_matrix(tstar, 1)
    assert len(rep.cocycles) == rep.dimZ
    for v in rep.cocycles:
        assert all(x == 0 for x in d1.apply(v))


def test_degree_three_is_behind_a_flag(tstar):
    with pytest.raises(InputError):
        cohomology_dims(tstar, 3)
    with pytest.raises(InputError):
        cohomology_dims(tstar, 0)


def test_lie_bridge_complexes():
    for f in fx.lie_net_fixtures():
        net = Net(transported_context(f.L, f.Lp, f.rho), f.T)
        d0, d1, d2 = (coboundary_matrix(net, k) for k in range(3))
        assert (d1 @ d0).is_zero()
        assert (d2 @ d1).is_zero()
        for M in (d0, d1, d2):
            assert rank(M) + len(nullspace(M)) == M.cols
        rep = cohomology_dims(net, 1)
        assert rep.dimH >= 0


def test_shape_mismatch_in_delta(tstar):
    with pytest.raises(InputError):
        delta_n(induced_rep(tstar), Cochain.from_matrix(Matrix.identity(2)))


def test_coboundary_of_identity(tstar):
    # -2 e3 + e3 + 2 e3 + e3/2 at (e1, e2, e1)
    ident = Cochain.from_matrix(Matrix.identity(3))
    d1 = delta_n(induced_rep(tstar), ident)
    assert d1.value(((0, 1),), 0) == {2: Fraction(3, 2)}
    assert dT(tstar.ctx, tstar.T, ident).value(((0, 1),), 0) == {2: Fraction(3, 2)}
