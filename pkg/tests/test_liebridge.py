import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import netlts.fixtures as fx
from netlts.actions import verify_coherent_action
from netlts.algebras import verify_lts
from netlts.embedding import net_check
from netlts.exact import InputError, Matrix
from netlts.liebridge import (
    LieActionTensor,
    lie_action_check,
    lie_net_check,
    lts_from_lie,
    theta_from_rho,
    transport_check,
    transported_context,
)
from netlts.verdict import VerificationError

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def test_lts_of_affine_algebra():
    lts = lts_from_lie(fx.affine_lie())
    assert lts.bracket.table == {(0, 1, 0): {1: -1}, (1, 0, 0): {1: 1}}
    assert verify_lts(lts.bracket).passed


def test_lts_of_heisenberg_is_abelian():
    # [[x, y], z] vanishes since [x, y] is central
    assert lts_from_lie(fx.heisenberg_lie()).bracket.table == {}


def test_theta_index_order():
    # rho(e1) = diag(1, 0), rho(e2) = E12 on a plane; the images do not commute
    A = Matrix.from_rows([[1, 0], [0, 0]])
    B = Matrix.from_rows([[0, 1], [0, 0]])
    rho = LieActionTensor(2, 2, {0: A, 1: B})
    assert lie_action_check(fx.affine_lie(), fx.abelian_lie(2), rho).passed
    act = theta_from_rho(fx.affine_lie(), fx.abelian_lie(2), rho)
    assert act.matrix(0, 1) == B @ A == Matrix.zeros(2, 2)
    assert act.matrix(1, 0) == A @ B == B


def test_theta_order_on_heisenberg_fixture():
    f = fx.lie_net_fixtures()[3]
    act = theta_from_rho(f.L, f.Lp, f.rho)
    for i, j in itertools.product(range(3), repeat=2):
        assert act.matrix(i, j) == f.rho.matrix(j) @ f.rho.matrix(i)


@pytest.mark.parametrize("fixture", fx.lie_net_fixtures(), ids=lambda f: f.name)
def test_fixture_transports(fixture):
    assert lie_action_check(fixture.L, fixture.Lp, fixture.rho).passed
    assert lie_net_check(fixture.L, fixture.Lp, fixture.rho, fixture.T).passed
    assert transport_check(fixture.L, fixture.Lp, fixture.rho, fixture.T).passed
    act = theta_from_rho(fixture.L, fixture.Lp, fixture.rho)
    assert verify_coherent_action(lts_from_lie(fixture.L), lts_from_lie(fixture.Lp), act).passed


def test_incoherent_lie_action():
    L, Lp = fx.affine_lie(), fx.abelian_lie(1)
    bad = LieActionTensor(2, 1, {0: [[1]], 1: [[1]]})
    assert lie_action_check(L, Lp, bad).failed() == ["hom"]
    # adjoint action of the affine algebra on itself fails coherence
    ad = LieActionTensor(2, 2, {i: L.bracket.ad(i) for i in range(2)})
    v = lie_action_check(L, L, ad)
    assert "6.1" in v.failed()
    with pytest.raises(VerificationError):
        theta_from_rho(L, L, ad)


def test_corrupted_map_stops_before_transport():
    f = fx.lie_net_fixtures()[0]
    T = Matrix.from_rows([[1], [1]])
    v = lie_net_check(f.L, f.Lp, f.rho, T)
    assert v.failed() == ["6.2"]
    with pytest.raises(VerificationError):
        transport_check(f.L, f.Lp, f.rho, T)


def test_zero_action_homomorphism_is_lts_homomorphism():
    f = fx.lie_net_fixtures()[1]
    ctx = transported_context(f.L, f.Lp, f.rho)
    assert not ctx.act.theta
    assert net_check(ctx, f.T).passed


def test_shape_errors():
    with pytest.raises(InputError):
        LieActionTensor(2, 1, {3: [[1]]})
    with pytest.raises(InputError):
        lie_net_check(fx.affine_lie(), fx.abelian_lie(1), fx.lambda_action(), Matrix.identity(2))


@settings(max_examples=30, deadline=None)
@given(small, small, small)
def test_affine_line_family(lam, s, t):
    # rho(e1) = lam on a line; every Lie-level net transports
    L, Lp = fx.affine_lie(), fx.abelian_lie(1)
    rho = fx.lambda_action(lam)
    T = Matrix.from_rows([[s], [t]])
    if lie_net_check(L, Lp, rho, T).passed:
        assert transport_check(L, Lp, rho, T).passed
