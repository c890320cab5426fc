import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import netlts.fixtures as fx
from netlts.actions import (
    ActionTensor,
    d_theta,
    hemisemidirect,
    hemisemidirect_bracket,
    verify_coherent_action,
    verify_representation,
)
from netlts.algebras import verify_3leibniz, verify_lts
from netlts.exact import InputError, Matrix
from netlts.liebridge import lts_from_lie
from netlts.verdict import VerificationError


def test_adjoint_convention():
    # theta(x, y) z = [z, x, y]
    act = fx.l3_adjoint()
    assert act.apply({1: 1}, {0: 1}, {0: 1}) == {2: 1}
    assert act.apply({0: 1}, {0: 1}, {1: 1}) == {2: -1}


def test_d_theta_is_difference():
    act = fx.l3_adjoint()
    for i, j in itertools.product(range(3), repeat=2):
        assert d_theta(act, i, j) == act.matrix(j, i) - act.matrix(i, j)
        assert act.d_matrix(i, j) == d_theta(act, i, j)


def test_l3_adjoint_is_coherent():
    v = verify_coherent_action(fx.l3(), fx.l3(), fx.l3_adjoint())
    assert v.passed
    assert {"2.8", "2.9", "der", "2.10", "2.11"} <= set(v.checks)


def test_adjoint_representation_of_nonnilpotent_system():
    A = lts_from_lie(fx.affine_lie())
    act = ActionTensor.adjoint(A)
    assert verify_representation(A, act).passed
    v = verify_coherent_action(A, A, act)
    assert v.failed() == ["2.8", "2.9", "2.10"]
    assert v.witness is not None


def test_non_representation_sets_error():
    bad = ActionTensor(3, 3, {(0, 1): Matrix.identity(3)})
    v = verify_coherent_action(fx.l3(), fx.l3(), bad)
    assert not v.passed
    assert v.error == "not a representation"
    assert "2.4" in v.failed()


def test_zero_action_always_coherent():
    for L in (fx.l3(), lts_from_lie(fx.heisenberg_lie())):
        assert verify_coherent_action(L, L, ActionTensor.zero(L.dim, L.dim)).passed


def test_shape_errors():
    with pytest.raises(InputError):
        ActionTensor(2, 2, {(0, 3): Matrix.identity(2)})
    with pytest.raises(InputError):
        ActionTensor(2, 2, {(0, 1): Matrix.identity(3)})
    with pytest.raises(InputError):
        verify_coherent_action(fx.l3(), fx.l3(), ActionTensor.zero(2, 3))


def test_hemisemidirect_layout():
    b = hemisemidirect_bracket(fx.l3(), fx.l3(), fx.l3_adjoint())
    assert b.dim == 6
    # L block first, then L' block, then D(x,y)u in the L' block
    assert b.basis(0, 1, 0) == {2: 1}
    assert b.basis(3, 4, 3) == {5: 1}
    d = fx.l3_adjoint().d_apply({0: 1}, {1: 1}, {0: 1})
    assert b.basis(0, 1, 3) == {3 + l: c for l, c in d.items()} == {5: 1}
    alg = hemisemidirect(fx.l3(), fx.l3(), fx.l3_adjoint())
    assert verify_3leibniz(alg.bracket).passed
    assert alg.labels[:3] == ("eps1", "eps2", "eps3")


def test_hemisemidirect_with_adjoint_is_not_an_lts():
    b = hemisemidirect_bracket(fx.l3(), fx.l3(), fx.l3_adjoint())
    assert not verify_lts(b).passed


def test_hemisemidirect_rejects_incoherent_action():
    A = lts_from_lie(fx.affine_lie())
    with pytest.raises(VerificationError):
        hemisemidirect(A, A, ActionTensor.adjoint(A))


@settings(max_examples=25, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=3),
       st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_central_actions_on_l3(s, t):
    # theta(e1, e1) and theta(e2, e2) mapping eps1 and eps2 into the center
    th = {(0, 0): Matrix.unit(3, 3, 2, 0, s), (1, 1): Matrix.unit(3, 3, 2, 1, t)}
    act = ActionTensor(3, 3, th)
    v = verify_coherent_action(fx.l3(), fx.l3(), act)
    if v.passed:
        assert verify_3leibniz(hemisemidirect_bracket(fx.l3(), fx.l3(), act)).passed
