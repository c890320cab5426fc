from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import netlts.fixtures as fx
from netlts.actions import ActionTensor
from netlts.algebras import BiBracket, LieAlgebra
from netlts.deformations import (
    SAMPLE_POINTS,
    WedgePair,
    deform_check,
    equivalence_check,
    nijenhuis_check,
    omega1,
    omega1_deformation_check,
    trivial_deform,
)
from netlts.embedding import Net, NetContext, descendent_bracket, is_net
from netlts.exact import InputError, Matrix
from netlts.liebridge import lts_from_lie
from netlts.verdict import VerificationError

E1E2 = WedgePair.of((1, 0, 0), (0, 1, 0))
vals = st.sampled_from([Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)])


def test_trivial_direction_is_a_deformation(tstar):
    v = deform_check(tstar, fx.l3_nijenhuis_direction())
    assert v.passed
    assert {"5.1", "5.2", "5.3", "samples"} <= set(v.checks)


def test_non_deformation_is_caught(tstar):
    v = deform_check(tstar, Matrix.unit(3, 3, 0, 0, 1))
    assert not v.passed
    assert "5.1" in v.failed()
    assert not all(is_net(tstar.ctx, tstar.T + Matrix.unit(3, 3, 0, 0, c)) for c in SAMPLE_POINTS)


def test_context_form_checks_the_base(l3ctx):
    v = deform_check(l3ctx, Matrix.zeros(3, 3), Matrix.identity(3))
    assert v.failed() == ["2.14", "samples"]
    with pytest.raises(InputError):
        deform_check(l3ctx, Matrix.zeros(3, 3))


def test_published_family_coefficients_hold(l3ctx):
    # the coefficient equations of the published family hold; the base does not
    T = Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    v = deform_check(l3ctx, Matrix.unit(3, 3, 2, 2, 1), T)
    assert all(v.checks[k].passed for k in ("5.1", "5.2", "5.3"))
    assert not v.checks["2.14"].passed


def test_corrected_family_is_a_deformation(l3ctx):
    # with b1 = 0 the completed condition admits a direction in the (3,3) entry
    T = Matrix.from_rows([[1, 0, 0], [1, 1, 0], [0, 0, Fraction(1, 2)]])
    assert is_net(l3ctx, T)
    net = Net(l3ctx, T)
    v = deform_check(net, Matrix.unit(3, 3, 1, 0, 1))
    assert v.passed == all(is_net(l3ctx, T + Matrix.unit(3, 3, 1, 0, c)) for c in SAMPLE_POINTS)


@settings(max_examples=40, deadline=None)
@given(st.lists(vals, min_size=9, max_size=9))
def test_deform_check_agrees_with_sampling(entries):
    ctx = NetContext(fx.l3(), fx.l3(), fx.l3_adjoint())
    T1 = fx.l3_matrix(*entries)
    net = Net(ctx, fx.t_star())
    v = deform_check(net, T1)
    assert v.passed == all(is_net(ctx, net.T + T1.scale(c)) for c in SAMPLE_POINTS)


def test_omega1_is_first_order_bracket(tstar):
    T1 = fx.l3_nijenhuis_direction()
    w = omega1(tstar, T1)
    base = descendent_bracket(tstar.ctx, tstar.T)
    # on L3 the descendent bracket does not move along this direction
    for c in SAMPLE_POINTS:
        assert descendent_bracket(tstar.ctx, tstar.T + T1.scale(c)).table == base.table
    assert w.table == {}
    assert omega1_deformation_check(tstar, T1).passed


def test_omega1_needs_a_deformation(tstar):
    with pytest.raises(VerificationError):
        omega1(tstar, Matrix.unit(3, 3, 0, 0, 1))


def test_nijenhuis_and_trivial_deformation(tstar):
    v = nijenhuis_check(tstar, E1E2)
    assert v.passed
    assert "5.7" in v.checks
    T1 = trivial_deform(tstar, E1E2)
    assert T1 == fx.l3_nijenhuis_direction()


def test_equivalence_of_trivial_deformation(tstar):
    T1 = fx.l3_nijenhuis_direction()
    v = equivalence_check(tstar, Matrix.zeros(3, 3), T1, E1E2)
    assert v.passed
    assert {"5.4.1", "5.5.4", "5.6", "5.6-residual"} <= set(v.checks)


def test_equivalence_detects_mismatch(tstar):
    T1 = fx.l3_nijenhuis_direction()
    other = Matrix.unit(3, 3, 2, 1, 1)
    v = equivalence_check(tstar, other, T1, E1E2)
    assert not v.passed
    assert "5.6" in v.failed()


def test_non_nijenhuis_pair_is_rejected():
    # [a, b, -] on the system of sl2 is not nilpotent enough
    sl2 = LieAlgebra(BiBracket(3, {
        (0, 1): {1: 2}, (1, 0): {1: -2},
        (0, 2): {2: -2}, (2, 0): {2: 2},
        (1, 2): {0: 1}, (2, 1): {0: -1},
    }))
    ctx = NetContext(lts_from_lie(sl2), fx.abelian_lts(1), ActionTensor.zero(3, 1))
    net = Net(ctx, Matrix.zeros(3, 1))
    v = nijenhuis_check(net, WedgePair.of((1, 0, 0), (0, 1, 0)))
    assert v.failed() == ["5.4.1", "5.4.2"]
    with pytest.raises(VerificationError):
        trivial_deform(net, WedgePair.of((1, 0, 0), (0, 1, 0)))


def test_pair_length_checked(tstar):
    with pytest.raises(InputError):
        nijenhuis_check(tstar, WedgePair.of((1, 0), (0, 1)))


def test_third_diagonal_entry_is_rigid(tstar):
    # diag(2, 1/2, c3) is a net only for c3 = 1
    v = deform_check(tstar, Matrix.unit(3, 3, 2, 2, 1))
    assert v.failed() == ["5.1", "samples"]
    assert [is_net(tstar.ctx, Matrix.diag([2, Fraction(1, 2), c])) for c in (0, 1, 2)] == [False, True, False]
