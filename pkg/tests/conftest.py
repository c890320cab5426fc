from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

import netlts.fixtures as fx
from netlts.embedding import Net, NetContext, is_net

VALUES = (Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2))


def l3_grid() -> list:
    """Exhaustive over (a1, b1, a2, b2, c3) with c1, c2, a3, b3 on a sparse cycle.

    Returns 9-tuples in row order a1 b1 c1 / a2 b2 c2 / a3 b3 c3.
    """
    rows = []
    for idx, (a1, b1, a2, b2, c3) in enumerate(itertools.product(VALUES, repeat=5)):
        c1 = c2 = Fraction(0)
        if idx % 7 == 3:
            c1 = Fraction(1, 2)
        elif idx % 11 == 5:
            c2 = Fraction(-1)
        elif idx % 29 == 2:
            c1, c2 = Fraction(2), Fraction(1)
        a3 = Fraction(1) if idx % 13 == 0 else Fraction(0)
        b3 = Fraction(-1, 2) if idx % 17 == 1 else Fraction(0)
        rows.append((a1, b1, c1, a2, b2, c2, a3, b3, c3))
    return rows


_GRID = None


@pytest.fixture(scope="session")
def grid() -> list:
    global _GRID
    if _GRID is None:
        _GRID = [fx.l3_matrix(*p) for p in l3_grid()]
    return _GRID


@pytest.fixture(scope="session")
def l3ctx() -> NetContext:
    return NetContext(fx.l3(), fx.l3(), fx.l3_adjoint())


@pytest.fixture(scope="session")
def tstar(l3ctx) -> Net:
    return Net(l3ctx, fx.t_star())


@pytest.fixture(scope="session")
def grid_nets(l3ctx, grid) -> list:
    return [T for T in grid if is_net(l3ctx, T)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
