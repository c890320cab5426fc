"""Named algebras and maps used by the tests, the CLI demos and the README."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .actions import ActionTensor
from .algebras import BiBracket, LieAlgebra, LieTripleSystem, TriBracket
from .exact import Matrix
from .liebridge import LieActionTensor


def l3_bracket() -> TriBracket:
    """[e1,e2,e1] = e3 = -[e2,e1,e1]; everything else zero."""
    return TriBracket(3, {(0, 1, 0): {2: 1}, (1, 0, 0): {2: -1}})


def l3() -> LieTripleSystem:
    return LieTripleSystem(l3_bracket(), ("eps1", "eps2", "eps3"))


def l3_adjoint() -> ActionTensor:
    return ActionTensor.adjoint(l3_bracket())


def t_star() -> Matrix:
    return Matrix.diag([2, Fraction(1, 2), 1])


def l3_matrix(a1, b1, c1, a2, b2, c2, a3, b3, c3) -> Matrix:
    """Matrix with columns (a1,a2,a3), (b1,b2,b3), (c1,c2,c3), i.e. rows as printed."""
    return Matrix.from_rows([[a1, b1, c1], [a2, b2, c2], [a3, b3, c3]])


def l3_nijenhuis_direction() -> Matrix:
    """The map eps1 -> -eps3, other basis vectors to zero."""
    return Matrix.unit(3, 3, 2, 0, -1)


def affine_lie() -> LieAlgebra:
    """2-dimensional nonabelian Lie algebra [e1, e2] = e2."""
    return LieAlgebra(BiBracket(2, {(0, 1): {1: 1}, (1, 0): {1: -1}}))


def heisenberg_lie() -> LieAlgebra:
    """[e1, e2] = e3 with e3 central."""
    return LieAlgebra(BiBracket(3, {(0, 1): {2: 1}, (1, 0): {2: -1}}))


def abelian_lie(dim: int) -> LieAlgebra:
    return LieAlgebra(BiBracket(dim, {}))


def abelian_lts(dim: int) -> LieTripleSystem:
    return LieTripleSystem(TriBracket(dim, {}))


def planted_non_lts() -> TriBracket:
    """[e1,e2,e1] = e1 = -[e2,e1,e1]: skew and cyclic, but the fundamental identity fails."""
    return TriBracket(2, {(0, 1, 0): {0: 1}, (1, 0, 0): {0: -1}})


# -- Lie-level fixtures -----------------------------------------------------------

@dataclass(frozen=True)
class LieNetFixture:
    name: str
    L: LieAlgebra
    Lp: LieAlgebra
    rho: LieActionTensor
    T: Matrix


def lambda_action(lam=2) -> LieActionTensor:
    """Affine algebra acting on a line: rho(e1) = lam, rho(e2) = 0."""
    return LieActionTensor(2, 1, {0: Matrix.from_rows([[lam]])})


def lie_net_fixtures() -> list:
    """Embedding tensors between Lie algebras whose coherent actions transport."""
    aff, heis = affine_lie(), heisenberg_lie()
    return [
        LieNetFixture("affine-line", aff, abelian_lie(1), lambda_action(2),
                      Matrix.from_rows([[0], [Fraction(3, 2)]])),
        LieNetFixture("affine-identity", aff, aff, LieActionTensor(2, 2, {}), Matrix.identity(2)),
        LieNetFixture("affine-projection", aff, aff, LieActionTensor(2, 2, {}),
                      Matrix.from_rows([[1, 0], [0, 0]])),
        LieNetFixture("heisenberg-line", heis, abelian_lie(1),
                      LieActionTensor(3, 1, {1: Matrix.from_rows([[1]])}),
                      Matrix.from_rows([[1], [0], [5]])),
    ]
