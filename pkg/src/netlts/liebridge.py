"""From embedding tensors between Lie algebras to embedding tensors between
the associated Lie triple systems ``[x, y, z] = [[x, y], z]``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .actions import ActionTensor, verify_coherent_action
from .algebras import LieAlgebra, LieTripleSystem, TriBracket
from .embedding import NetContext, net_check
from .exact import InputError, Matrix, accumulate, dense, unit
from .verdict import InternalConsistencyError, Verdict, VerificationError


@dataclass(frozen=True, eq=False)
class LieActionTensor:
    """``rho[i]`` is the matrix of ``rho(e_i)`` on L'; absent entries are zero."""

    acting_dim: int
    acted_dim: int
    rho: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, M in self.rho.items():
            if not 0 <= int(i) < self.acting_dim:
                raise InputError(f"action index {i} out of range for dim {self.acting_dim}")
            if not isinstance(M, Matrix):
                M = Matrix.from_rows(M, self.acted_dim)
            if M.shape != (self.acted_dim, self.acted_dim):
                raise InputError(f"rho({i}) has shape {M.shape}")
            if not M.is_zero():
                clean[int(i)] = M
        object.__setattr__(self, "rho", clean)

    def matrix(self, i: int) -> Matrix:
        return self.rho.get(i) or Matrix.zeros(self.acted_dim, self.acted_dim)

    def matrix_of(self, x: dict) -> Matrix:
        out = Matrix.zeros(self.acted_dim, self.acted_dim)
        for i, c in x.items():
            out = out + self.matrix(i).scale(c)
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieActionTensor) and self.acting_dim == other.acting_dim
                and self.acted_dim == other.acted_dim and self.rho == other.rho)

    def __hash__(self):
        return hash((self.acting_dim, self.acted_dim, tuple(sorted(self.rho))))


def _shapes(L: LieAlgebra, Lp: LieAlgebra, rho: LieActionTensor) -> None:
    if rho.acting_dim != L.dim or rho.acted_dim != Lp.dim:
        raise InputError(f"action of shape ({rho.acting_dim}, {rho.acted_dim}) "
                         f"used between dims ({L.dim}, {Lp.dim})")


def lie_action_check(L: LieAlgebra, Lp: LieAlgebra, rho: LieActionTensor) -> Verdict:
    """Homomorphism into derivations plus ``[rho(x)u, v]' = 0``."""
    _shapes(L, Lp, rho)
    n, m = L.dim, Lp.dim
    b, bp = L.bracket, Lp.bracket
    verdict = Verdict("coherent Lie action")
    hom = verdict.check("hom", "rho([x,y]) = rho(x)rho(y) - rho(y)rho(x)")
    der = verdict.check("der", "rho(x)[u,v]' = [rho(x)u,v]' + [u,rho(x)v]'")
    coh = verdict.check("6.1", "[rho(x)u,v]' = 0")
    for x, y in itertools.product(range(n), repeat=2):
        lhs = rho.matrix_of(b.basis(x, y))
        rhs = rho.matrix(x) @ rho.matrix(y) - rho.matrix(y) @ rho.matrix(x)
        hom.compare((x, y), lhs.entries, rhs.entries)
    for x in range(n):
        R = rho.matrix(x)
        cols = [R.sparse_column(u) for u in range(m)]
        for u, v in itertools.product(range(m), repeat=2):
            lhs = R.apply_sparse(bp.basis(u, v))
            rhs = bp.apply(cols[u], unit(v))
            accumulate(rhs, bp.apply(unit(u), cols[v]))
            der.compare((x, u, v), dense(lhs, m), dense(rhs, m))
            coh.compare((x, u, v), dense(bp.apply(cols[u], unit(v)), m), dense({}, m))
    return verdict


def lie_net_check(L: LieAlgebra, Lp: LieAlgebra, rho: LieActionTensor, T: Matrix) -> Verdict:
    """``[Tu,Tv] = T(rho(Tu)v + [u,v]')`` on basis pairs."""
    _shapes(L, Lp, rho)
    if T.shape != (L.dim, Lp.dim):
        raise InputError(f"map of shape {T.shape}; expected {(L.dim, Lp.dim)}")
    pre = lie_action_check(L, Lp, rho)
    if not pre.passed:
        raise VerificationError(f"not a coherent Lie action: {pre.failed()}", pre)
    n, m = L.dim, Lp.dim
    verdict = Verdict("Lie nonabelian embedding tensor")
    chk = verdict.check("6.2", "[Tu,Tv] = T(rho(Tu)v + [u,v]')")
    cols = [T.sparse_column(j) for j in range(m)]
    for u, v in itertools.product(range(m), repeat=2):
        lhs = L.bracket.apply(cols[u], cols[v])
        inner = rho.matrix_of(cols[u]).apply_sparse(unit(v))
        accumulate(inner, Lp.bracket.basis(u, v))
        chk.compare((u, v), dense(lhs, n), dense(T.apply_sparse(inner), n))
    return verdict


def lts_bracket_from_lie(L: LieAlgebra) -> TriBracket:
    b = L.bracket
    table = {}
    for i, j, k in itertools.product(range(b.dim), repeat=3):
        v = b.apply(b.basis(i, j), unit(k))
        if v:
            table[(i, j, k)] = v
    return TriBracket(b.dim, table)


def lts_from_lie(L: LieAlgebra) -> LieTripleSystem:
    """``[x, y, z] = [[x, y], z]``; always a Lie triple system."""
    try:
        return LieTripleSystem(lts_bracket_from_lie(L), L.labels)
    except VerificationError as exc:
        raise InternalConsistencyError("bracket of a Lie algebra failed the triple system axioms",
                                       exc.verdict) from exc


def theta_from_rho(L: LieAlgebra, Lp: LieAlgebra, rho: LieActionTensor) -> ActionTensor:
    """``theta(e_i, e_j) = rho(e_j) rho(e_i)``, verified coherent on the associated systems."""
    pre = lie_action_check(L, Lp, rho)
    if not pre.passed:
        raise VerificationError(f"not a coherent Lie action: {pre.failed()}", pre)
    n = L.dim
    theta = {(i, j): rho.matrix(j) @ rho.matrix(i) for i, j in itertools.product(range(n), repeat=2)}
    act = ActionTensor(n, Lp.dim, theta)
    verdict = verify_coherent_action(lts_bracket_from_lie(L), lts_bracket_from_lie(Lp), act)
    if not verdict.passed:
        raise InternalConsistencyError(f"transported action is not coherent: {verdict.failed()}", verdict)
    return act


def transported_context(L: LieAlgebra, Lp: LieAlgebra, rho: LieActionTensor) -> NetContext:
    return NetContext(lts_from_lie(L), lts_from_lie(Lp), theta_from_rho(L, Lp, rho))


def transport_check(L: LieAlgebra, Lp: LieAlgebra, rho: LieActionTensor, T: Matrix) -> Verdict:
    """Net check of ``T`` between the associated triple systems; requires a Lie-level net."""
    pre = lie_net_check(L, Lp, rho, T)
    if not pre.passed:
        raise VerificationError(f"not a Lie nonabelian embedding tensor: {pre.witness}", pre)
    verdict = net_check(transported_context(L, Lp, rho), T)
    if not verdict.passed:
        raise InternalConsistencyError(f"transported map is not a net: {verdict.witness}", verdict)
    return verdict
