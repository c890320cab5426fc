"""Representations and coherent actions of Lie triple systems, and the
nonabelian hemisemidirect product.

An action tensor stores ``theta(e_i, e_j)`` for every ordered pair of basis
vectors of the acting system; ``theta`` is not symmetric, both orders are
kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebras import TriBracket, ThreeLeibnizAlgebra, center, in_span
from .exact import (
    InputError,
    Matrix,
    SparseVec,
    accumulate,
    dense,
    sparse,
    trilinear_apply,
    unit,
)
from .verdict import InternalConsistencyError, Verdict, VerificationError


@dataclass(frozen=True, eq=False)
class ActionTensor:
    """``theta[(i, j)]`` is the ``m x m`` matrix of theta(e_i, e_j); absent pairs are zero."""

    acting_dim: int
    acted_dim: int
    theta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        n, m = self.acting_dim, self.acted_dim
        clean = {}
        for key, mat in self.theta.items():
            i, j = key
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"action index {key} out of range for acting dim {n}")
            if not isinstance(mat, Matrix):
                mat = Matrix.from_rows(mat, m)
            if mat.shape != (m, m):
                raise InputError(f"theta{key} has shape {mat.shape}, expected {(m, m)}")
            if not mat.is_zero():
                clean[(int(i), int(j))] = mat
        object.__setattr__(self, "theta", clean)
        # trilinear tables: theta(e_i, e_j) e_k and D(e_i, e_j) e_k
        table, dtable = {}, {}
        for i, j in itertools.product(range(n), repeat=2):
            th = clean.get((i, j))
            d = self.d_matrix(i, j)
            for k in range(m):
                if th is not None:
                    col = th.sparse_column(k)
                    if col:
                        table[(i, j, k)] = col
                col = d.sparse_column(k)
                if col:
                    dtable[(i, j, k)] = col
        object.__setattr__(self, "_table", table)
        object.__setattr__(self, "_dtable", dtable)

    @classmethod
    def zero(cls, acting_dim: int, acted_dim: int) -> "ActionTensor":
        return cls(acting_dim, acted_dim, {})

    @classmethod
    def adjoint(cls, alg) -> "ActionTensor":
        """theta(x, y) z = [z, x, y]."""
        b = alg.bracket if hasattr(alg, "bracket") else alg
        n = b.dim
        theta = {}
        for i, j in itertools.product(range(n), repeat=2):
            theta[(i, j)] = Matrix.from_columns([dense(b.basis(k, i, j), n) for k in range(n)], n)
        return cls(n, n, theta)

    def matrix(self, i: int, j: int) -> Matrix:
        if not (0 <= i < self.acting_dim and 0 <= j < self.acting_dim):
            raise InputError(f"action index {(i, j)} out of range")
        return self.theta.get((i, j)) or Matrix.zeros(self.acted_dim, self.acted_dim)

    def d_matrix(self, i: int, j: int) -> Matrix:
        return self.matrix(j, i) - self.matrix(i, j)

    def apply(self, x: SparseVec, y: SparseVec, u: SparseVec) -> SparseVec:
        return trilinear_apply(self._table, x, y, u)

    def d_apply(self, x: SparseVec, y: SparseVec, u: SparseVec) -> SparseVec:
        return trilinear_apply(self._dtable, x, y, u)

    def matrix_of(self, x: Sequence, y: Sequence) -> Matrix:
        sx, sy = sparse(x), sparse(y)
        m = self.acted_dim
        return Matrix.from_columns([dense(self.apply(sx, sy, unit(k)), m) for k in range(m)], m)

    def d_matrix_of(self, x: Sequence, y: Sequence) -> Matrix:
        sx, sy = sparse(x), sparse(y)
        m = self.acted_dim
        return Matrix.from_columns([dense(self.d_apply(sx, sy, unit(k)), m) for k in range(m)], m)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ActionTensor) and self.acting_dim == other.acting_dim
                and self.acted_dim == other.acted_dim and self.theta == other.theta)

    def __hash__(self):
        return hash((self.acting_dim, self.acted_dim, tuple(sorted(self.theta.items(), key=lambda kv: kv[0]))))


def d_theta(act: ActionTensor, i: int, j: int) -> Matrix:
    """D(e_i, e_j) = theta(e_j, e_i) - theta(e_i, e_j)."""
    return act.d_matrix(i, j)


def _bracket(alg) -> TriBracket:
    return alg.bracket if hasattr(alg, "bracket") else alg


def verify_representation(L, act: ActionTensor) -> Verdict:
    """Representation identities as matrix equations on all basis 4-tuples.

    The D-identity that follows from them is evaluated too; if the two
    defining identities hold and the D-identity does not, that is a bug.
    """
    b = _bracket(L)
    n = b.dim
    if act.acting_dim != n:
        raise InputError(f"action of a dim-{act.acting_dim} system used with dim {n}")
    m = act.acted_dim
    verdict = Verdict("representation")
    c24 = verdict.check("2.4", "t(a,b)t(x,y) - t(y,b)t(x,a) - t(x,[y,a,b]) + D(y,a)t(x,b) = 0")
    c25 = verdict.check("2.5", "t(a,b)D(x,y) - D(x,y)t(a,b) + t([x,y,a],b) + t(a,[x,y,b]) = 0")
    c27 = verdict.check("2.7", "D(a,b)D(x,y) - D(x,y)D(a,b) + D([x,y,a],b) + D(a,[x,y,b]) = 0")
    th = {(i, j): act.matrix(i, j) for i, j in itertools.product(range(n), repeat=2)}
    dd = {(i, j): act.d_matrix(i, j) for i, j in itertools.product(range(n), repeat=2)}
    zero = Matrix.zeros(m, m).entries

    def theta_first(vec: SparseVec, j: int, table) -> Matrix:
        out = Matrix.zeros(m, m)
        for i, c in vec.items():
            out = out + table[(i, j)].scale(c)
        return out

    def theta_second(i: int, vec: SparseVec, table) -> Matrix:
        out = Matrix.zeros(m, m)
        for j, c in vec.items():
            out = out + table[(i, j)].scale(c)
        return out

    for x, y, a, bb in itertools.product(range(n), repeat=4):
        e24 = (th[(a, bb)] @ th[(x, y)] - th[(y, bb)] @ th[(x, a)]
               - theta_second(x, b.basis(y, a, bb), th) + dd[(y, a)] @ th[(x, bb)])
        c24.compare((x, y, a, bb), e24.entries, zero)
        e25 = (th[(a, bb)] @ dd[(x, y)] - dd[(x, y)] @ th[(a, bb)]
               + theta_first(b.basis(x, y, a), bb, th) + theta_second(a, b.basis(x, y, bb), th))
        c25.compare((x, y, a, bb), e25.entries, zero)
        e27 = (dd[(a, bb)] @ dd[(x, y)] - dd[(x, y)] @ dd[(a, bb)]
               + theta_first(b.basis(x, y, a), bb, dd) + theta_second(a, b.basis(x, y, bb), dd))
        c27.compare((x, y, a, bb), e27.entries, zero)
    if c24.passed and c25.passed and not c27.passed:
        raise InternalConsistencyError("D-identity fails although theta is a representation", verdict)
    return verdict


def _derivation_and_center(Lp: TriBracket, apply_op, n: int, verdict: Verdict, keys: tuple) -> None:
    """Center membership, product annihilation and derivation checks for an operator family."""
    m = Lp.dim
    cen = center(Lp)
    in_center, kills, der = (verdict.check(k, d) for k, d in keys)
    zero = dense({}, m)
    for x, y in itertools.product(range(n), repeat=2):
        ex, ey = unit(x), unit(y)
        images = [apply_op(ex, ey, unit(u)) for u in range(m)]
        for u in range(m):
            img = dense(images[u], m)
            in_center.compare((x, y, u), in_span(img, cen, m), True)
        for u, v, w in itertools.product(range(m), repeat=3):
            prod = Lp.basis(u, v, w)
            lhs = apply_op(ex, ey, prod)
            kills.compare((x, y, u, v, w), dense(lhs, m), zero)
            rhs = Lp.apply(images[u], unit(v), unit(w))
            accumulate(rhs, Lp.apply(unit(u), images[v], unit(w)))
            accumulate(rhs, Lp.apply(unit(u), unit(v), images[w]))
            der.compare((x, y, u, v, w), dense(lhs, m), dense(rhs, m))


def verify_coherent_action(L, Lp, act: ActionTensor) -> Verdict:
    """Representation, center-valued, product-killing and derivation conditions.

    The center of the acted system is recomputed here.  A non-representation
    is reported through ``verdict.error``.
    """
    b, bp = _bracket(L), _bracket(Lp)
    if act.acting_dim != b.dim or act.acted_dim != bp.dim:
        raise InputError(f"action of shape ({act.acting_dim}, {act.acted_dim}) "
                         f"used between dims ({b.dim}, {bp.dim})")
    verdict = Verdict("coherent action")
    rep = verify_representation(b, act)
    verdict.absorb(rep)
    if not rep.passed:
        verdict.error = "not a representation"
        return verdict
    _derivation_and_center(bp, act.apply, b.dim, verdict, (
        ("2.8", "theta(x,y)u lies in the center"),
        ("2.9", "theta(x,y)[u,v,w]' = 0"),
        ("der", "theta(x,y) is a derivation")))
    consequences = Verdict("D consequences")
    _derivation_and_center(bp, act.d_apply, b.dim, consequences, (
        ("2.10", "D(x,y)u lies in the center"),
        ("2.11", "D(x,y)[u,v,w]' = 0"),
        ("2.10-der", "D(x,y) is a derivation")))
    verdict.absorb(consequences)
    if all(verdict.checks[k].passed for k in ("2.8", "2.9", "der")) and not consequences.passed:
        raise InternalConsistencyError("D-consequences fail for a coherent action", verdict)
    return verdict


def hemisemidirect_bracket(L, Lp, act: ActionTensor) -> TriBracket:
    """Structure constants of ``([a,b,c], D(a,b)w + [u,v,w]')`` on L (+) L', L first."""
    b, bp = _bracket(L), _bracket(Lp)
    n, m = b.dim, bp.dim
    table = {}
    for key, v in b.table.items():
        table[key] = dict(v)
    for key, v in bp.table.items():
        table[tuple(n + i for i in key)] = {n + l: c for l, c in v.items()}
    for (i, j, k), v in act._dtable.items():
        table[(i, j, n + k)] = {n + l: c for l, c in v.items()}
    return TriBracket(n + m, table)


def hemisemidirect(L, Lp, act: ActionTensor) -> ThreeLeibnizAlgebra:
    """The nonabelian hemisemidirect product; rejects non-coherent actions."""
    verdict = verify_coherent_action(L, Lp, act)
    if not verdict.passed:
        raise VerificationError(f"action is not coherent: {verdict.failed() or verdict.error}", verdict)
    bracket = hemisemidirect_bracket(L, Lp, act)
    try:
        labels = tuple(getattr(L, "labels", None) or ()) + tuple(f"{s}'" for s in (getattr(Lp, "labels", None) or ()))
        return ThreeLeibnizAlgebra(bracket, labels or None)
    except VerificationError as exc:
        raise InternalConsistencyError("hemisemidirect product violates the fundamental identity",
                                       exc.verdict) from exc
