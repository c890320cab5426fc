"""Nonabelian embedding tensors between Lie triple systems.

A map ``T: L' -> L`` is stored as a ``dim L x dim L'`` matrix whose column
``j`` is ``T e'_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .actions import ActionTensor, hemisemidirect_bracket, verify_coherent_action
from .algebras import (
    LieTripleSystem,
    ThreeLeibnizAlgebra,
    TriBracket,
    verify_3leibniz,
    verify_tri_homomorphism,
)
from .exact import InputError, Matrix, accumulate, dense, unit
from .verdict import InternalConsistencyError, Verdict, VerificationError


@dataclass(frozen=True)
class NetContext:
    """Two Lie triple systems and a coherent action of the first on the second."""

    L: LieTripleSystem
    Lp: LieTripleSystem
    act: ActionTensor
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        verdict = verify_coherent_action(self.L, self.Lp, self.act)
        if not verdict.passed:
            raise VerificationError(
                f"action is not coherent: {verdict.error or verdict.failed()}", verdict)

    @property
    def n(self) -> int:
        return self.L.dim

    @property
    def m(self) -> int:
        return self.Lp.dim

    @property
    def hemi(self) -> TriBracket:
        if "hemi" not in self._cache:
            self._cache["hemi"] = hemisemidirect_bracket(self.L, self.Lp, self.act)
        return self._cache["hemi"]

    def check_map(self, T: Matrix) -> None:
        if T.shape != (self.n, self.m):
            raise InputError(f"map of shape {T.shape}; expected {(self.n, self.m)} (dim L x dim L')")


def _columns(T: Matrix) -> list:
    return [T.sparse_column(j) for j in range(T.cols)]


def net_residual(ctx: NetContext, T: Matrix, u: int, v: int, w: int, cols=None):
    """Both sides ``([Tu,Tv,Tw], T(D(Tu,Tv)w + [u,v,w]'))`` as sparse vectors."""
    cols = cols or _columns(T)
    lhs = ctx.L.bracket.apply(cols[u], cols[v], cols[w])
    inner = ctx.act.d_apply(cols[u], cols[v], unit(w))
    accumulate(inner, ctx.Lp.bracket.basis(u, v, w))
    return lhs, T.apply_sparse(inner)


def net_check(ctx: NetContext, T: Matrix) -> Verdict:
    """[Tu,Tv,Tw] = T(D(Tu,Tv)w + [u,v,w]') on all basis triples of L'."""
    ctx.check_map(T)
    verdict = Verdict("nonabelian embedding tensor")
    chk = verdict.check("2.14", "[Tu,Tv,Tw] = T(D(Tu,Tv)w + [u,v,w]')")
    cols = _columns(T)
    n = ctx.n
    for u, v, w in itertools.product(range(ctx.m), repeat=3):
        lhs, rhs = net_residual(ctx, T, u, v, w, cols)
        chk.compare((u, v, w), dense(lhs, n), dense(rhs, n))
    return verdict


def is_net(ctx: NetContext, T: Matrix) -> bool:
    ctx.check_map(T)
    cols = _columns(T)
    for u, v, w in itertools.product(range(ctx.m), repeat=3):
        lhs, rhs = net_residual(ctx, T, u, v, w, cols)
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class Net:
    """A validated nonabelian embedding tensor."""

    ctx: NetContext
    T: Matrix

    def __post_init__(self):
        verdict = net_check(self.ctx, self.T)
        if not verdict.passed:
            raise VerificationError(f"not a nonabelian embedding tensor: {verdict.witness}", verdict)


# -- the L3 worked example ----------------------------------------------------

def _l3_params(T: Matrix):
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = T.entries
    return a1, b1, c1, a2, b2, c2, a3, b3, c3


def printed_l3_condition(T: Matrix) -> bool:
    """``c1 = c2 = 0`` and ``a1^2 b2 - a1 a2 b1 = c3 (a1 b2 - a2 b1 + 1)``, as published."""
    a1, b1, c1, a2, b2, c2, a3, b3, c3 = _l3_params(T)
    return c1 == 0 and c2 == 0 and a1 * a1 * b2 - a1 * a2 * b1 == c3 * (a1 * b2 - a2 * b1 + 1)


def complete_l3_condition(T: Matrix) -> bool:
    """The published condition plus ``b1 (a1 b2 - a2 b1) = 0``.

    The extra factor comes from the triple (e1, e2, e2): its left side is
    ``b1 (a1 b2 - a2 b1) e3`` while its right side vanishes.
    """
    a1, b1, c1, a2, b2, c2, a3, b3, c3 = _l3_params(T)
    det = a1 * b2 - a2 * b1
    return printed_l3_condition(T) and b1 * det == 0


@dataclass(frozen=True)
class GridRow:
    T: Matrix
    net: bool
    printed: bool
    complete: bool

    @property
    def agrees(self) -> bool:
        return self.net == self.printed


def _is_l3_adjoint(ctx: NetContext) -> bool:
    from .fixtures import l3_adjoint, l3_bracket

    return (ctx.L.bracket == l3_bracket() and ctx.Lp.bracket == l3_bracket()
            and ctx.act == l3_adjoint())


def parametric_grid_check(ctx: NetContext, samples: Iterable) -> list:
    """Evaluate the defining equation and the closed-form conditions on sample maps."""
    if not _is_l3_adjoint(ctx):
        raise InputError("parametric grid check needs the L3 adjoint context")
    rows = []
    for s in samples:
        T = s if isinstance(s, Matrix) else Matrix.from_rows([s[0:3], s[3:6], s[6:9]])
        rows.append(GridRow(T, is_net(ctx, T), printed_l3_condition(T), complete_l3_condition(T)))
    return rows


# -- descendent algebra and graph ---------------------------------------------

def descendent_bracket(ctx: NetContext, T: Matrix) -> TriBracket:
    """[u,v,w]_T = D(Tu,Tv)w + [u,v,w]'."""
    ctx.check_map(T)
    cols = _columns(T)
    table = {}
    for u, v, w in itertools.product(range(ctx.m), repeat=3):
        val = ctx.act.d_apply(cols[u], cols[v], unit(w))
        accumulate(val, ctx.Lp.bracket.basis(u, v, w))
        if val:
            table[(u, v, w)] = val
    return TriBracket(ctx.m, table)


def descendent(net: Net) -> ThreeLeibnizAlgebra:
    """Descendent 3-Leibniz algebra on L'; T must carry it homomorphically into L."""
    bracket = descendent_bracket(net.ctx, net.T)
    if not verify_3leibniz(bracket).passed:
        raise InternalConsistencyError("descendent bracket violates the fundamental identity")
    if not verify_tri_homomorphism(net.T, bracket, net.ctx.L.bracket).passed:
        raise InternalConsistencyError("T is not a homomorphism from the descendent algebra")
    return ThreeLeibnizAlgebra(bracket, net.ctx.Lp.labels)


def graph_subalgebra_check(ctx: NetContext, T: Matrix) -> Verdict:
    """Closure of {(Tu, u)} under the hemisemidirect product, on basis triples."""
    ctx.check_map(T)
    n, m = ctx.n, ctx.m
    hemi = ctx.hemi
    graph = []
    for j in range(m):
        g = dict(T.sparse_column(j))
        g[n + j] = Fraction(1)
        graph.append(g)
    verdict = Verdict("graph subalgebra")
    chk = verdict.check("graph", "[(Tu,u),(Tv,v),(Tw,w)] lies in Gr(T)")
    for u, v, w in itertools.product(range(m), repeat=3):
        prod = hemi.apply(graph[u], graph[v], graph[w])
        first = {i: c for i, c in prod.items() if i < n}
        second = {i - n: c for i, c in prod.items() if i >= n}
        chk.compare((u, v, w), dense(first, n), dense(T.apply_sparse(second), n))
    return verdict


# -- homomorphisms and conjugation ----------------------------------------------

def _compat_check(ctx: NetContext, f: Matrix, fp: Matrix, verdict: Verdict,
                  key: str, apply_op, desc: str) -> None:
    n, m = ctx.n, ctx.m
    chk = verdict.check(key, desc)
    fcols = _columns(f)
    for x, y, u in itertools.product(range(n), range(n), range(m)):
        lhs = fp.apply_sparse(apply_op(unit(x), unit(y), unit(u)))
        rhs = apply_op(fcols[x], fcols[y], fp.sparse_column(u))
        chk.compare((x, y, u), dense(lhs, m), dense(rhs, m))


def net_hom_check(ctx: NetContext, Tsrc: Matrix, Tdst: Matrix, f: Matrix, fp: Matrix) -> Verdict:
    """Every homomorphism condition from ``Tsrc`` to ``Tdst``, reported separately."""
    ctx.check_map(Tsrc)
    ctx.check_map(Tdst)
    n, m = ctx.n, ctx.m
    if f.shape != (n, n) or fp.shape != (m, m):
        raise InputError(f"f must be {n}x{n} and f' must be {m}x{m}")
    verdict = Verdict("homomorphism of nonabelian embedding tensors")
    verdict.absorb(verify_tri_homomorphism(f, ctx.L.bracket, ctx.L.bracket), "f-")
    verdict.absorb(verify_tri_homomorphism(fp, ctx.Lp.bracket, ctx.Lp.bracket), "fp-")
    c215 = verdict.check("2.15", "f(Tsrc u) = Tdst f'(u)")
    lhs_m, rhs_m = f @ Tsrc, Tdst @ fp
    for u in range(m):
        c215.compare((u,), lhs_m.column(u), rhs_m.column(u))
    _compat_check(ctx, f, fp, verdict, "2.16", ctx.act.apply, "f'(theta(x,y)u) = theta(fx,fy)f'u")
    _compat_check(ctx, f, fp, verdict, "2.17", ctx.act.d_apply, "f'(D(x,y)u) = D(fx,fy)f'u")
    if verdict.checks["2.16"].passed and not verdict.checks["2.17"].passed:
        raise InternalConsistencyError("D-compatibility fails although theta-compatibility holds", verdict)
    if verdict.passed:
        src = descendent_bracket(ctx, Tsrc)
        dst = descendent_bracket(ctx, Tdst)
        desc = verify_tri_homomorphism(fp, src, dst, "descendent homomorphism")
        verdict.absorb(desc, "descendent-")
        if not desc.passed:
            raise InternalConsistencyError("f' is not a homomorphism of descendent algebras", verdict)
    return verdict


def conjugate_net(ctx: NetContext, T: Matrix, f: Matrix, fp: Matrix,
                  include_215: bool = False) -> Matrix:
    """``f^-1 T f'`` for automorphisms ``f``, ``f'`` compatible with the action.

    By default the compatibility ``f T = T f'`` is not required: the result is
    a net from the automorphism and action-compatibility conditions alone.
    """
    ctx.check_map(T)
    if not net_check(ctx, T).passed:
        raise VerificationError("T is not a nonabelian embedding tensor")
    try:
        f_inv = f.inverse()
        fp.inverse()
    except InputError as exc:
        raise VerificationError(f"conjugation needs invertible maps: {exc}") from exc
    verdict = net_hom_check(ctx, T, T, f, fp)
    required = ["f-hom", "fp-hom", "2.16"] + (["2.15"] if include_215 else [])
    bad = [k for k in required if not verdict.checks[k].passed]
    if bad:
        raise VerificationError(f"conjugation preconditions fail: {bad}", verdict)
    S = f_inv @ T @ fp
    if not net_check(ctx, S).passed:
        raise InternalConsistencyError("conjugate of a net is not a net")
    return S
