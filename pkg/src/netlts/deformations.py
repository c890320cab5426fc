"""Infinitesimal deformations of embedding tensors, their equivalence, and
Nijenhuis elements.

"For all t" is decided by comparing coefficients of the polynomial identity
in ``t`` exactly; evaluating the defining equation at four sample values is
kept as an independent cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebras import TriBracket, verify_3leibniz
from .cohomology import delta_1_explicit, induced_rep, partial0
from .embedding import Net, NetContext, descendent_bracket, is_net
from .exact import InputError, Matrix, SparseVec, accumulate, dense, sparse, unit
from .verdict import InternalConsistencyError, Verdict, VerificationError

SAMPLE_POINTS = (1, 2, 3, 5)


@dataclass(frozen=True)
class WedgePair:
    """An element ``a ^ b`` of the exterior square of L, kept as the two vectors."""

    a: tuple
    b: tuple

    @classmethod
    def of(cls, a: Sequence, b: Sequence) -> "WedgePair":
        return cls(tuple(Fraction(x) for x in a), tuple(Fraction(x) for x in b))


def _base(net, T: Matrix | None):
    if isinstance(net, Net):
        return net.ctx, net.T
    if isinstance(net, NetContext):
        if T is None:
            raise InputError("a context needs an explicit base map")
        net.check_map(T)
        return net, T
    raise InputError("expected a Net or a NetContext")


def _cols(T: Matrix) -> list:
    return [T.sparse_column(j) for j in range(T.cols)]


def deform_check(net, T1: Matrix, T: Matrix | None = None) -> Verdict:
    """Coefficient equations of ``T + t T1`` being a net for every ``t``.

    ``net`` is a validated ``Net`` or a ``NetContext`` together with ``T``;
    in the second case the constant term (``T`` itself) is checked as well.
    """
    ctx, T = _base(net, T)
    ctx.check_map(T1)
    n, m = ctx.n, ctx.m
    L, Lp, act = ctx.L.bracket, ctx.Lp.bracket, ctx.act
    verdict = Verdict("infinitesimal deformation")
    base = verdict.check("2.14", "the base map is a nonabelian embedding tensor")
    base.compare((), is_net(ctx, T), True)
    c1 = verdict.check("5.1", "order t")
    c2 = verdict.check("5.2", "order t^2")
    c3 = verdict.check("5.3", "order t^3")
    A, B = _cols(T), _cols(T1)
    for u, v, w in itertools.product(range(m), repeat=3):
        ew = unit(w)
        # order t
        lhs = L.apply(A[u], A[v], B[w])
        accumulate(lhs, L.apply(A[u], B[v], A[w]))
        accumulate(lhs, L.apply(B[u], A[v], A[w]))
        inner = act.d_apply(A[u], A[v], ew)
        accumulate(inner, Lp.basis(u, v, w))
        rhs = T1.apply_sparse(inner)
        mixed = act.d_apply(B[u], A[v], ew)
        accumulate(mixed, act.d_apply(A[u], B[v], ew))
        accumulate(rhs, T.apply_sparse(mixed))
        c1.compare((u, v, w), dense(lhs, n), dense(rhs, n))
        # order t^2
        lhs = L.apply(A[u], B[v], B[w])
        accumulate(lhs, L.apply(B[u], A[v], B[w]))
        accumulate(lhs, L.apply(B[u], B[v], A[w]))
        rhs = T.apply_sparse(act.d_apply(B[u], B[v], ew))
        accumulate(rhs, T1.apply_sparse(mixed))
        c2.compare((u, v, w), dense(lhs, n), dense(rhs, n))
        # order t^3
        lhs = L.apply(B[u], B[v], B[w])
        rhs = T1.apply_sparse(act.d_apply(B[u], B[v], ew))
        c3.compare((u, v, w), dense(lhs, n), dense(rhs, n))
    coefficients = all(verdict.checks[k].passed for k in ("2.14", "5.1", "5.2", "5.3"))
    samples = verdict.check("samples", "T + c T1 is a net for c in 1, 2, 3, 5")
    for c in SAMPLE_POINTS:
        samples.compare((c,), is_net(ctx, T + T1.scale(c)), True)
    if samples.passed != coefficients:
        raise InternalConsistencyError(
            "coefficient equations and sampled nets disagree on a cubic polynomial identity", verdict)
    if base.passed:
        cocycle = delta_1_explicit(induced_rep(Net(ctx, T)), T1).is_zero()
        if cocycle != verdict.checks["5.1"].passed:
            raise InternalConsistencyError("order-t equation disagrees with the 1-cocycle condition", verdict)
    return verdict


def omega1(net: Net, T1: Matrix) -> TriBracket:
    """``w(u,v,w) = D(T1 u, T v) w + D(T u, T1 v) w`` on L'."""
    if not deform_check(net, T1).passed:
        raise VerificationError("T1 does not generate an infinitesimal deformation")
    ctx, T = net.ctx, net.T
    A, B = _cols(T), _cols(T1)
    table, quad = {}, {}
    for u, v, w in itertools.product(range(ctx.m), repeat=3):
        val = ctx.act.d_apply(B[u], A[v], unit(w))
        accumulate(val, ctx.act.d_apply(A[u], B[v], unit(w)))
        if val:
            table[(u, v, w)] = val
        q = ctx.act.d_apply(B[u], B[v], unit(w))
        if q:
            quad[(u, v, w)] = q
    # first-order agreement with the descendent bracket of T + T1
    shifted = descendent_bracket(ctx, T + T1)
    base = descendent_bracket(ctx, T)
    for key in itertools.product(range(ctx.m), repeat=3):
        diff = accumulate(dict(shifted.basis(*key)), base.basis(*key), -1)
        accumulate(diff, quad.get(key, {}), -1)
        if diff != table.get(key, {}):
            raise InternalConsistencyError(f"omega1 differs from the first-order descendent term at {key}")
    return TriBracket(ctx.m, table)


def omega1_deformation_check(net: Net, T1: Matrix) -> Verdict:
    """Whether ``[-,-,-]_T + t w`` satisfies the fundamental identity for c in 1, 2, 3."""
    w = omega1(net, T1)
    base = descendent_bracket(net.ctx, net.T)
    verdict = Verdict("deformation of the descendent algebra")
    chk = verdict.check("omega", "[-,-,-]_T + c w is 3-Leibniz for c in 1, 2, 3")
    for c in (1, 2, 3):
        table = {}
        for key in set(base.table) | set(w.table):
            table[key] = accumulate(dict(base.basis(*key)), w.basis(*key), c)
        chk.compare((c,), verify_3leibniz(TriBracket(net.ctx.m, table)).passed, True)
    return verdict


# -- equivalence and Nijenhuis elements ----------------------------------------------

def _pair(ctx, pair) -> tuple:
    if not isinstance(pair, WedgePair):
        pair = WedgePair.of(*pair)
    if len(pair.a) != ctx.n or len(pair.b) != ctx.n:
        raise InputError(f"pair vectors must have length {ctx.n}")
    return sparse(pair.a), sparse(pair.b)


def _automorphism_conditions(ctx, a: SparseVec, b: SparseVec, verdict: Verdict) -> None:
    """The bracket conditions on L and L' and the action conditions."""
    n, m = ctx.n, ctx.m
    L, Lp, act = ctx.L.bracket, ctx.Lp.bracket, ctx.act
    ad = [L.apply(a, b, unit(x)) for x in range(n)]
    Dab = [act.d_apply(a, b, unit(u)) for u in range(m)]
    zn, zm = dense({}, n), dense({}, m)
    k1 = verdict.check("5.4.1", "[x,Ay,Az] + [Ax,y,Az] + [Ax,Ay,z] = 0 with A = [a,b,-]")
    k2 = verdict.check("5.4.2", "[Ax,Ay,Az] = 0")
    k3 = verdict.check("5.4.3", "[u,Dv,Dw]' + [Du,v,Dw]' + [Du,Dv,w]' = 0 with D = D(a,b)")
    k4 = verdict.check("5.4.4", "[Du,Dv,Dw]' = 0")
    for x, y, z in itertools.product(range(n), repeat=3):
        ex, ey, ez = unit(x), unit(y), unit(z)
        s = L.apply(ex, ad[y], ad[z])
        accumulate(s, L.apply(ad[x], ey, ad[z]))
        accumulate(s, L.apply(ad[x], ad[y], ez))
        k1.compare((x, y, z), dense(s, n), zn)
        k2.compare((x, y, z), dense(L.apply(ad[x], ad[y], ad[z]), n), zn)
    for u, v, w in itertools.product(range(m), repeat=3):
        eu, ev, ew = unit(u), unit(v), unit(w)
        s = Lp.apply(eu, Dab[v], Dab[w])
        accumulate(s, Lp.apply(Dab[u], ev, Dab[w]))
        accumulate(s, Lp.apply(Dab[u], Dab[v], ew))
        k3.compare((u, v, w), dense(s, m), zm)
        k4.compare((u, v, w), dense(Lp.apply(Dab[u], Dab[v], Dab[w]), m), zm)
    t1 = verdict.check("5.5.1", "t(Ax,Ay)u + t(Ax,y)Du + t(x,Ay)Du = 0")
    t2 = verdict.check("5.5.2", "t(Ax,Ay)Du = 0")
    t3 = verdict.check("5.5.3", "D(Ax,Ay)u + D(Ax,y)Du + D(x,Ay)Du = 0")
    t4 = verdict.check("5.5.4", "D(Ax,Ay)Du = 0")
    for x, y, u in itertools.product(range(n), range(n), range(m)):
        ex, ey, eu = unit(x), unit(y), unit(u)
        for op, c_lin, c_top in ((act.apply, t1, t2), (act.d_apply, t3, t4)):
            s = op(ad[x], ad[y], eu)
            accumulate(s, op(ad[x], ey, Dab[u]))
            accumulate(s, op(ex, ad[y], Dab[u]))
            c_lin.compare((x, y, u), dense(s, m), zm)
            c_top.compare((x, y, u), dense(op(ad[x], ad[y], Dab[u]), m), zm)


def equivalence_check(net: Net, T1: Matrix, T1tilde: Matrix, pair) -> Verdict:
    """Conditions for ``(id + t[a,b,-], id + t D(a,b))`` to carry ``T + t T1tilde`` to ``T + t T1``."""
    ctx, T = net.ctx, net.T
    ctx.check_map(T1)
    ctx.check_map(T1tilde)
    a, b = _pair(ctx, pair)
    n = ctx.n
    verdict = Verdict("equivalence of deformations")
    verdict.check("deform-T1", "T1 generates a deformation").compare((), deform_check(net, T1).passed, True)
    verdict.check("deform-T1tilde", "T1tilde generates a deformation").compare(
        (), deform_check(net, T1tilde).passed, True)
    _automorphism_conditions(ctx, a, b, verdict)
    c6 = verdict.check("5.6", "T1tilde u + [a,b,Tu] = T1 u + T D(a,b) u")
    cres = verdict.check("5.6-residual", "[a,b,T1tilde u] = T1 D(a,b) u")
    for u in range(ctx.m):
        Dau = ctx.act.d_apply(a, b, unit(u))
        lhs = dict(T1tilde.sparse_column(u))
        accumulate(lhs, ctx.L.bracket.apply(a, b, T.sparse_column(u)))
        rhs = dict(T1.sparse_column(u))
        accumulate(rhs, T.apply_sparse(Dau))
        c6.compare((u,), dense(lhs, n), dense(rhs, n))
        cres.compare((u,), dense(ctx.L.bracket.apply(a, b, T1tilde.sparse_column(u)), n),
                     dense(T1.apply_sparse(Dau), n))
    return verdict


def nijenhuis_check(net: Net, pair) -> Verdict:
    """Bracket, action and ``[a,b,T D(a,b)u - [a,b,Tu]] = 0`` conditions."""
    ctx, T = net.ctx, net.T
    a, b = _pair(ctx, pair)
    n = ctx.n
    verdict = Verdict("Nijenhuis element")
    _automorphism_conditions(ctx, a, b, verdict)
    c7 = verdict.check("5.7", "[a,b,T D(a,b)u - [a,b,Tu]] = 0")
    for u in range(ctx.m):
        inner = T.apply_sparse(ctx.act.d_apply(a, b, unit(u)))
        accumulate(inner, ctx.L.bracket.apply(a, b, T.sparse_column(u)), -1)
        c7.compare((u,), dense(ctx.L.bracket.apply(a, b, inner), n), dense({}, n))
    return verdict


def trivial_deform(net: Net, pair) -> Matrix:
    """The direction ``T1 = T D(a,b) - [a,b,T-]`` generated by a Nijenhuis element."""
    verdict = nijenhuis_check(net, pair)
    if not verdict.passed:
        raise VerificationError(f"not a Nijenhuis element: {verdict.failed()}", verdict)
    if not isinstance(pair, WedgePair):
        pair = WedgePair.of(*pair)
    T1 = partial0(net, pair.a, pair.b)
    if not deform_check(net, T1).passed:
        raise InternalConsistencyError("a Nijenhuis element generated a non-deformation")
    zero = Matrix.zeros(*T1.shape)
    eq = equivalence_check(net, zero, T1, pair)
    if not eq.passed:
        raise InternalConsistencyError(f"generated deformation is not trivial: {eq.failed()}", eq)
    return T1
