"""Representations of 3-Leibniz algebras, the representation induced by an
embedding tensor, and the cohomology of that tensor.

Cochain bases are lexicographic on (pair tuple, final index) with the
output coordinate varying fastest; this fixes the rows and columns of every
coboundary matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebras import TriBracket
from .embedding import Net, descendent_bracket
from .exact import (
    InputError,
    Matrix,
    SparseVec,
    accumulate,
    dense,
    nullspace,
    rank,
    trilinear_apply,
    unit,
    wedge_basis,
)
from .graded import Cochain, dT
from .verdict import InternalConsistencyError, Verdict


def _table_from_matrices(mats: Mapping, slot: int) -> dict:
    """Trilinear table from a family of matrices indexed by the two algebra slots.

    ``slot`` is the position (0, 1 or 2) of the module argument.
    """
    table = {}
    for (i, j), M in mats.items():
        for k in range(M.cols):
            col = M.sparse_column(k)
            if not col:
                continue
            if slot == 0:
                table[(k, i, j)] = col
            elif slot == 1:
                table[(i, k, j)] = col
            else:
                table[(i, j, k)] = col
    return table


@dataclass(frozen=True, eq=False)
class LeibnizRep:
    """Actions ``l(a,b,u)``, ``m(a,u,c)``, ``r(u,b,c)`` of a 3-Leibniz algebra on a space.

    ``rho_l[(i, j)]`` is the matrix of ``u -> l(e_i, e_j, u)``, ``rho_m[(i, k)]``
    that of ``u -> m(e_i, u, e_k)`` and ``rho_r[(j, k)]`` that of ``u -> r(u, e_j, e_k)``.
    """

    algebra: TriBracket
    vdim: int
    rho_l: Mapping = field(default_factory=dict)
    rho_m: Mapping = field(default_factory=dict)
    rho_r: Mapping = field(default_factory=dict)

    def __post_init__(self):
        g = self.algebra.dim
        for fam in (self.rho_l, self.rho_m, self.rho_r):
            for (i, j), M in fam.items():
                if not (0 <= i < g and 0 <= j < g):
                    raise InputError(f"representation index {(i, j)} out of range")
                if M.shape != (self.vdim, self.vdim):
                    raise InputError(f"representation matrix of shape {M.shape}, expected {self.vdim}x{self.vdim}")
        object.__setattr__(self, "_l", _table_from_matrices(self.rho_l, 2))
        object.__setattr__(self, "_m", _table_from_matrices(self.rho_m, 1))
        object.__setattr__(self, "_r", _table_from_matrices(self.rho_r, 0))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def l(self, a: SparseVec, b: SparseVec, u: SparseVec) -> SparseVec:
        return trilinear_apply(self._l, a, b, u)

    def m(self, a: SparseVec, u: SparseVec, c: SparseVec) -> SparseVec:
        return trilinear_apply(self._m, a, u, c)

    def r(self, u: SparseVec, b: SparseVec, c: SparseVec) -> SparseVec:
        return trilinear_apply(self._r, u, b, c)

    @classmethod
    def zero(cls, algebra: TriBracket, vdim: int) -> "LeibnizRep":
        return cls(algebra, vdim)


def _family(g: int, vdim: int, fn) -> dict:
    out = {}
    for i, j in itertools.product(range(g), repeat=2):
        M = Matrix.from_columns([dense(fn(i, j, k), vdim) for k in range(vdim)], vdim)
        if not M.is_zero():
            out[(i, j)] = M
    return out


def regular_rep(algebra: TriBracket) -> LeibnizRep:
    """The algebra acting on itself through its own bracket in every slot."""
    b = algebra
    g = b.dim
    return LeibnizRep(
        b, g,
        _family(g, g, lambda i, j, k: b.basis(i, j, k)),
        _family(g, g, lambda i, j, k: b.basis(i, k, j)),
        _family(g, g, lambda i, j, k: b.basis(k, i, j)),
    )


def build_induced_rep(ctx, T: Matrix) -> LeibnizRep:
    """Induced actions of the descendent algebra on L, without verification."""
    ctx.check_map(T)
    n, m = ctx.n, ctx.m
    L, act = ctx.L.bracket, ctx.act
    cols = [T.sparse_column(j) for j in range(m)]

    def rl(i, j, x):
        return L.apply(cols[i], cols[j], unit(x))

    def rm(i, j, x):  # m(e_i, x, e_j)
        out = L.apply(cols[i], unit(x), cols[j])
        accumulate(out, T.apply_sparse(act.d_apply(cols[i], unit(x), unit(j))), -1)
        return out

    def rr(i, j, x):  # r(x, e_i, e_j)
        out = L.apply(unit(x), cols[i], cols[j])
        accumulate(out, T.apply_sparse(act.d_apply(unit(x), cols[i], unit(j))), -1)
        return out

    return LeibnizRep(descendent_bracket(ctx, T), n,
                      _family(m, n, rl), _family(m, n, rm), _family(m, n, rr))


def verify_leibniz_rep(rep: LeibnizRep) -> Verdict:
    """The five compatibility identities on all basis tuples."""
    g, V = rep.dim, rep.vdim
    br = rep.algebra
    verdict = Verdict("3-Leibniz representation")
    c1 = verdict.check("4.1", "l(a,b,l(x,y,u)) = l([a,b,x],y,u) + l(x,[a,b,y],u) + l(x,y,l(a,b,u))")
    c2 = verdict.check("4.2", "l(a,b,m(x,u,z)) = m([a,b,x],u,z) + m(x,l(a,b,u),z) + m(x,u,[a,b,z])")
    c3 = verdict.check("4.3", "l(a,b,r(u,y,z)) = r(l(a,b,u),y,z) + r(u,[a,b,y],z) + r(u,y,[a,b,z])")
    c4 = verdict.check("4.4", "m(a,u,[x,y,z]) = r(m(a,u,x),y,z) + m(x,m(a,u,y),z) + l(x,y,m(a,u,z))")
    c5 = verdict.check("4.5", "r(u,b,[x,y,z]) = r(r(u,b,x),y,z) + m(x,r(u,b,y),z) + l(x,y,r(u,b,z))")
    l, m, r = rep.l, rep.m, rep.r
    for a, b, x, y, u in itertools.product(range(g), range(g), range(g), range(g), range(V)):
        ea, eb, ex, ey, eu = unit(a), unit(b), unit(x), unit(y), unit(u)
        abx, aby = br.basis(a, b, x), br.basis(a, b, y)
        # 4.1 and 4.3 with (x, y) in the algebra slots; 4.2 uses (x, z=y)
        lhs = l(ea, eb, l(ex, ey, eu))
        rhs = l(abx, ey, eu)
        accumulate(rhs, l(ex, aby, eu))
        accumulate(rhs, l(ex, ey, l(ea, eb, eu)))
        c1.compare((a, b, x, y, u), dense(lhs, V), dense(rhs, V))
        lhs = l(ea, eb, m(ex, eu, ey))
        rhs = m(abx, eu, ey)
        accumulate(rhs, m(ex, l(ea, eb, eu), ey))
        accumulate(rhs, m(ex, eu, aby))
        c2.compare((a, b, x, u, y), dense(lhs, V), dense(rhs, V))
        lhs = l(ea, eb, r(eu, ex, ey))
        rhs = r(l(ea, eb, eu), ex, ey)
        accumulate(rhs, r(eu, abx, ey))
        accumulate(rhs, r(eu, ex, aby))
        c3.compare((a, b, u, x, y), dense(lhs, V), dense(rhs, V))
    for a, x, y, z, u in itertools.product(range(g), range(g), range(g), range(g), range(V)):
        ea, ex, ey, ez, eu = unit(a), unit(x), unit(y), unit(z), unit(u)
        xyz = br.basis(x, y, z)
        lhs = m(ea, eu, xyz)
        rhs = r(m(ea, eu, ex), ey, ez)
        accumulate(rhs, m(ex, m(ea, eu, ey), ez))
        accumulate(rhs, l(ex, ey, m(ea, eu, ez)))
        c4.compare((a, u, x, y, z), dense(lhs, V), dense(rhs, V))
        lhs = r(eu, ea, xyz)
        rhs = r(r(eu, ea, ex), ey, ez)
        accumulate(rhs, m(ex, r(eu, ea, ey), ez))
        accumulate(rhs, l(ex, ey, r(eu, ea, ez)))
        c5.compare((u, a, x, y, z), dense(lhs, V), dense(rhs, V))
    return verdict


def induced_rep(net: Net) -> LeibnizRep:
    """Induced representation of the descendent algebra on L; verified on construction."""
    rep = build_induced_rep(net.ctx, net.T)
    verdict = verify_leibniz_rep(rep)
    if not verdict.passed:
        raise InternalConsistencyError(f"induced representation fails: {verdict.witness}", verdict)
    return rep


# -- coboundary -------------------------------------------------------------------

def _pair_terms(x: SparseVec, y: SparseVec) -> dict:
    """``x ^ y`` on canonical pairs."""
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            if i < j:
                out[(i, j)] = out.get((i, j), 0) + a * b
            elif i > j:
                out[(j, i)] = out.get((j, i), 0) - a * b
    return {p: c for p, c in out.items() if c != 0}


def _eval(f: Cochain, slots: list, z: SparseVec) -> SparseVec:
    """Multilinear evaluation of ``f`` on pair-combination slots."""
    out: SparseVec = {}
    if not z or any(not s for s in slots):
        return out
    for combo in itertools.product(*(s.items() for s in slots)):
        coef = Fraction(1)
        for _, c in combo:
            coef *= c
        pairs = tuple(p for p, _ in combo)
        for k, ck in z.items():
            accumulate(out, f.value(pairs, k), coef * ck)
    return out


def delta_n(rep: LeibnizRep, f: Cochain) -> Cochain:
    """Coboundary of an ``n``-cochain (``n - 1`` pair slots and a final slot)."""
    g = rep.dim
    if f.dim != g or f.out_dim != rep.vdim:
        raise InputError(f"cochain shape ({f.dim} -> {f.out_dim}) does not match "
                         f"representation ({g} -> {rep.vdim})")
    n = f.degree + 1
    if n > 4:
        raise InputError(f"coboundary supported for n <= 4, got {n}")
    br = rep.algebra

    def fn(key) -> SparseVec:
        X, z = key
        out: SparseVec = {}
        ez = unit(z)
        singles = [{p: Fraction(1)} for p in X]
        for j in range(n):  # slot j, one-based j + 1
            sign = -1 if (j + 1) % 2 else 1
            xj, yj = X[j]
            for k in range(j + 1, n):
                xk, yk = X[k]
                new = _pair_terms(unit(xk), br.basis(xj, yj, yk))
                accumulate(new, _pair_terms(br.basis(xj, yj, xk), unit(yk)))
                if not new:
                    continue
                slots = singles[:j] + singles[j + 1:k] + [new] + singles[k + 1:]
                accumulate(out, _eval(f, slots, ez), sign)
            rest = singles[:j] + singles[j + 1:]
            accumulate(out, _eval(f, rest, br.basis(xj, yj, z)), sign)
            accumulate(out, rep.l(unit(xj), unit(yj), _eval(f, rest, ez)), -sign)
        tail = 1 if n % 2 else -1  # (-1)^{n+1}
        xn, yn = X[n - 1]
        head = singles[:n - 1]
        accumulate(out, rep.m(unit(xn), _eval(f, head, unit(yn)), ez), tail)
        accumulate(out, rep.r(_eval(f, head, unit(xn)), unit(yn), ez), tail)
        return out

    return Cochain(g, rep.vdim, n, fn=fn)


def delta_1_explicit(rep: LeibnizRep, f: Matrix) -> Cochain:
    """``-f[u,v,w] + l(u,v,fw) + m(u,fv,w) + r(fu,v,w)`` for a linear map ``f``."""
    g = rep.dim
    br = rep.algebra

    def fn(key) -> SparseVec:
        ((u, v),), w = key
        eu, ev, ew = unit(u), unit(v), unit(w)
        out = {k: -c for k, c in f.apply_sparse(br.basis(u, v, w)).items()}
        accumulate(out, rep.l(eu, ev, f.sparse_column(w)))
        accumulate(out, rep.m(eu, f.sparse_column(v), ew))
        accumulate(out, rep.r(f.sparse_column(u), ev, ew))
        return out

    return Cochain(g, rep.vdim, 1, fn=fn)


def partial0(net: Net, a: Sequence, b: Sequence) -> Matrix:
    """The map ``u -> T D(a,b)u - [a,b,Tu]``."""
    ctx, T = net.ctx, net.T
    sa = {i: Fraction(c) for i, c in enumerate(a) if c != 0}
    sb = {i: Fraction(c) for i, c in enumerate(b) if c != 0}
    if len(a) != ctx.n or len(b) != ctx.n:
        raise InputError(f"pair vectors must have length {ctx.n}")
    cols = []
    for u in range(ctx.m):
        v = T.apply_sparse(ctx.act.d_apply(sa, sb, unit(u)))
        accumulate(v, ctx.L.bracket.apply(sa, sb, T.sparse_column(u)), -1)
        cols.append(dense(v, ctx.n))
    return Matrix.from_columns(cols, ctx.n)


def cochain_space_dim(net: Net, n: int) -> int:
    """``dim C^n``; ``C^0`` is the exterior square of L."""
    ln, lm = net.ctx.n, net.ctx.m
    if n == 0:
        return ln * (ln - 1) // 2
    return (lm * (lm - 1) // 2) ** (n - 1) * lm * ln


def basis_cochain(m: int, out_dim: int, degree: int, index: int) -> Cochain:
    """The ``index``-th basis cochain in the lexicographic order."""
    keys = list(Cochain.zero(m, out_dim, degree).keys())
    key = keys[index // out_dim]
    return Cochain(m, out_dim, degree, {key: {index % out_dim: 1}})


def coboundary_matrix(net: Net, n: int, rep: LeibnizRep | None = None) -> Matrix:
    """Matrix of the degree-``n`` coboundary in the lexicographic cochain bases."""
    if n not in (0, 1, 2, 3):
        raise InputError(f"coboundary matrices are available for n in 0..3, got {n}")
    ctx = net.ctx
    ln, lm = ctx.n, ctx.m
    rows = cochain_space_dim(net, n + 1)
    if n == 0:
        cols = []
        for i, j in wedge_basis(ln):
            M = partial0(net, dense(unit(i), ln), dense(unit(j), ln))
            cols.append(Cochain.from_matrix(M).vector())
        return Matrix.from_columns(cols, rows) if cols else Matrix.zeros(rows, 0)
    rep = rep or induced_rep(net)
    cols = []
    template = Cochain.zero(lm, ln, n - 1)
    for key in template.keys():
        for l in range(ln):
            f = Cochain(lm, ln, n - 1, {key: {l: 1}})
            cols.append(delta_n(rep, f).vector())
    return Matrix.from_columns(cols, rows) if cols else Matrix.zeros(rows, 0)


@dataclass(frozen=True)
class CohomologyReport:
    n: int
    dimC: int
    dimZ: int
    dimB: int
    dimH: int
    degree0_kernel: int | None = None
    cocycles: tuple | None = None

    def to_dict(self) -> dict:
        out = {"n": self.n, "dimC": self.dimC, "dimZ": self.dimZ, "dimB": self.dimB, "dimH": self.dimH}
        if self.degree0_kernel is not None:
            out["degree0_kernel"] = self.degree0_kernel
        return out


def cohomology_dims(net: Net, n: int, *, allow_h3: bool = False, with_cocycles: bool = False) -> CohomologyReport:
    """Dimensions of cocycles, coboundaries and cohomology in degree ``n``."""
    if n not in (1, 2) and not (allow_h3 and n == 3):
        raise InputError(f"cohomology is supported in degrees 1 and 2 (3 behind a flag), got {n}")
    rep = induced_rep(net)
    dimC = cochain_space_dim(net, n)
    d_n = coboundary_matrix(net, n, rep)
    d_prev = coboundary_matrix(net, n - 1, rep)
    r_n = rank(d_n)
    dimZ = dimC - r_n
    dimB = rank(d_prev)
    if dimB > dimZ:
        raise InternalConsistencyError(f"coboundaries (dim {dimB}) exceed cocycles (dim {dimZ})")
    k0 = None
    if n == 1:
        k0 = cochain_space_dim(net, 0) - dimB
    cocycles = tuple(tuple(v) for v in nullspace(d_n)) if with_cocycles else None
    return CohomologyReport(n, dimC, dimZ, dimB, dimZ - dimB, k0, cocycles)


def compare_with_dT(net: Net, f) -> Verdict:
    """``delta^n f = (-1)^{n-1} d_T f`` componentwise, for ``n`` in 1 and 2."""
    ctx = net.ctx
    if isinstance(f, Matrix):
        f = Cochain.from_matrix(f)
    n = f.degree + 1
    if n not in (1, 2):
        raise InputError(f"comparison supported for 1- and 2-cochains, got arity {n}")
    lhs = delta_n(induced_rep(net), f)
    rhs = dT(ctx, net.T, f)
    sign = 1 if n % 2 else -1
    verdict = Verdict("coboundary versus twisted differential")
    chk = verdict.check("comparison", "delta^n f = (-1)^(n-1) d_T f")
    for key in lhs.keys():
        a = dense(lhs.value(*key), ctx.n)
        b = dense(rhs.value(*key), ctx.n)
        chk.compare(key, a, tuple(sign * x for x in b))
    return verdict
