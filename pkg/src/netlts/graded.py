"""Cochains with wedge-pair slots, the shuffle composition and its graded
commutator, and the derived brackets controlling embedding tensors.

A cochain of degree ``d`` takes ``d`` pair slots ``x ^ y`` followed by one
plain slot.  Values are stored on canonical keys ``(pairs, last)`` where
every pair ``(i, j)`` has ``i < j``.  Cochains are lazy: values are computed
on demand and memoized, so derived brackets only evaluate what a caller
actually asks for.

Signs: a degree-0 cochain (a linear map) contributes no sign when inserted,
so every graded sign attached to the map T is +1.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .exact import (
    InputError,
    Matrix,
    SparseVec,
    accumulate,
    canonical_pair,
    dense,
    shuffles,
    to_rational,
    unit,
    wedge_basis,
    wedge_coefficients,
)

MAX_DEGREE = 4

Key = tuple  # (pairs: tuple[tuple[int, int], ...], last: int)


def _scaled(v: SparseVec, c) -> SparseVec:
    if c == 0:
        return {}
    return {k: x * c for k, x in v.items()}


class Cochain:
    """Multilinear map ``(^2 V)^d (x) V -> W`` with ``dim V = dim`` and ``dim W = out_dim``."""

    __slots__ = ("dim", "out_dim", "degree", "_fn", "_memo")

    def __init__(self, dim: int, out_dim: int, degree: int,
                 values: dict | None = None, fn: Callable | None = None):
        if degree < 0 or degree > MAX_DEGREE:
            raise InputError(f"cochain degree {degree} outside 0..{MAX_DEGREE}")
        self.dim, self.out_dim, self.degree = dim, out_dim, degree
        self._memo: dict = {}
        if values is not None:
            for key, vec in values.items():
                pairs, last = self._check_key(key)
                v = {int(l): to_rational(c) for l, c in vec.items() if to_rational(c) != 0}
                if any(not 0 <= l < out_dim for l in v):
                    raise InputError(f"cochain output index out of range at {key}")
                if v:
                    self._memo[(pairs, last)] = v
            self._fn = lambda key: {}
        else:
            self._fn = fn or (lambda key: {})

    def _check_key(self, key) -> Key:
        pairs, last = key
        pairs = tuple(tuple(int(a) for a in p) for p in pairs)
        if len(pairs) != self.degree:
            raise InputError(f"key {key} has {len(pairs)} pair slots, expected {self.degree}")
        for i, j in pairs:
            if not (0 <= i < j < self.dim):
                raise InputError(f"pair {(i, j)} is not canonical (need 0 <= i < j < {self.dim})")
        if not 0 <= int(last) < self.dim:
            raise InputError(f"final slot index {last} out of range")
        return pairs, int(last)

    @property
    def arity(self) -> int:
        return self.degree + 1

    # -- evaluation ---------------------------------------------------------

    def value(self, pairs: tuple, last: int) -> SparseVec:
        """Value on canonical basis pairs; do not mutate the result."""
        key = (pairs, last)
        v = self._memo.get(key)
        if v is None:
            v = self._fn(key)
            self._memo[key] = v
        return v

    def at(self, pairs: Sequence, last: int) -> SparseVec:
        """Value on arbitrary basis pairs; reorders and drops degenerate pairs."""
        sign = 1
        canon = []
        for i, j in pairs:
            c = canonical_pair(i, j)
            if c is None:
                return {}
            sign *= c[0]
            canon.append(c[1])
        return _scaled(self.value(tuple(canon), last), sign)

    def evaluate(self, slots: Sequence[SparseVec], z: SparseVec) -> SparseVec:
        """Multilinear evaluation; each slot is a sparse combination of canonical pairs."""
        out: SparseVec = {}
        if not z or any(not s for s in slots):
            return out
        for combo in itertools.product(*(s.items() for s in slots)):
            coef = Fraction(1)
            for _, c in combo:
                coef *= c
            pairs = tuple(p for p, _ in combo)
            for k, ck in z.items():
                v = self.value(pairs, k)
                if v:
                    accumulate(out, v, coef * ck)
        return out

    def __call__(self, *args) -> tuple:
        """Dense evaluation: ``f((x1, y1), ..., z)`` with dense vectors."""
        *pairs, z = args
        if len(pairs) != self.degree:
            raise InputError(f"expected {self.degree} pair arguments")
        slots = [wedge_coefficients(_sp(x), _sp(y)) for x, y in pairs]
        return dense(self.evaluate(slots, _sp(z)), self.out_dim)

    # -- enumeration ----------------------------------------------------------

    def keys(self) -> Iterator[Key]:
        """All canonical keys, lexicographic on (pairs, last)."""
        wb = wedge_basis(self.dim)
        for pairs in itertools.product(wb, repeat=self.degree):
            for last in range(self.dim):
                yield pairs, last

    def items(self) -> Iterator[tuple]:
        for key in self.keys():
            v = self.value(*key)
            if v:
                yield key, v

    def materialize(self) -> "Cochain":
        return Cochain(self.dim, self.out_dim, self.degree, dict(self.items()))

    def is_zero(self) -> bool:
        return not any(self.value(*key) for key in self.keys())

    def first_nonzero(self):
        for key, v in self.items():
            return key, v
        return None

    def vector(self) -> list:
        """Coordinates in the lexicographic basis (key-major, output index minor)."""
        out = []
        for key in self.keys():
            out.extend(dense(self.value(*key), self.out_dim))
        return out

    # -- linear structure -----------------------------------------------------

    def _same_shape(self, other: "Cochain") -> None:
        if (self.dim, self.out_dim, self.degree) != (other.dim, other.out_dim, other.degree):
            raise InputError("cochains of different shapes cannot be combined")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same_shape(other)
        return Cochain(self.dim, self.out_dim, self.degree,
                       fn=lambda k: accumulate(dict(self.value(*k)), other.value(*k)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same_shape(other)
        return Cochain(self.dim, self.out_dim, self.degree,
                       fn=lambda k: accumulate(dict(self.value(*k)), other.value(*k), -1))

    def scale(self, c) -> "Cochain":
        c = to_rational(c) if not isinstance(c, Fraction) else c
        return Cochain(self.dim, self.out_dim, self.degree, fn=lambda k: _scaled(self.value(*k), c))

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def __rmul__(self, c) -> "Cochain":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        if (self.dim, self.out_dim, self.degree) != (other.dim, other.out_dim, other.degree):
            return False
        return all(self.value(*k) == other.value(*k) for k in self.keys())

    __hash__ = None

    def __repr__(self) -> str:
        return f"Cochain(dim={self.dim}, out_dim={self.out_dim}, degree={self.degree})"

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, out_dim: int, degree: int) -> "Cochain":
        return cls(dim, out_dim, degree, {})

    @classmethod
    def from_matrix(cls, M: Matrix) -> "Cochain":
        """Degree-0 cochain of a linear map; column ``k`` is the image of ``e_k``."""
        return cls(M.cols, M.rows, 0, {((), k): M.sparse_column(k) for k in range(M.cols)})

    @classmethod
    def from_trilinear(cls, dim: int, table: dict) -> "Cochain":
        """Degree-1 cochain ``x ^ y (x) z -> [x, y, z]``; the product must be skew in x, y."""
        values = {}
        for (i, j, k), v in table.items():
            if i < j:
                values[((i, j),), k] = v
            elif i > j:
                mirror = table.get((j, i, k), {})
                if accumulate(dict(v), mirror) != {}:
                    raise InputError(f"product is not skew in its first two slots at {(i, j, k)}")
            else:
                raise InputError(f"product does not vanish on a repeated pair at {(i, j, k)}")
        return cls(dim, dim, 1, values)

    def to_matrix(self) -> Matrix:
        if self.degree != 0:
            raise InputError("only degree-0 cochains are matrices")
        return Matrix.from_columns([dense(self.value((), k), self.out_dim) for k in range(self.dim)],
                                   self.out_dim)


def _sp(x) -> SparseVec:
    if isinstance(x, dict):
        return x
    return {i: to_rational(c) for i, c in enumerate(x) if to_rational(c) != 0}


def _wedge_left(q: SparseVec, y: int) -> SparseVec:
    """Canonical coefficients of ``q ^ e_y``."""
    out: SparseVec = {}
    for l, c in q.items():
        cp = canonical_pair(l, y)
        if cp is not None:
            s, p = cp
            out[p] = out.get(p, 0) + s * c
    return {p: c for p, c in out.items() if c != 0}


def _wedge_right(x: int, q: SparseVec) -> SparseVec:
    """Canonical coefficients of ``e_x ^ q``."""
    return {p: -c for p, c in _wedge_left(q, x).items()}


# -- composition and bracket ----------------------------------------------------

def circ(P: Cochain, Q: Cochain) -> Cochain:
    """Shuffle composition ``P o Q`` of degree ``p + q``."""
    if not (P.dim == P.out_dim == Q.dim == Q.out_dim):
        raise InputError("composition needs cochains on one common space")
    p, q = P.degree, Q.degree
    if p + q > MAX_DEGREE:
        raise InputError(f"composition degree {p + q} exceeds {MAX_DEGREE}")
    tail_sign = -1 if (p * q) % 2 else 1
    inner = [(k, -1 if ((k - 1) * q) % 2 else 1, shuffles(k - 1, q)) for k in range(1, p + 1)]
    final = shuffles(p, q)

    def fn(key: Key) -> SparseVec:
        X, x = key
        out: SparseVec = {}
        for k, sk, shs in inner:
            xk, yk = X[k + q - 1]
            rest = [{pr: 1} for pr in X[k + q:]]
            for sh in shs:
                before = [{X[i]: 1} for i in sh.first]
                qargs = tuple(X[i] for i in sh.second)
                c = sk * sh.sign
                left = _wedge_left(Q.value(qargs, xk), yk)
                if left:
                    accumulate(out, P.evaluate(before + [left] + rest, {x: 1}), c)
                right = _wedge_right(xk, Q.value(qargs, yk))
                if right:
                    accumulate(out, P.evaluate(before + [right] + rest, {x: 1}), c)
        for sh in final:
            qv = Q.value(tuple(X[i] for i in sh.second), x)
            if qv:
                accumulate(out, P.evaluate([{X[i]: 1} for i in sh.first], qv), tail_sign * sh.sign)
        return out

    return Cochain(P.dim, P.dim, p + q, fn=fn)


def bracket_3la(P: Cochain, Q: Cochain) -> Cochain:
    """``P o Q - (-1)^{pq} Q o P``."""
    sign = -1 if (P.degree * Q.degree) % 2 else 1
    return circ(P, Q) - circ(Q, P).scale(sign)


# -- the V-data on L (+) L' ---------------------------------------------------------

def build_delta(ctx) -> Cochain:
    """The hemisemidirect product as a degree-1 cochain on L (+) L' (L indices first)."""
    return Cochain.from_trilinear(ctx.n + ctx.m, ctx.hemi.table)


def f_cochain(ctx, degree: int, values: dict | None = None, fn=None) -> Cochain:
    """Cochain on L' with values in L."""
    return Cochain(ctx.m, ctx.n, degree, values, fn)


def _as_f(ctx, f) -> Cochain:
    if isinstance(f, Matrix):
        ctx.check_map(f)
        return Cochain.from_matrix(f)
    if (f.dim, f.out_dim) != (ctx.m, ctx.n):
        raise InputError(f"cochain on dim {f.dim} with values in dim {f.out_dim}; "
                         f"expected L' (dim {ctx.m}) to L (dim {ctx.n})")
    return f


def include_F(ctx, f) -> Cochain:
    """Extend ``f`` to L (+) L' by precomposing with the projection to L' in every slot."""
    f = _as_f(ctx, f)
    n = ctx.n

    def fn(key: Key) -> SparseVec:
        pairs, last = key
        if last < n or any(i < n for i, _ in pairs):
            return {}
        return f.value(tuple((i - n, j - n) for i, j in pairs), last - n)

    return Cochain(n + ctx.m, n + ctx.m, f.degree, fn=fn)


def project_P(ctx, g: Cochain) -> Cochain:
    """Restrict every slot to L' and keep the L-component of the output."""
    n, m = ctx.n, ctx.m
    if g.dim != n + m:
        raise InputError(f"cochain on dim {g.dim}, expected {n + m}")

    def fn(key: Key) -> SparseVec:
        pairs, last = key
        v = g.value(tuple((i + n, j + n) for i, j in pairs), last + n)
        return {l: c for l, c in v.items() if l < n}

    return Cochain(m, n, g.degree, fn=fn)


def _delta(ctx) -> Cochain:
    cache = ctx._cache
    if "delta" not in cache:
        cache["delta"] = build_delta(ctx)
    return cache["delta"]


def l1(ctx, f) -> Cochain:
    """``P[Delta, f]``."""
    return project_P(ctx, bracket_3la(_delta(ctx), include_F(ctx, f)))


def l3(ctx, P, Q, R) -> Cochain:
    """``P[[[Delta, P], Q], R]``."""
    inner = bracket_3la(bracket_3la(_delta(ctx), include_F(ctx, P)), include_F(ctx, Q))
    return project_P(ctx, bracket_3la(inner, include_F(ctx, R)))


def l2(ctx, P, Q) -> Cochain:
    """``P[[Delta, P], Q]``; identically zero, computed for verification."""
    return project_P(ctx, bracket_3la(bracket_3la(_delta(ctx), include_F(ctx, P)), include_F(ctx, Q)))


def mc_residual(ctx, T: Matrix) -> Cochain:
    """``l1(T) + l3(T, T, T) / 6``."""
    return l1(ctx, T) + l3(ctx, T, T, T).scale(Fraction(1, 6))


def mc_oracle(ctx, T: Matrix) -> Cochain:
    """``-T[u,v,w]' + [Tu,Tv,Tw] - T D(Tu,Tv)w`` by direct evaluation."""
    ctx.check_map(T)
    cols = [T.sparse_column(j) for j in range(T.cols)]

    def fn(key: Key) -> SparseVec:
        ((u, v),), w = key
        out = T.apply_sparse(ctx.Lp.bracket.basis(u, v, w))
        out = _scaled(out, -1)
        accumulate(out, ctx.L.bracket.apply(cols[u], cols[v], cols[w]))
        accumulate(out, T.apply_sparse(ctx.act.d_apply(cols[u], cols[v], unit(w))), -1)
        return out

    return f_cochain(ctx, 1, fn=fn)


# -- twisting by a net ---------------------------------------------------------------

def _require_net(ctx, T: Matrix) -> None:
    from .embedding import is_net

    if not is_net(ctx, T):
        raise InputError("twisting needs a nonabelian embedding tensor")


def twisted_l1(ctx, T: Matrix, f, *, checked: bool = False) -> Cochain:
    if not checked:
        _require_net(ctx, T)
    return l1(ctx, f) + l3(ctx, T, T, f).scale(Fraction(1, 2))


def twisted_l2(ctx, T: Matrix, f, g, *, checked: bool = False) -> Cochain:
    if not checked:
        _require_net(ctx, T)
    return l3(ctx, T, f, g)


def twisted_l3(ctx, T: Matrix, f, g, h, *, checked: bool = False) -> Cochain:
    if not checked:
        _require_net(ctx, T)
    return l3(ctx, f, g, h)


def twisted_mc_residual(ctx, T: Matrix, Tt: Matrix) -> Cochain:
    """``l1T(Tt) + l2T(Tt, Tt) / 2 + l3T(Tt, Tt, Tt) / 6``."""
    _require_net(ctx, T)
    ctx.check_map(Tt)
    return (twisted_l1(ctx, T, Tt, checked=True)
            + twisted_l2(ctx, T, Tt, Tt, checked=True).scale(Fraction(1, 2))
            + twisted_l3(ctx, T, Tt, Tt, Tt, checked=True).scale(Fraction(1, 6)))


def dT(ctx, T: Matrix, f) -> Cochain:
    """The differential ``l1(f) + l3(T, T, f) / 2`` of the twisted structure."""
    return twisted_l1(ctx, T, f)


# -- helpers for tests and the command line -------------------------------------------

def graded_jacobi(P: Cochain, Q: Cochain, R: Cochain) -> Cochain:
    """``(-1)^{pr}[[P,Q],R] + (-1)^{qp}[[Q,R],P] + (-1)^{rq}[[R,P],Q]``."""
    p, q, r = P.degree, Q.degree, R.degree

    def s(e):
        return -1 if e % 2 else 1

    return (bracket_3la(bracket_3la(P, Q), R).scale(s(p * r))
            + bracket_3la(bracket_3la(Q, R), P).scale(s(q * p))
            + bracket_3la(bracket_3la(R, P), Q).scale(s(r * q)))


def fundamental_defect(pi: Cochain) -> Cochain:
    """``pi(pi(x1,y1,x2),y2,x) + pi(x2,pi(x1,y1,y2),x) + pi(x2,y2,pi(x1,y1,x)) - pi(x1,y1,pi(x2,y2,x))``."""
    if pi.degree != 1:
        raise InputError("fundamental defect needs a degree-1 cochain")

    def fn(key: Key) -> SparseVec:
        ((x1, y1), (x2, y2)), x = key
        a = pi.value(((x1, y1),), x2)
        b = pi.value(((x1, y1),), y2)
        c = pi.value(((x1, y1),), x)
        out = pi.evaluate([_wedge_left(a, y2)], {x: 1})
        accumulate(out, pi.evaluate([_wedge_right(x2, b)], {x: 1}))
        accumulate(out, pi.evaluate([{(x2, y2): 1}], c))
        accumulate(out, pi.evaluate([{(x1, y1): 1}], pi.value(((x2, y2),), x)), -1)
        return out

    return Cochain(pi.dim, pi.out_dim, 2, fn=fn)


def closed_form_delta_T(ctx, T: Matrix, scale_twice: bool = False) -> Cochain:
    """Closed forms of ``[Delta, T]`` and (``scale_twice``) ``[[Delta, T], T]`` on L (+) L'."""
    n, m = ctx.n, ctx.m
    N = n + m
    L, Lp, act = ctx.L.bracket, ctx.Lp.bracket, ctx.act

    def split(i: int):
        return (unit(i), {}) if i < n else ({}, unit(i - n))

    def Tm(u: SparseVec) -> SparseVec:
        return T.apply_sparse(u)

    def fn(key: Key) -> SparseVec:
        ((i, j),), k = key
        a, u = split(i)
        b, v = split(j)
        c, w = split(k)
        Tu, Tv, Tw = Tm(u), Tm(v), Tm(w)
        first: SparseVec = {}
        second: SparseVec = {}
        if not scale_twice:
            accumulate(first, L.apply(Tu, b, c))
            accumulate(first, L.apply(a, b, Tw))
            accumulate(first, L.apply(a, Tv, c))
            inner = act.d_apply(a, b, w)
            accumulate(inner, Lp.apply(u, v, w))
            accumulate(first, Tm(inner), -1)
            accumulate(second, act.d_apply(a, Tv, w))
            accumulate(second, act.d_apply(Tu, b, w))
        else:
            accumulate(first, L.apply(Tu, Tv, c), 2)
            accumulate(first, L.apply(Tu, b, Tw), 2)
            accumulate(first, L.apply(a, Tv, Tw), 2)
            inner = act.d_apply(Tu, b, w)
            accumulate(inner, act.d_apply(a, Tv, w))
            accumulate(first, Tm(inner), -2)
            accumulate(second, act.d_apply(Tu, Tv, w), 2)
        out = dict(first)
        for l, cval in second.items():
            out[n + l] = cval
        return {l: cval for l, cval in out.items() if cval != 0}

    return Cochain(N, N, 1, fn=fn)


def embed_map(ctx, T: Matrix) -> Cochain:
    """``T`` as the degree-0 cochain ``(a, u) -> (Tu, 0)`` on L (+) L'."""
    return include_F(ctx, T)


def random_cochain(rng, dim: int, out_dim: int, degree: int, density: float = 0.5,
                   values: Sequence = (-2, -1, 1, 2, Fraction(1, 2), Fraction(-1, 3))) -> Cochain:
    """Sparse random cochain with small rational entries, drawn from ``rng`` (a ``random.Random``)."""
    data = {}
    for pairs in itertools.product(wedge_basis(dim), repeat=degree):
        for last in range(dim):
            v = {}
            for l in range(out_dim):
                if rng.random() < density:
                    v[l] = Fraction(rng.choice(values))
            if v:
                data[(pairs, last)] = v
    return Cochain(dim, out_dim, degree, data)
