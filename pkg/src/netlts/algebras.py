"""Structure-constant Lie algebras, Lie triple systems and 3-Leibniz algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exact import (
    InputError,
    Matrix,
    SparseVec,
    accumulate,
    dense,
    nullspace,
    sparse,
    span_basis,
    to_rational,
    trilinear_apply,
    unit,
)
from .verdict import Verdict, VerificationError


def _freeze(vec: Mapping) -> dict:
    return {int(l): to_rational(c) for l, c in vec.items() if to_rational(c) != 0}


@dataclass(frozen=True, eq=False)
class TriBracket:
    """Trilinear product given by ``table[(i, j, k)] = [e_i, e_j, e_k]`` (sparse)."""

    dim: int
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, vec in self.table.items():
            if len(key) != 3 or any(not 0 <= int(a) < self.dim for a in key):
                raise InputError(f"bracket index {key} out of range for dim {self.dim}")
            v = _freeze(sparse(vec) if not isinstance(vec, dict) else vec)
            if any(not 0 <= l < self.dim for l in v):
                raise InputError(f"bracket output index out of range at {key}")
            if v:
                clean[tuple(int(a) for a in key)] = v
        object.__setattr__(self, "table", clean)

    @classmethod
    def zero(cls, dim: int) -> "TriBracket":
        return cls(dim, {})

    def basis(self, i: int, j: int, k: int) -> SparseVec:
        return self.table.get((i, j, k), {})

    def apply(self, x: SparseVec, y: SparseVec, z: SparseVec) -> SparseVec:
        return trilinear_apply(self.table, x, y, z)

    def __call__(self, x: Sequence, y: Sequence, z: Sequence) -> tuple:
        return dense(self.apply(sparse(x), sparse(y), sparse(z)), self.dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, TriBracket) and self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.table.items()))))

    def left_operator(self, i: int, j: int) -> Matrix:
        """Matrix of ``[e_i, e_j, -]``."""
        return Matrix.from_columns([dense(self.basis(i, j, k), self.dim) for k in range(self.dim)],
                                   self.dim)

    def left_operator_of(self, a: Sequence, b: Sequence) -> Matrix:
        sa, sb = sparse(a), sparse(b)
        return Matrix.from_columns(
            [dense(self.apply(sa, sb, unit(k)), self.dim) for k in range(self.dim)], self.dim)

    def is_abelian(self) -> bool:
        return not self.table


@dataclass(frozen=True, eq=False)
class BiBracket:
    """Bilinear product ``table[(i, j)] = [e_i, e_j]`` (sparse)."""

    dim: int
    table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, vec in self.table.items():
            if len(key) != 2 or any(not 0 <= int(a) < self.dim for a in key):
                raise InputError(f"bracket index {key} out of range for dim {self.dim}")
            v = _freeze(sparse(vec) if not isinstance(vec, dict) else vec)
            if any(not 0 <= l < self.dim for l in v):
                raise InputError(f"bracket output index out of range at {key}")
            if v:
                clean[tuple(int(a) for a in key)] = v
        object.__setattr__(self, "table", clean)

    def basis(self, i: int, j: int) -> SparseVec:
        return self.table.get((i, j), {})

    def apply(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for i, ci in x.items():
            for j, cj in y.items():
                v = self.table.get((i, j))
                if v:
                    accumulate(out, v, ci * cj)
        return out

    def __call__(self, x: Sequence, y: Sequence) -> tuple:
        return dense(self.apply(sparse(x), sparse(y)), self.dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiBracket) and self.dim == other.dim and self.table == other.table

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.table.items()))))

    def ad(self, i: int) -> Matrix:
        return Matrix.from_columns([dense(self.basis(i, k), self.dim) for k in range(self.dim)],
                                   self.dim)


# -- verification -------------------------------------------------------------

def _d(v: SparseVec, n: int) -> tuple:
    return dense(v, n)


def verify_lts(b: TriBracket) -> Verdict:
    """Skew symmetry, cyclic identity and fundamental identity on basis tuples."""
    n = b.dim
    verdict = Verdict("lie triple system")
    skew = verdict.check("2.1", "[x,y,z] + [y,x,z] = 0")
    cyclic = verdict.check("2.2", "[x,y,z] + [z,x,y] + [y,z,x] = 0")
    fundamental = verdict.check("2.3", "[a,b,[x,y,z]] = [[a,b,x],y,z] + [x,[a,b,y],z] + [x,y,[a,b,z]]")
    zero = _d({}, n)
    for x, y, z in itertools.product(range(n), repeat=3):
        skew.compare((x, y, z), _d(b.basis(x, y, z), n), _d(accumulate({}, b.basis(y, x, z), -1), n))
        s = accumulate(accumulate(dict(b.basis(x, y, z)), b.basis(z, x, y)), b.basis(y, z, x))
        cyclic.compare((x, y, z), _d(s, n), zero)
    _fundamental_identity(b, fundamental)
    return verdict


def _fundamental_identity(b: TriBracket, chk) -> None:
    n = b.dim
    for a, bb, x, y, z in itertools.product(range(n), repeat=5):
        ex, ey, ez = unit(x), unit(y), unit(z)
        lhs = b.apply(unit(a), unit(bb), b.basis(x, y, z))
        rhs = b.apply(b.basis(a, bb, x), ey, ez)
        accumulate(rhs, b.apply(ex, b.basis(a, bb, y), ez))
        accumulate(rhs, b.apply(ex, ey, b.basis(a, bb, z)))
        chk.compare((a, bb, x, y, z), _d(lhs, n), _d(rhs, n))


def verify_3leibniz(b: TriBracket) -> Verdict:
    """Fundamental identity on all basis 5-tuples."""
    verdict = Verdict("3-Leibniz algebra")
    _fundamental_identity(
        b, verdict.check("2.12", "[s,t,[u,v,w]] = [[s,t,u],v,w] + [u,[s,t,v],w] + [u,v,[s,t,w]]"))
    return verdict


def verify_lie(b: BiBracket) -> Verdict:
    n = b.dim
    verdict = Verdict("Lie algebra")
    anti = verdict.check("antisymmetry", "[x,y] = -[y,x]")
    jacobi = verdict.check("jacobi", "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0")
    for i, j in itertools.product(range(n), repeat=2):
        anti.compare((i, j), _d(b.basis(i, j), n), _d(accumulate({}, b.basis(j, i), -1), n))
    for x, y, z in itertools.product(range(n), repeat=3):
        s = b.apply(unit(x), b.basis(y, z))
        accumulate(s, b.apply(unit(y), b.basis(z, x)))
        accumulate(s, b.apply(unit(z), b.basis(x, y)))
        jacobi.compare((x, y, z), _d(s, n), _d({}, n))
    return verdict


def verify_tri_homomorphism(f: Matrix, src: TriBracket, dst: TriBracket, name: str = "homomorphism") -> Verdict:
    """``f[u,v,w] = [fu,fv,fw]`` on basis triples of the source."""
    if f.shape != (dst.dim, src.dim):
        raise InputError(f"map of shape {f.shape} cannot send dim {src.dim} to dim {dst.dim}")
    verdict = Verdict(name)
    chk = verdict.check("hom", "f[u,v,w] = [fu,fv,fw]")
    cols = [f.sparse_column(j) for j in range(src.dim)]
    for u, v, w in itertools.product(range(src.dim), repeat=3):
        lhs = f.apply_sparse(src.basis(u, v, w))
        rhs = dst.apply(cols[u], cols[v], cols[w])
        chk.compare((u, v, w), _d(lhs, dst.dim), _d(rhs, dst.dim))
    return verdict


# -- validated algebras -------------------------------------------------------

def _labels(labels, dim, prefix):
    if labels is None:
        return tuple(f"{prefix}{i + 1}" for i in range(dim))
    labels = tuple(str(x) for x in labels)
    if len(labels) != dim:
        raise InputError(f"{len(labels)} basis labels for dimension {dim}")
    return labels


@dataclass(frozen=True)
class LieTripleSystem:
    bracket: TriBracket
    labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "labels", _labels(self.labels, self.bracket.dim, "e"))
        verdict = verify_lts(self.bracket)
        if not verdict.passed:
            raise VerificationError(f"not a Lie triple system: {verdict.witness}", verdict)

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def __call__(self, x, y, z) -> tuple:
        return self.bracket(x, y, z)


@dataclass(frozen=True)
class ThreeLeibnizAlgebra:
    bracket: TriBracket
    labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "labels", _labels(self.labels, self.bracket.dim, "e"))
        verdict = verify_3leibniz(self.bracket)
        if not verdict.passed:
            raise VerificationError(f"not a 3-Leibniz algebra: {verdict.witness}", verdict)

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def __call__(self, x, y, z) -> tuple:
        return self.bracket(x, y, z)


@dataclass(frozen=True)
class LieAlgebra:
    bracket: BiBracket
    labels: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "labels", _labels(self.labels, self.bracket.dim, "e"))
        verdict = verify_lie(self.bracket)
        if not verdict.passed:
            raise VerificationError(f"not a Lie algebra: {verdict.witness}", verdict)

    @property
    def dim(self) -> int:
        return self.bracket.dim

    def __call__(self, x, y) -> tuple:
        return self.bracket(x, y)


def _bracket_of(alg) -> TriBracket:
    return alg.bracket if hasattr(alg, "bracket") else alg


def center(alg) -> list:
    """Basis of ``{x : [x,y,z] = 0 for all y, z}``."""
    b = _bracket_of(alg)
    n = b.dim
    rows = []
    for y, z in itertools.product(range(n), repeat=2):
        for l in range(n):
            rows.append([b.basis(x, y, z).get(l, Fraction(0)) for x in range(n)])
    return nullspace(Matrix.from_rows(rows, n)) if rows else []


def derived_subsystem(alg) -> list:
    """Basis of the span of all products ``[x, y, z]``."""
    b = _bracket_of(alg)
    n = b.dim
    return span_basis([dense(v, n) for v in b.table.values()], n)


def in_span(v: Sequence, basis: Sequence[Sequence], n: int) -> bool:
    if all(x == 0 for x in v):
        return True
    return len(span_basis(list(basis) + [v], n)) == len(span_basis(basis, n))
