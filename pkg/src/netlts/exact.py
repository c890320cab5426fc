"""Exact rational linear algebra, wedge-pair indexing and shuffle enumeration.

Scalars are :class:`fractions.Fraction`.  Dense vectors are tuples of
fractions; the multilinear engines work on sparse vectors, plain dicts
mapping a basis index to a nonzero coefficient.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence

Vector = tuple  # tuple[Fraction, ...]
SparseVec = dict  # dict[int, Fraction], zero entries never stored

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class InputError(ValueError):
    """Malformed or inconsistent user input (bad rational, shape, index)."""


def to_rational(x) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to an exact rational.

    Floats are refused: the whole library is exact.
    """
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.match(x):
            raise InputError(f"not a rational string: {x!r}")
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(f"zero denominator: {x!r}") from None
    raise InputError(f"not a rational: {x!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> Vector:
    return tuple(to_rational(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def is_zero_vector(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def add_vectors(*vs: Sequence) -> Vector:
    return tuple(sum(xs, Fraction(0)) for xs in zip(*vs))


def scale_vector(c, v: Sequence) -> Vector:
    return tuple(c * x for x in v)


# -- sparse vectors ---------------------------------------------------------

def sparse(v) -> SparseVec:
    if isinstance(v, dict):
        return {i: Fraction(c) for i, c in v.items() if c != 0}
    return {i: Fraction(c) for i, c in enumerate(v) if c != 0}


def dense(v: SparseVec, n: int) -> Vector:
    out = [Fraction(0)] * n
    for i, c in v.items():
        out[i] = c
    return tuple(out)


def unit(i: int) -> SparseVec:
    return {i: Fraction(1)}


def accumulate(acc: SparseVec, v: SparseVec, coef=1) -> SparseVec:
    """``acc += coef * v`` in place; returns ``acc``."""
    if coef == 0:
        return acc
    for i, c in v.items():
        s = acc.get(i, 0) + coef * c
        if s:
            acc[i] = s
        else:
            acc.pop(i, None)
    return acc


# -- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Immutable rational matrix; column ``j`` is the image of basis vector ``j``."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise InputError(f"ragged matrix data for shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = tuple(tuple(to_rational(x) for x in r) for r in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [tuple(to_rational(x) for x in c) for c in columns]
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(basis_vector(n, i) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = [to_rational(v) for v in values]
        n = len(vals)
        return cls(n, n, tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n))
                               for i in range(n)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int, value=1) -> "Matrix":
        data = [[0] * cols for _ in range(rows)]
        data[i][j] = value
        return cls.from_rows(data, cols)

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def sparse_column(self, j: int) -> SparseVec:
        return {i: r[j] for i, r in enumerate(self.entries) if r[j] != 0}

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise InputError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((a * x for a, x in zip(r, v) if a and x), Fraction(0))
                     for r in self.entries)

    def apply_sparse(self, v: SparseVec) -> SparseVec:
        out: SparseVec = {}
        for j, c in v.items():
            for i in range(self.rows):
                a = self.entries[i][j]
                if a:
                    s = out.get(i, 0) + a * c
                    if s:
                        out[i] = s
                    else:
                        del out[i]
        return out

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise InputError(f"cannot compose {self.shape} with {other.shape}")
            cols_b = [other.column(j) for j in range(other.cols)]
            return Matrix(self.rows, other.cols,
                          tuple(tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0))
                                      for c in cols_b) for r in self.entries))
        return self.apply(other)

    def _binary(self, other: "Matrix", op) -> "Matrix":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.rows, self.cols,
                      tuple(tuple(op(a, b) for a, b in zip(r, s))
                            for r, s in zip(self.entries, other.entries)))

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._binary(other, lambda a, b: a + b)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._binary(other, lambda a, b: a - b)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    __rmul__ = scale

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                      tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise InputError("only square matrices are invertible")
        n = self.rows
        aug = [list(r) + list(basis_vector(n, i)) for i, r in enumerate(self.entries)]
        red, pivots = _rref_rows(aug, n)
        if pivots != list(range(n)):
            raise InputError("matrix is singular")
        return Matrix(n, n, tuple(tuple(r[n:]) for r in red[:n]))

    def to_strings(self) -> list:
        return [[format_rational(a) for a in r] for r in self.entries]


def _rref_rows(rows: list, ncols: int | None = None):
    """Reduced row echelon form of a list of rows, pivoting only in the first ``ncols`` columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    width = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rref(m: Matrix) -> tuple:
    """Return ``(reduced matrix, pivot columns)``."""
    red, pivots = _rref_rows([list(r) for r in m.entries])
    return Matrix(m.rows, m.cols, tuple(tuple(r) for r in red)), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_rows([list(r) for r in m.entries])[1])


def nullspace(m: Matrix) -> list:
    """Basis of the right kernel, one vector per free column (ascending)."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [basis_vector(m.cols, j) for j in range(m.cols)]
    red, pivots = _rref_rows([list(r) for r in m.entries])
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def span_basis(vectors: Sequence[Sequence], n: int) -> list:
    """Reduced echelon basis of the span of ``vectors`` inside k^n."""
    rows = [list(v) for v in vectors if not is_zero_vector(v)]
    if not rows:
        return []
    red, pivots = _rref_rows(rows, n)
    return [tuple(r) for r in red[:len(pivots)]]


# -- wedge pairs --------------------------------------------------------------

def canonical_pair(i: int, j: int):
    """Canonicalize ``e_i ^ e_j`` to ``(sign, (min, max))``; ``None`` when ``i == j``."""
    if i < j:
        return 1, (i, j)
    if i > j:
        return -1, (j, i)
    return None


def wedge_basis(n: int) -> list:
    return list(itertools.combinations(range(n), 2))


def wedge_coefficients(x: SparseVec, y: SparseVec) -> SparseVec:
    """Coordinates of ``x ^ y`` in the canonical basis of the exterior square."""
    out: dict = {}
    for a, ca in x.items():
        for b, cb in y.items():
            if a == b:
                continue
            if a < b:
                key, c = (a, b), ca * cb
            else:
                key, c = (b, a), -ca * cb
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


# -- shuffles -----------------------------------------------------------------

@dataclass(frozen=True)
class Shuffle:
    """A (p, q)-shuffle of positions ``0..p+q-1``: ``first`` then ``second``."""

    first: tuple
    second: tuple
    sign: int

    @property
    def permutation(self) -> tuple:
        return self.first + self.second


def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inversions % 2 else 1


def iter_shuffles(p: int, q: int) -> Iterator[Shuffle]:
    if p < 0 or q < 0:
        raise InputError("shuffle block sizes must be non-negative")
    n = p + q
    for first in itertools.combinations(range(n), p):
        chosen = set(first)
        second = tuple(i for i in range(n) if i not in chosen)
        # each element of the first block jumps over (value - position) later-block entries
        parity = sum(v - k for k, v in enumerate(first))
        yield Shuffle(first, second, -1 if parity % 2 else 1)


_SHUFFLE_CACHE: dict = {}


def shuffles(p: int, q: int) -> list:
    """All ``C(p+q, p)`` shuffles, first block in lexicographic order."""
    key = (p, q)
    if key not in _SHUFFLE_CACHE:
        _SHUFFLE_CACHE[key] = tuple(iter_shuffles(p, q))
    return list(_SHUFFLE_CACHE[key])


def shuffle_count(p: int, q: int) -> int:
    return comb(p + q, p)


def trilinear_apply(table: dict, x: SparseVec, y: SparseVec, z: SparseVec) -> SparseVec:
    """Evaluate a trilinear map stored as ``table[(i, j, k)] -> sparse vector``."""
    out: SparseVec = {}
    if not (x and y and z):
        return out
    for i, ci in x.items():
        for j, cj in y.items():
            cij = ci * cj
            for k, ck in z.items():
                v = table.get((i, j, k))
                if v:
                    accumulate(out, v, cij * ck)
    return out
