"""JSON formats for algebras, actions, maps, cochains, pairs and Lie actions.

Every rational is written as a string ``"p/q"`` or ``"p"``.  Readers raise
``InputError`` naming the file and the offending location.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .actions import ActionTensor
from .algebras import BiBracket, LieAlgebra, LieTripleSystem, ThreeLeibnizAlgebra, TriBracket
from .deformations import WedgePair
from .exact import InputError, Matrix, format_rational, to_rational
from .graded import Cochain
from .liebridge import LieActionTensor


class _Where:
    """Prefixes input errors with a file path and a location."""

    def __init__(self, source: str):
        self.source = source

    def fail(self, where: str, msg: str):
        raise InputError(f"{self.source}: {where}: {msg}")

    def get(self, obj: dict, key: str, where: str, kind=None):
        if not isinstance(obj, dict):
            self.fail(where, "expected an object")
        if key not in obj:
            self.fail(where, f"missing field '{key}'")
        val = obj[key]
        if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is int:
            self.fail(f"{where}.{key}", f"expected {getattr(kind, '__name__', kind)}")
        return val

    def rational(self, x, where: str):
        try:
            return to_rational(x)
        except InputError as exc:
            self.fail(where, str(exc))

    def index(self, x, bound: int, where: str) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            self.fail(where, f"index must be an integer, got {x!r}")
        if not 0 <= x < bound:
            self.fail(where, f"index {x} out of range 0..{bound - 1}")
        return x

    def matrix(self, rows, where: str, shape=None) -> Matrix:
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            self.fail(where, "matrix must be a list of rows")
        data = [[self.rational(c, f"{where}[{i}][{j}]") for j, c in enumerate(r)] for i, r in enumerate(rows)]
        ncols = len(data[0]) if data else (shape[1] if shape else 0)
        if any(len(r) != ncols for r in data):
            self.fail(where, "rows have different lengths")
        M = Matrix.from_rows(data, ncols)
        if shape is not None and M.shape != tuple(shape):
            self.fail(where, f"matrix has shape {M.shape}, expected {tuple(shape)}")
        return M

    def out_vector(self, obj, bound: int, where: str) -> dict:
        if not isinstance(obj, dict):
            self.fail(where, "expected an object mapping output indices to rationals")
        out = {}
        for k, c in obj.items():
            try:
                idx = int(k)
            except (TypeError, ValueError):
                self.fail(where, f"output key {k!r} is not an index")
            self.index(idx, bound, f"{where}[{k!r}]")
            out[idx] = self.rational(c, f"{where}[{k!r}]")
        return out


def _out(v: dict) -> dict:
    return {str(l): format_rational(c) for l, c in sorted(v.items())}


def _rows(M: Matrix) -> list:
    return M.to_strings()


# -- algebras -------------------------------------------------------------------

def algebra_to_json(alg) -> dict:
    if isinstance(alg, LieAlgebra) or isinstance(alg, BiBracket):
        b = alg.bracket if isinstance(alg, LieAlgebra) else alg
        kind = "lie"
    else:
        b = alg.bracket if hasattr(alg, "bracket") else alg
        kind = "3leibniz" if isinstance(alg, ThreeLeibnizAlgebra) else "lts"
    labels = list(getattr(alg, "labels", None) or [f"e{i + 1}" for i in range(b.dim)])
    return {
        "kind": kind,
        "dim": b.dim,
        "basis": labels,
        "brackets": [{"args": list(k), "out": _out(v)} for k, v in sorted(b.table.items())],
    }


def parse_algebra(data: Any, source: str = "<algebra>", validate: bool = True):
    """Algebra object from JSON; ``validate=False`` returns the raw bracket and labels."""
    w = _Where(source)
    kind = w.get(data, "kind", "algebra", str)
    if kind not in ("lts", "lie", "3leibniz"):
        w.fail("algebra.kind", f"unknown kind {kind!r}")
    dim = w.get(data, "dim", "algebra", int)
    if dim < 0:
        w.fail("algebra.dim", "dimension must be non-negative")
    labels = data.get("basis")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        w.fail("algebra.basis", f"expected {dim} basis names")
    arity = 2 if kind == "lie" else 3
    table = {}
    for n, entry in enumerate(w.get(data, "brackets", "algebra", list)):
        where = f"brackets[{n}]"
        args = w.get(entry, "args", where, list)
        if len(args) != arity:
            w.fail(f"{where}.args", f"expected {arity} indices")
        key = tuple(w.index(a, dim, f"{where}.args[{i}]") for i, a in enumerate(args))
        if key in table:
            w.fail(f"{where}.args", f"duplicate entry {list(key)}")
        table[key] = w.out_vector(w.get(entry, "out", where), dim, f"{where}.out")
    bracket = BiBracket(dim, table) if kind == "lie" else TriBracket(dim, table)
    if not validate:
        return kind, bracket, labels
    cls = {"lie": LieAlgebra, "lts": LieTripleSystem, "3leibniz": ThreeLeibnizAlgebra}[kind]
    return cls(bracket, labels)


# -- actions, maps, pairs ----------------------------------------------------------------

def action_to_json(act: ActionTensor) -> dict:
    return {
        "acting_dim": act.acting_dim,
        "acted_dim": act.acted_dim,
        "theta": [{"x": i, "y": j, "matrix": _rows(M)} for (i, j), M in sorted(act.theta.items())],
    }


def parse_action(data: Any, source: str = "<action>") -> ActionTensor:
    w = _Where(source)
    n = w.get(data, "acting_dim", "action", int)
    m = w.get(data, "acted_dim", "action", int)
    theta = {}
    for k, entry in enumerate(w.get(data, "theta", "action", list)):
        where = f"theta[{k}]"
        i = w.index(w.get(entry, "x", where), n, f"{where}.x")
        j = w.index(w.get(entry, "y", where), n, f"{where}.y")
        if (i, j) in theta:
            w.fail(where, f"duplicate pair {(i, j)}")
        theta[(i, j)] = w.matrix(w.get(entry, "matrix", where), f"{where}.matrix", (m, m))
    return ActionTensor(n, m, theta)


def map_to_json(M: Matrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "matrix": _rows(M)}


def parse_map(data: Any, source: str = "<map>") -> Matrix:
    w = _Where(source)
    rows = w.get(data, "rows", "map", int)
    cols = w.get(data, "cols", "map", int)
    return w.matrix(w.get(data, "matrix", "map", list), "map.matrix", (rows, cols))


def pair_to_json(p: WedgePair) -> dict:
    return {"a": [format_rational(x) for x in p.a], "b": [format_rational(x) for x in p.b]}


def parse_pair(data: Any, source: str = "<pair>") -> WedgePair:
    w = _Where(source)
    a = w.get(data, "a", "pair", list)
    b = w.get(data, "b", "pair", list)
    if len(a) != len(b):
        w.fail("pair", "vectors a and b have different lengths")
    return WedgePair(tuple(w.rational(x, f"pair.a[{i}]") for i, x in enumerate(a)),
                     tuple(w.rational(x, f"pair.b[{i}]") for i, x in enumerate(b)))


# -- cochains ------------------------------------------------------------------------

def cochain_to_json(f: Cochain, space: str = "F") -> dict:
    return {
        "space": space,
        "arity": f.arity,
        "dim": f.dim,
        "out_dim": f.out_dim,
        "entries": [{"pairs": [list(p) for p in pairs], "last": last, "value": _out(v)}
                    for (pairs, last), v in f.items()],
    }


def parse_cochain(data: Any, source: str = "<cochain>", dim: int | None = None,
                  out_dim: int | None = None) -> tuple:
    """``(space, Cochain)``; dimensions come from the file or from the caller."""
    w = _Where(source)
    space = w.get(data, "space", "cochain", str)
    if space not in ("F", "E"):
        w.fail("cochain.space", f"unknown space {space!r}")
    arity = w.get(data, "arity", "cochain", int)
    if not 1 <= arity <= 5:
        w.fail("cochain.arity", f"arity {arity} outside 1..5")
    expected = {"dim": dim, "out_dim": out_dim}
    for field, want in expected.items():
        got = data.get(field)
        if got is not None and want is not None and got != want:
            w.fail(f"cochain.{field}", f"{field} is {got}, the context needs {want}")
    dim = data.get("dim", dim)
    out_dim = data.get("out_dim", out_dim if space == "F" else dim)
    if not isinstance(dim, int) or not isinstance(out_dim, int):
        w.fail("cochain", "dimensions unknown; give 'dim' and 'out_dim' or a context")
    values = {}
    for k, entry in enumerate(w.get(data, "entries", "cochain", list)):
        where = f"entries[{k}]"
        pairs = w.get(entry, "pairs", where, list)
        if len(pairs) != arity - 1:
            w.fail(f"{where}.pairs", f"expected {arity - 1} pairs")
        canon = []
        for t, p in enumerate(pairs):
            if not isinstance(p, list) or len(p) != 2:
                w.fail(f"{where}.pairs[{t}]", "a pair is a list of two indices")
            i = w.index(p[0], dim, f"{where}.pairs[{t}][0]")
            j = w.index(p[1], dim, f"{where}.pairs[{t}][1]")
            if not i < j:
                w.fail(f"{where}.pairs[{t}]", f"pair [{i}, {j}] must satisfy i < j")
            canon.append((i, j))
        last = w.index(w.get(entry, "last", where), dim, f"{where}.last")
        key = (tuple(canon), last)
        if key in values:
            w.fail(where, "duplicate entry")
        values[key] = w.out_vector(w.get(entry, "value", where), out_dim, f"{where}.value")
    return space, Cochain(dim, out_dim, arity - 1, values)


# -- Lie actions ----------------------------------------------------------------------

def lie_action_to_json(rho: LieActionTensor) -> dict:
    return {
        "acting_dim": rho.acting_dim,
        "acted_dim": rho.acted_dim,
        "rho": [{"x": i, "matrix": _rows(M)} for i, M in sorted(rho.rho.items())],
    }


def parse_lie_action(data: Any, source: str = "<rho>", acting_dim: int | None = None,
                     acted_dim: int | None = None) -> LieActionTensor:
    w = _Where(source)
    entries = w.get(data, "rho", "lie action", list)
    n = data.get("acting_dim", acting_dim)
    m = data.get("acted_dim", acted_dim)
    if not isinstance(n, int) or not isinstance(m, int):
        w.fail("lie action", "dimensions unknown; give 'acting_dim' and 'acted_dim' or the algebras")
    rho = {}
    for k, entry in enumerate(entries):
        where = f"rho[{k}]"
        i = w.index(w.get(entry, "x", where), n, f"{where}.x")
        if i in rho:
            w.fail(where, f"duplicate index {i}")
        rho[i] = w.matrix(w.get(entry, "matrix", where), f"{where}.matrix", (m, m))
    return LieActionTensor(n, m, rho)


# -- files ---------------------------------------------------------------------------

def load_json(path: str | Path) -> tuple:
    """``(data, sha256)`` of a JSON file."""
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: cannot read file: {exc.strerror}") from exc
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc
    return data, hashlib.sha256(raw).hexdigest()


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
