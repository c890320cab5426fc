"""Command line: one subcommand per construction, JSON reports on stdout.

Exit status is 0 when every check passes, 1 when a check fails (the report
carries a witness) and 2 on malformed input or an unknown subcommand.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import io
from .actions import ActionTensor, hemisemidirect, verify_coherent_action
from .algebras import verify_3leibniz, verify_lie, verify_lts
from .cohomology import cohomology_dims, compare_with_dT
from .deformations import deform_check, equivalence_check, nijenhuis_check, trivial_deform
from .embedding import (
    Net,
    NetContext,
    conjugate_net,
    descendent,
    graph_subalgebra_check,
    net_check,
    net_hom_check,
)
from .exact import InputError
from .graded import dT, mc_residual, twisted_mc_residual
from .liebridge import lie_action_check, lie_net_check, lts_from_lie, transport_check
from .verdict import InternalConsistencyError, Verdict, VerificationError

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class RunReport:
    """Collects inputs, verdicts and results; timings are kept apart."""

    def __init__(self, command: str, witness_limit: int | None = None):
        self.command = command
        self.witness_limit = witness_limit
        self.inputs: dict = {}
        self.verdicts: dict = {}
        self.result: dict = {}
        self.timings: dict = {}
        self.error: str | None = None
        self._t0 = time.perf_counter()

    def load(self, role: str, path: str):
        data, digest = io.load_json(path)
        self.inputs[role] = {"path": str(path), "sha256": digest}
        return data

    def add(self, name: str, verdict: Verdict) -> Verdict:
        self.verdicts[name] = verdict
        return verdict

    @property
    def passed(self) -> bool:
        return self.error is None and all(v.passed for v in self.verdicts.values())

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": {k: v.to_dict(self.witness_limit) for k, v in self.verdicts.items()},
            "result": self.result,
            "passed": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        if timings:
            out["timings"] = {k: f"{v:.6f}" for k, v in self.timings.items()}
        return out


def _zero_verdict(subject: str, key: str, desc: str, cochain) -> Verdict:
    verdict = Verdict(subject)
    chk = verdict.check(key, desc)
    hit = cochain.first_nonzero()
    if hit is None:
        chk.compare((), 0, 0)
    else:
        (pairs, last), value = hit
        chk.compare((pairs, last), io._out(value), {})
    return verdict


# -- input helpers ------------------------------------------------------------------

def _algebra(rep: RunReport, role: str, path: str, kind: str):
    data = rep.load(role, path)
    alg = io.parse_algebra(data, path)
    want = {"lts": "LieTripleSystem", "lie": "LieAlgebra"}[kind]
    if type(alg).__name__ != want:
        raise InputError(f"{path}: algebra: expected kind '{kind}'")
    return alg


def _context(rep: RunReport, args) -> NetContext:
    L = _algebra(rep, "L", args.L, "lts")
    Lp = _algebra(rep, "Lp", args.Lp, "lts") if args.Lp else L
    if args.action:
        act = io.parse_action(rep.load("action", args.action), args.action)
    elif not args.Lp:
        act = ActionTensor.adjoint(L)
    else:
        raise InputError("--action is required when --Lp is given")
    if act.acting_dim != L.dim or act.acted_dim != Lp.dim:
        raise InputError(f"{args.action}: action: shape ({act.acting_dim}, {act.acted_dim}) "
                         f"does not match dims ({L.dim}, {Lp.dim})")
    return NetContext(L, Lp, act)


def _map(rep: RunReport, role: str, path: str, shape=None):
    M = io.parse_map(rep.load(role, path), path)
    if shape is not None and M.shape != shape:
        raise InputError(f"{path}: map: shape {M.shape}, expected {shape}")
    return M


def _net(rep: RunReport, args) -> Net:
    ctx = _context(rep, args)
    T = _map(rep, "map", args.map, (ctx.n, ctx.m))
    return Net(ctx, T)


def _cochain(rep: RunReport, path: str, ctx: NetContext):
    space, f = io.parse_cochain(rep.load("cochain", path), path, ctx.m, ctx.n)
    if space != "F" or f.dim != ctx.m or f.out_dim != ctx.n:
        raise InputError(f"{path}: cochain: expected a cochain on L' with values in L")
    return f


def _pair(rep: RunReport, path: str, n: int):
    p = io.parse_pair(rep.load("pair", path), path)
    if len(p.a) != n:
        raise InputError(f"{path}: pair: vectors must have length {n}")
    return p


# -- handlers ------------------------------------------------------------------------

def cmd_verify(rep, args):
    kind, bracket, _ = io.parse_algebra(rep.load("algebra", args.algebra), args.algebra, validate=False)
    check = {"lts": verify_lts, "lie": verify_lie, "3leibniz": verify_3leibniz}[kind]
    rep.result["kind"] = kind
    rep.add(kind, check(bracket))


def cmd_action_check(rep, args):
    L = _algebra(rep, "L", args.L, "lts")
    Lp = _algebra(rep, "Lp", args.Lp, "lts") if args.Lp else L
    act = io.parse_action(rep.load("action", args.action), args.action)
    rep.add("coherent-action", verify_coherent_action(L, Lp, act))


def cmd_hemi(rep, args):
    ctx = _context(rep, args)
    alg = hemisemidirect(ctx.L, ctx.Lp, ctx.act)
    rep.add("3leibniz", verify_3leibniz(alg.bracket))
    rep.result["algebra"] = io.algebra_to_json(alg)


def cmd_net_check(rep, args):
    ctx = _context(rep, args)
    rep.add("net", net_check(ctx, _map(rep, "map", args.map)))


def cmd_descend(rep, args):
    alg = descendent(_net(rep, args))
    rep.add("3leibniz", verify_3leibniz(alg.bracket))
    rep.result["algebra"] = io.algebra_to_json(alg)


def cmd_graph_check(rep, args):
    ctx = _context(rep, args)
    rep.add("graph", graph_subalgebra_check(ctx, _map(rep, "map", args.map)))


def cmd_hom_check(rep, args):
    ctx = _context(rep, args)
    shape = (ctx.n, ctx.m)
    Tsrc = _map(rep, "src", args.src, shape)
    Tdst = _map(rep, "dst", args.dst, shape)
    f = _map(rep, "f", args.f, (ctx.n, ctx.n))
    fp = _map(rep, "fp", args.fp, (ctx.m, ctx.m))
    rep.add("homomorphism", net_hom_check(ctx, Tsrc, Tdst, f, fp))


def cmd_conjugate(rep, args):
    ctx = _context(rep, args)
    T = _map(rep, "map", args.map, (ctx.n, ctx.m))
    f = _map(rep, "f", args.f, (ctx.n, ctx.n))
    fp = _map(rep, "fp", args.fp, (ctx.m, ctx.m))
    S = conjugate_net(ctx, T, f, fp, include_215=args.include_215)
    rep.add("net", net_check(ctx, S))
    rep.result["map"] = io.map_to_json(S)


def cmd_mc_check(rep, args):
    ctx = _context(rep, args)
    T = _map(rep, "map", args.map, (ctx.n, ctx.m))
    mc = rep.add("mc", _zero_verdict("Maurer-Cartan element", "mc",
                                     "l1(T) + l3(T,T,T)/6 = 0", mc_residual(ctx, T)))
    net = rep.add("net", net_check(ctx, T))
    if mc.passed != net.passed:
        raise InternalConsistencyError("Maurer-Cartan residual disagrees with the net check")


def cmd_twisted_mc(rep, args):
    net = _net(rep, args)
    Tt = _map(rep, "tilde", args.tilde, (net.ctx.n, net.ctx.m))
    res = twisted_mc_residual(net.ctx, net.T, Tt)
    rep.add("twisted-mc", _zero_verdict("twisted Maurer-Cartan element", "twisted-mc",
                                        "l1T + l2T/2 + l3T/6 vanish on T~", res))
    rep.add("net-sum", net_check(net.ctx, net.T + Tt))


def cmd_d_square(rep, args):
    net = _net(rep, args)
    f = _cochain(rep, args.cochain, net.ctx)
    dd = dT(net.ctx, net.T, dT(net.ctx, net.T, f))
    rep.add("d-square", _zero_verdict("square of the twisted differential", "d-square",
                                      "d_T d_T f = 0", dd))


def cmd_cohomology(rep, args):
    report = cohomology_dims(_net(rep, args), args.degree, allow_h3=args.allow_h3)
    rep.result.update(report.to_dict())


def cmd_compare_dt(rep, args):
    net = _net(rep, args)
    rep.add("comparison", compare_with_dT(net, _cochain(rep, args.cochain, net.ctx)))


def cmd_deform_check(rep, args):
    ctx = _context(rep, args)
    shape = (ctx.n, ctx.m)
    T = _map(rep, "map", args.map, shape)
    rep.add("deformation", deform_check(ctx, _map(rep, "t1", args.t1, shape), T))


def cmd_equiv_check(rep, args):
    net = _net(rep, args)
    shape = (net.ctx.n, net.ctx.m)
    T1 = _map(rep, "t1", args.t1, shape)
    T1t = _map(rep, "t1tilde", args.t1tilde, shape)
    rep.add("equivalence", equivalence_check(net, T1, T1t, _pair(rep, args.pair, net.ctx.n)))


def cmd_nijenhuis(rep, args):
    net = _net(rep, args)
    rep.add("nijenhuis", nijenhuis_check(net, _pair(rep, args.pair, net.ctx.n)))


def cmd_trivial_deform(rep, args):
    net = _net(rep, args)
    pair = _pair(rep, args.pair, net.ctx.n)
    rep.add("nijenhuis", nijenhuis_check(net, pair))
    T1 = trivial_deform(net, pair)
    rep.add("deformation", deform_check(net, T1))
    rep.result["map"] = io.map_to_json(T1)


def cmd_lie2lts(rep, args):
    L = _algebra(rep, "algebra", args.algebra, "lie")
    lts = lts_from_lie(L)
    rep.add("lts", verify_lts(lts.bracket))
    rep.result["algebra"] = io.algebra_to_json(lts)


def _lie_inputs(rep, args):
    L = _algebra(rep, "L", args.L, "lie")
    Lp = _algebra(rep, "Lp", args.Lp, "lie") if args.Lp else L
    rho = io.parse_lie_action(rep.load("rho", args.rho), args.rho, L.dim, Lp.dim)
    if rho.acting_dim != L.dim or rho.acted_dim != Lp.dim:
        raise InputError(f"{args.rho}: lie action: shape does not match dims ({L.dim}, {Lp.dim})")
    return L, Lp, rho


def cmd_lie_action_check(rep, args):
    L, Lp, rho = _lie_inputs(rep, args)
    rep.add("lie-action", lie_action_check(L, Lp, rho))


def cmd_lie_net_check(rep, args):
    L, Lp, rho = _lie_inputs(rep, args)
    rep.add("lie-net", lie_net_check(L, Lp, rho, _map(rep, "map", args.map, (L.dim, Lp.dim))))


def cmd_transport(rep, args):
    L, Lp, rho = _lie_inputs(rep, args)
    T = _map(rep, "map", args.map, (L.dim, Lp.dim))
    pre = rep.add("lie-net", lie_net_check(L, Lp, rho, T))
    if pre.passed:
        rep.add("transported-net", transport_check(L, Lp, rho, T))


# -- parser --------------------------------------------------------------------------

def _ctx_args(p, lie: bool = False):
    p.add_argument("--L", required=True, help="acting algebra (JSON)")
    p.add_argument("--Lp", help="acted-on algebra (JSON); defaults to --L")
    if lie:
        p.add_argument("--rho", required=True, help="Lie action (JSON)")
    else:
        p.add_argument("--action", help="action tensor (JSON); defaults to the adjoint action")


COMMANDS = {
    "verify": (cmd_verify, "check the axioms of an algebra", ["algebra"]),
    "action-check": (cmd_action_check, "check a coherent action", ["ctx"]),
    "hemi": (cmd_hemi, "build the hemisemidirect product", ["ctx"]),
    "net-check": (cmd_net_check, "check the embedding tensor equation", ["ctx", "map"]),
    "descend": (cmd_descend, "build the descendent 3-Leibniz algebra", ["ctx", "map"]),
    "graph-check": (cmd_graph_check, "check that the graph is a subalgebra", ["ctx", "map"]),
    "hom-check": (cmd_hom_check, "check a homomorphism of embedding tensors", ["ctx", "hom"]),
    "conjugate": (cmd_conjugate, "conjugate a net by automorphisms", ["ctx", "map", "auto"]),
    "mc-check": (cmd_mc_check, "Maurer-Cartan residual of a map", ["ctx", "map"]),
    "twisted-mc": (cmd_twisted_mc, "twisted Maurer-Cartan residual", ["ctx", "map", "tilde"]),
    "d-square": (cmd_d_square, "check d_T d_T f = 0", ["ctx", "map", "cochain"]),
    "cohomology": (cmd_cohomology, "cohomology dimensions", ["ctx", "map", "degree"]),
    "compare-dt": (cmd_compare_dt, "compare the coboundary with d_T", ["ctx", "map", "cochain"]),
    "deform-check": (cmd_deform_check, "check an infinitesimal deformation", ["ctx", "map", "t1"]),
    "equiv-check": (cmd_equiv_check, "check equivalence of deformations",
                    ["ctx", "map", "t1", "t1tilde", "pair"]),
    "nijenhuis": (cmd_nijenhuis, "check a Nijenhuis element", ["ctx", "map", "pair"]),
    "trivial-deform": (cmd_trivial_deform, "deformation from a Nijenhuis element", ["ctx", "map", "pair"]),
    "lie2lts": (cmd_lie2lts, "Lie triple system of a Lie algebra", ["algebra"]),
    "lie-action-check": (cmd_lie_action_check, "check a coherent Lie action", ["lie"]),
    "lie-net-check": (cmd_lie_net_check, "check a Lie embedding tensor", ["lie", "map"]),
    "transport": (cmd_transport, "transport a Lie embedding tensor", ["lie", "map"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netlts", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, (_, help_, parts) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        for part in parts:
            if part == "algebra":
                p.add_argument("--algebra", required=True)
            elif part == "ctx":
                _ctx_args(p)
            elif part == "lie":
                _ctx_args(p, lie=True)
            elif part == "map":
                p.add_argument("--map", required=True, help="linear map L' -> L (JSON)")
            elif part == "hom":
                for flag in ("--src", "--dst", "--f", "--fp"):
                    p.add_argument(flag, required=True)
            elif part == "auto":
                p.add_argument("--f", required=True)
                p.add_argument("--fp", required=True)
                p.add_argument("--include-215", action="store_true",
                               help="also require f T = T f'")
            elif part == "degree":
                p.add_argument("--degree", type=int, required=True)
                p.add_argument("--allow-h3", action="store_true")
            else:
                p.add_argument(f"--{part}", required=True)
        p.add_argument("--out", help="also write the report to this path")
        p.add_argument("--witness-limit", type=int, default=None, help="cap on reported witnesses")
        p.add_argument("--no-timings", action="store_true", help="omit the timings section")
    return parser


def run_command(name: str, args: argparse.Namespace) -> tuple:
    """``(RunReport, exit status)``."""
    rep = RunReport(name, getattr(args, "witness_limit", None))
    if name not in COMMANDS:
        rep.error = f"unknown command {name!r}"
        return rep, EXIT_INPUT
    handler = COMMANDS[name][0]
    start = time.perf_counter()
    try:
        handler(rep, args)
        code = EXIT_PASS if rep.passed else EXIT_FAIL
    except InputError as exc:
        rep.error = f"input error: {exc}"
        code = EXIT_INPUT
    except VerificationError as exc:
        rep.error = f"precondition failed: {exc}"
        if exc.verdict is not None:
            rep.add("precondition", exc.verdict)
        code = EXIT_FAIL
    except InternalConsistencyError as exc:
        rep.error = f"internal consistency failure: {exc}"
        code = EXIT_FAIL
    rep.timings["total_seconds"] = time.perf_counter() - start
    return rep, code


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        print(io.dumps({"command": argv[0], "error": f"unknown command {argv[0]!r}", "passed": False}))
        return EXIT_INPUT
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    rep, code = run_command(args.command, args)
    text = io.dumps(rep.to_dict(timings=not args.no_timings))
    sys.stdout.write(text)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
