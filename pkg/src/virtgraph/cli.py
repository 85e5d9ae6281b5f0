"""Command-line front end.

Exit codes: 0 result computed (a failing sweep verdict is still a result),
1 usage error, 2 refused because a work cap would be exceeded, 3 invalid
input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import graphs, intrinsic, invariants, moves, vgd
from .diagram import linking_number
from .errors import (
    CapExceeded,
    ComponentOutOfRange,
    DiagramError,
    GraphError,
    NotClassical,
    VirtgraphError,
)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    state_sum_cap: int
    sweep_cap: int
    workers: int
    output: str


def _config(args) -> RunConfig:
    state = args.state_cap or int(os.environ.get("VIRTGRAPH_STATE_SUM_CAP", invariants.DEFAULT_STATE_SUM_CAP))
    sweep = args.sweep_cap or int(os.environ.get("VIRTGRAPH_SWEEP_CAP", intrinsic.DEFAULT_SWEEP_CAP))
    if state <= 0 or sweep <= 0:
        raise UsageError("caps must be positive")
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    return RunConfig(state, sweep, max(1, workers), args.format)


def _emit(obj, cfg: RunConfig, out=None) -> None:
    if cfg.output == "text":
        text = "\n".join(f"{k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}"
                         for k, v in sorted(obj.items())) + "\n"
    else:
        text = json.dumps(obj, sort_keys=True) + "\n"
    _write(text, out)


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _pair(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected two indices 'i,j'") from None
    return i, j


def _over(text: str | None, count: int) -> list[int] | None:
    if text is None or text == "all-positive":
        return None
    if text == "all-negative":
        return [-1] * count
    if len(text) != count or set(text) - {"+", "-"}:
        raise UsageError(f"--signs needs 'all-positive', 'all-negative' or {count} characters of + and -")
    return [1 if ch == "+" else -1 for ch in text]


def _convex(g, order_text, signs_text):
    order = [int(v) for v in order_text.split(",")] if order_text else None
    base = graphs.convex_diagram(g, order)
    over = _over(signs_text, len(base.classical_crossings()))
    return base if over is None else graphs.convex_diagram(g, order, over)


# ---------------------------------------------------------------- commands


def cmd_bracket(args, cfg):
    d = vgd.load(args.file)
    _emit({"bracket": invariants.bracket(d, cfg.state_sum_cap).to_string("A")}, cfg)


def cmd_jones(args, cfg):
    d = vgd.load(args.file)
    _emit({"jones": str(invariants.jones(d, cfg.state_sum_cap))}, cfg)


def cmd_lk(args, cfg):
    d = vgd.load(args.file)
    i, j = args.components
    h = linking_number(d, i, j)
    _emit({"halves": h.halves, "lk": str(h)}, cfg)


def cmd_decompose(args, cfg):
    d = vgd.load(args.file)
    dec = invariants.npq(d, args.crossing, cfg.state_sum_cap)
    _emit(
        {
            "crossing": args.crossing,
            "r": dec.r.to_string("A"),
            "s": dec.s.to_string("A"),
            "z": dec.z.to_string("A"),
            "n": str(dec.n),
            "p": str(dec.p),
            "q": str(dec.q),
            "w": dec.w,
        },
        cfg,
    )


def cmd_skein(args, cfg):
    d = vgd.load(args.file)
    report = invariants.verify_skein(d, args.crossing, cfg.state_sum_cap)
    _emit({"crossing": args.crossing, "identities": report, "all_hold": all(report.values())}, cfg)


def cmd_vu(args, cfg):
    d = vgd.load(args.file)
    _emit(invariants.vu_bounds(d, args.budget, cfg.state_sum_cap).to_dict(), cfg)


def cmd_simplify(args, cfg):
    d = vgd.load(args.file)
    _write(vgd.dumps(moves.simplify(d)), args.out)


def cmd_gen(args, cfg):
    if args.kind == "twist":
        if args.n is None:
            raise UsageError("gen twist needs --n")
        _write(vgd.dumps(graphs.twist_knot_diagram(args.n)), args.out)
        return
    if not args.graph:
        raise UsageError(f"gen {args.kind} needs --graph")
    g = graphs.named_graph(args.graph)
    if args.kind == "graph":
        _write(graphs.dumps_edges(g), args.out)
    else:
        _write(vgd.dumps(_convex(g, args.order, args.signs)), args.out)


def cmd_family(args, cfg):
    seed = graphs.named_graph(args.seed)
    members = graphs.dy_closure(seed, inverse=args.two_way)
    rows = []
    for k, m in enumerate(members):
        name = f"{args.seed}_{k:02d}.edges"
        rows.append(
            {
                "file": name,
                "vertices": m.graph.n,
                "edges": m.graph.m,
                "triangle_free": m.triangle_free,
                "parent": m.parent,
                "exchange": list(m.triangle) if m.triangle else None,
            }
        )
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / name).write_text(graphs.dumps_edges(m.graph))
    manifest = {"seed": args.seed, "two_way": args.two_way, "classes": len(members), "members": rows}
    if args.out:
        (Path(args.out) / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    _emit(manifest, cfg)


def cmd_cg(args, cfg):
    g = graphs.named_graph(args.graph)
    d = _convex(g, args.order, args.signs)
    if args.sweep:
        order = [int(v) for v in args.order.split(",")] if args.order else None
        report = intrinsic.cg_sweep(g, order, args.expected, sweep_cap=cfg.sweep_cap)
        _emit(report.to_dict(), cfg)
    else:
        _emit({"residue": intrinsic.conway_gordon_sum(d, g)}, cfg)


def _graph_file(path):
    try:
        return graphs.load_edges(path)
    except ValueError as exc:
        raise GraphError(f"{path}: {exc}") from None


def cmd_ivl(args, cfg):
    d = vgd.load(args.file)
    g = _graph_file(args.graph_file)
    report = intrinsic.ivl_sweep(
        d, g, args.n, args.sweep_signs, cfg.workers, cfg.state_sum_cap, cfg.sweep_cap
    )
    _emit(report.to_dict(), cfg)


def cmd_ivk(args, cfg):
    d = vgd.load(args.file)
    g = _graph_file(args.graph_file)
    report = intrinsic.ivk_sweep(
        d, g, args.n, args.sweep_signs, cfg.workers, cfg.state_sum_cap, cfg.sweep_cap
    )
    _emit(report.to_dict(), cfg)


def cmd_knot_sum(args, cfg):
    g = graphs.named_graph(args.graph)
    d = _convex(g, args.order, args.signs)
    total = intrinsic.knot_arf_sum(d, g, cfg.workers, cfg.state_sum_cap)
    _emit({"arf_sum": total, "hamiltonian_cycles": len(graphs.hamiltonian_cycles(g))}, cfg)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="virtgraph", description="Virtual knot and spatial graph invariants.")
    p.add_argument("--state-cap", type=int, help="max classical crossings in a state sum (default 26)")
    p.add_argument("--sweep-cap", type=int, help="max cases in a sweep (default 2^26)")
    p.add_argument("--workers", type=int, help="worker processes (default: all CPUs)")
    p.add_argument("--format", choices=["json", "text"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def diagram_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="VGD diagram file")
        sp.set_defaults(fn=fn)
        return sp

    diagram_cmd("bracket", cmd_bracket, "bracket polynomial in A")
    diagram_cmd("jones", cmd_jones, "Jones polynomial in t")
    diagram_cmd("lk", cmd_lk, "linking number of two components").add_argument(
        "--components", type=_pair, required=True, metavar="I,J"
    )
    diagram_cmd("decompose", cmd_decompose, "r, s, z and n, p, q at a crossing").add_argument(
        "--crossing", type=int, required=True
    )
    diagram_cmd("skein", cmd_skein, "check skein relations at a crossing").add_argument(
        "--crossing", type=int, required=True
    )
    diagram_cmd("vu", cmd_vu, "virtual unknotting number bounds").add_argument(
        "--budget", type=int, required=True
    )
    diagram_cmd("simplify", cmd_simplify, "reduce with R1, R2, VR1, VR2").add_argument("--out")

    sp = sub.add_parser("gen", help="write a graph, a convex graph diagram or a twist knot")
    sp.add_argument("kind", nargs="?", choices=["graph", "convex", "twist"], default="graph")
    sp.add_argument("--graph")
    sp.add_argument("--order", help="comma-separated vertex order around the circle")
    sp.add_argument("--signs", help="all-positive, all-negative, or one +/- per crossing")
    sp.add_argument("--n", type=int)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("family", help="Delta-Y closure of a seed graph")
    sp.add_argument("--seed", required=True)
    sp.add_argument("--out", help="directory for edge lists and manifest.json")
    sp.add_argument("--two-way", action="store_true", help="also allow Y-Delta exchanges")
    sp.set_defaults(fn=cmd_family)

    sp = sub.add_parser("cg", help="Conway-Gordon linking residue")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--order")
    sp.add_argument("--signs")
    sp.add_argument("--sweep", action="store_true", help="all over/under choices")
    sp.add_argument("--expected", type=int, default=1)
    sp.set_defaults(fn=cmd_cg)

    for name, fn in (("ivl", cmd_ivl), ("ivk", cmd_ivk)):
        sp = sub.add_parser(name, help=f"{name} sweep over virtualization subsets")
        sp.add_argument("file", help="VGD graph diagram")
        sp.add_argument("--graph-file", required=True)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--sweep-signs", action="store_true")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("knot-sum", help="Arf sum over Hamiltonian cycles")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--order")
    sp.add_argument("--signs")
    sp.set_defaults(fn=cmd_knot_sum)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        args.fn(args, cfg)
    except UsageError as exc:
        print(f"virtgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"virtgraph: refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ComponentOutOfRange, NotClassical) as exc:
        print(f"virtgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DiagramError, GraphError, OSError) as exc:
        print(f"virtgraph: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VirtgraphError as exc:
        print(f"virtgraph: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
