"""Command-line entry point: ``avdcolor {color,exact,verify,gen,bounds,mc}``.

Machine output is JSON on stdout (or ``--out``); a one-line summary goes
to stderr. Every failure exits nonzero with ``{"error": code, "message": ...}``.
"""

from __future__ import annotations

import argparse
import datetime as dt
import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import bounds, montecarlo
from .coloring import verify_avd, verify_proper
from .errors import AvdError, BudgetExhausted
from .exact import SearchConfig, avd_chromatic_number
from .generators import generate
from .graph import MultiGraph
from .io import parse_edge_list, read_coloring, read_graph, serialize_edge_list
from .pipeline import PipelineParams, avd_color_pipeline

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNVERIFIED = 3


def report_hash(report: dict) -> str:
    """SHA-256 of the canonical JSON of ``report`` without its timestamp."""
    body = {k: v for k, v in report.items() if k not in ("timestamp", "report_hash")}
    return hashlib.sha256(_dumps(body).encode()).hexdigest()


def _default(obj: Any):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, default=_default, allow_nan=True)


def _parse_overrides(items: Sequence[str] | None) -> dict[str, str]:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"--params expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _load_graph(args: argparse.Namespace) -> tuple[MultiGraph, str]:
    if args.input:
        if args.input == "-":
            return parse_edge_list(sys.stdin.read()), "stdin"
        return read_graph(args.input), str(args.input)
    if args.family:
        name, *rest = args.family
        return generate(name, *rest), ":".join(args.family)
    raise ValueError("give --input PATH or --family NAME ARGS...")


def _graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", help="edge-list file ('-' for stdin)")
    src.add_argument("--family", nargs="+", metavar="ARG", help="generator, e.g. --family regular 10 3 7")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="avdcolor", description="Adjacent-vertex-distinguishing edge colouring.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here instead of stdout")
    common.add_argument("--format", choices=["json"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("color", parents=[common], help="run the constructive pipeline")
    _graph_args(p)
    p.add_argument("--params", nargs="+", action="extend", metavar="K=V", help="override pipeline constants")
    p.add_argument("--profile", choices=["desk", "asymptotic"], default="desk")
    p.add_argument("--coloring-out", help="also write the colouring JSON here")

    p = sub.add_parser("exact", parents=[common], help="exact avd-chromatic number")
    _graph_args(p)
    p.add_argument("--node-budget", type=int, default=0, help="0 means unlimited")
    p.add_argument("--max-palette", type=int)

    p = sub.add_parser("verify", parents=[common], help="check a colouring file")
    _graph_args(p)
    p.add_argument("--coloring", required=True, help="colouring JSON ({'k', 'colors'})")

    p = sub.add_parser("gen", parents=[common], help="print a generated graph as an edge list")
    p.add_argument("family", nargs="+", metavar="ARG")

    p = sub.add_parser("bounds", parents=[common], help="evaluate the analytic bounds")
    p.add_argument("--delta", type=float, default=1e20)
    p.add_argument("--r-max", type=int, default=10_000)
    p.add_argument("--beta", type=int, default=300)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo of phase-1 membership events")
    _graph_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--params", nargs="+", action="extend", metavar="K=V")
    p.add_argument("--binomial", action="store_true", help="draw binomials at --delta instead of using a graph")
    p.add_argument("--delta", type=int, default=10_000)
    return parser


def _params_for(args: argparse.Namespace, delta: int) -> PipelineParams:
    base = PipelineParams.asymptotic() if getattr(args, "profile", "desk") == "asymptotic" else PipelineParams.desk(delta)
    return base.with_overrides(**_parse_overrides(args.params))


def cmd_color(args: argparse.Namespace) -> tuple[int, dict]:
    g, label = _load_graph(args)
    params = _params_for(args, g.max_degree)
    result = avd_color_pipeline(g, params, seed=args.seed)
    c = result.coloring
    proper_bad = verify_proper(c)
    avd_bad = verify_avd(c) if not proper_bad else []
    report = {"command": "color", "graph": label, **result.report}
    if proper_bad or avd_bad:
        # never emit a colouring that fails verification
        report["error"] = "Unverified"
        report["message"] = f"{len(proper_bad)} conflicts, {len(avd_bad)} equal adjacent pairs"
        return EXIT_UNVERIFIED, report
    report["coloring"] = c.to_json()
    if result.fallback_used:
        report["warnings"] = ["FallbackUsed"]
    if args.coloring_out:
        Path(args.coloring_out).write_text(_dumps(c.to_json()) + "\n")
    return EXIT_OK, report


def cmd_exact(args: argparse.Namespace) -> tuple[int, dict]:
    g, label = _load_graph(args)
    row = {"graph": label, "n": g.n, "m": g.m, "delta": g.max_degree, "chi_avd": None}
    cfg = SearchConfig(max_palette=args.max_palette, node_budget=args.node_budget, seed=args.seed)
    try:
        row["chi_avd"] = avd_chromatic_number(g, cfg)
        row["status"] = "ok"
    except BudgetExhausted as exc:
        row["status"] = "budget_exhausted"
        row["message"] = str(exc)
    return EXIT_OK, {"command": "exact", **row}


def cmd_verify(args: argparse.Namespace) -> tuple[int, dict]:
    g, label = _load_graph(args)
    c = read_coloring(g, args.coloring)
    unused = c.unused_edges()
    conflicts = verify_proper(c)
    pairs = []
    if not unused and not conflicts:
        pairs = [list(p) for p in verify_avd(c)]
    ok = not unused and not conflicts and not pairs
    report = {
        "command": "verify",
        "graph": label,
        "total": not unused,
        "unused_edges": unused,
        "proper": not conflicts,
        "conflicts": [list(p) for p in conflicts],
        "avd": ok,
        "indistinguishable_pairs": pairs,
    }
    if not ok:
        report["error"] = "VerificationFailed"
    return (EXIT_OK if ok else EXIT_ERROR), report


def cmd_gen(args: argparse.Namespace) -> tuple[int, str]:
    name, *rest = args.family
    return EXIT_OK, serialize_edge_list(generate(name, *rest))


def cmd_bounds(args: argparse.Namespace) -> tuple[int, dict]:
    delta = args.delta
    # (20/D)^5 events, each sharing variables with 6 D^5 / 10^8 others; D cancels
    D = 10**6
    lll_exact, ok = bounds.lll_condition(Fraction(20, D) ** 5, Fraction(6 * D**5, 10**8))
    worst_r = max(range(2, args.r_max + 1), key=lambda r: bounds.log_repair_failure_bound(r, args.beta))
    claims = bounds.neighbourhood_claims(delta)
    report = {
        "command": "bounds",
        "lll": {"product": float(lll_exact), "exact": str(lll_exact), "satisfied": ok},
        "membership_tails": bounds.membership_tail_values(),
        "repair": {
            "beta": args.beta,
            "r_max": args.r_max,
            "worst_r": worst_r,
            "worst_value": bounds.repair_failure_bound(worst_r, args.beta),
            "r2": bounds.repair_failure_bound(2, args.beta),
        },
        "collision": {
            "delta": delta,
            "log_bound_k20": bounds.log_symdiff_collision_bound(20, delta, 10, 180),
            "log_target": -7 * math.log(delta),
            "first_k_below_delta_minus_7": bounds.first_k_below(delta, 10, 180, -7 * math.log(delta)),
        },
        "neighbourhood_claims": [
            {"name": c.name, "level": c.level, "cap": c.cap, "log_prob": c.log_prob,
             "log_target": c.log_target, "holds": c.holds}
            for c in claims
        ],
    }
    return EXIT_OK, report


def cmd_mc(args: argparse.Namespace) -> tuple[int, dict]:
    if args.binomial:
        params = PipelineParams.asymptotic().with_overrides(**_parse_overrides(args.params))
        rep = montecarlo.binomial_membership(args.delta, args.trials, args.seed, params)
        label = f"binomial:{args.delta}"
    else:
        g, label = _load_graph(args)
        params = PipelineParams.desk(g.max_degree).with_overrides(**_parse_overrides(args.params))
        rep = montecarlo.monte_carlo_phase1(g, params, args.trials, args.seed)
    out = {"command": "mc", "graph": label, **rep.to_json(), "violations": rep.violations()}
    return EXIT_OK, out


COMMANDS = {
    "color": cmd_color,
    "exact": cmd_exact,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "bounds": cmd_bounds,
    "mc": cmd_mc,
}


def _summary(report: dict) -> str:
    cmd = report.get("command")
    if "error" in report:
        return f"{cmd}: error {report['error']}: {report.get('message', '')}".rstrip()
    if cmd == "color":
        fb = " (fallback)" if report.get("warnings") else ""
        return f"color: {report['graph']} n={report['n']} delta={report['delta']} max colour {report['max_color']}{fb}"
    if cmd == "exact":
        return f"exact: {report['graph']} chi_avd={report['chi_avd']} ({report['status']})"
    if cmd == "verify":
        return f"verify: {'ok' if report['avd'] else 'FAILED'}"
    if cmd == "mc":
        return f"mc: {report['trials']} trials, bound violations {report['violations'] or 'none'}"
    return f"{cmd}: done"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = COMMANDS[args.command](args)
    except (AvdError, ValueError, KeyError, OSError) as exc:
        name = exc.code if isinstance(exc, AvdError) else type(exc).__name__
        payload = {"command": args.command, "error": name, "message": str(exc).strip("'\"")}
        code = EXIT_ERROR
    if isinstance(payload, str):
        _emit(payload, getattr(args, "out", None))
        return code
    payload["timestamp"] = dt.datetime.now(dt.timezone.utc).isoformat()
    payload["report_hash"] = report_hash(payload)
    _emit(_dumps(payload) + "\n", getattr(args, "out", None))
    print(_summary(payload), file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
