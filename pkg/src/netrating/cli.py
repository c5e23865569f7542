"""Command-line interface: ``netrating <subcommand> ...``.

Every subcommand prints a human-readable table, or with ``--json`` a record
holding the command line, SHA-256 digests of the input files, seed and grid
step (when used), the result payload and the wall-clock time. Rationals are
written as ``p/q``. Exit codes: 0 success, 1 invalid input, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from netrating import io as nio
from netrating.exceptions import NetRatingError
from netrating.expectation import PlacementScenario, expected_revenue_exact, expected_revenue_mc
from netrating.experiments import bound_sweep, monotonic_series
from netrating.model import System, influence_weights, initial_utility, o_rating, p_ratings
from netrating.optimize import DEFAULT_ENUMERATION_CAP, GridSpec, brute_force_best, o_greedy, p_greedy
from netrating.strategy import RevenueReport, Strategy, is_efficient, revenue

fr = nio.format_rational


class Output:
    """Collects table lines; renders rationals with an optional decimal."""

    def __init__(self, decimal: bool):
        self.decimal = decimal
        self.lines = []

    def q(self, x) -> str:
        if x is None:
            return "-"
        s = fr(x)
        return f"{s} ({float(x):.6g})" if self.decimal else s

    def add(self, line=""):
        self.lines.append(line)

    def table(self, header, rows):
        cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
        for r in cells:
            self.add("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _system(text: str) -> System:
    try:
        return System.coerce(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return nio.parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _strategy_payload(sigma: Strategy, labels) -> dict:
    return {labels[c]: fr(b) for c, b in enumerate(sigma.bribes) if b != 0}


def _report_payload(rep: RevenueReport, labels) -> dict:
    return {
        "system": rep.system.value,
        "u0": fr(rep.u0),
        "u_sigma": fr(rep.u_sigma),
        "revenue": fr(rep.revenue),
        "profitable": rep.profitable,
        "bribed": [labels[c] for c in sorted(rep.bribed)],
        "total_spent": fr(rep.total_spent),
    }


def _show_report(out: Output, rep: RevenueReport, labels):
    out.add(f"system       {rep.system.value}")
    out.add(f"u0           {out.q(rep.u0)}")
    out.add(f"u_sigma      {out.q(rep.u_sigma)}")
    out.add(f"revenue      {out.q(rep.revenue)}")
    out.add(f"bribed       {', '.join(labels[c] for c in sorted(rep.bribed)) or '-'}")
    out.add(f"total spent  {out.q(rep.total_spent)}")


def _load(args, ctx):
    inst = nio.load_instance(args.network, args.eval)
    ctx["inputs"]["network"] = {"path": str(args.network), "sha256": _digest(args.network)}
    ctx["inputs"]["eval"] = {"path": str(args.eval), "sha256": _digest(args.eval)}
    return inst, list(inst.labels)


def _load_strategy(args, inst, ctx):
    sigma = nio.load_strategy(args.strategy, inst)
    ctx["inputs"]["strategy"] = {"path": str(args.strategy), "sha256": _digest(args.strategy)}
    return sigma


def cmd_rate(args, out, ctx):
    inst, labels = _load(args, ctx)
    u0 = initial_utility(inst, args.system)
    if args.system is System.O:
        rating = o_rating(inst.profile)
        out.add(f"O-rating  {out.q(rating)}")
        out.add(f"u0_O      {out.q(u0)}")
        return {"system": "O", "o_rating": fr(rating), "u0": fr(u0)}
    ratings = p_ratings(inst)
    out.table(["customer", "P-rating"], [(labels[c], out.q(r)) for c, r in enumerate(ratings)])
    out.add(f"u0_P  {out.q(u0)}")
    return {"system": "P", "ratings": {labels[c]: fr(r) for c, r in enumerate(ratings)}, "u0": fr(u0)}


def cmd_weights(args, out, ctx):
    inst, labels = _load(args, ctx)
    vs = range(inst.n) if args.all_voters else None
    ws = influence_weights(inst, vs)
    out.table(["customer", "weight"], [(labels[c], out.q(w)) for c, w in enumerate(ws)])
    return {"voter_set": "all" if args.all_voters else "current", "weights": {labels[c]: fr(w) for c, w in enumerate(ws)}}


def cmd_revenue(args, out, ctx):
    inst, labels = _load(args, ctx)
    sigma = _load_strategy(args, inst, ctx)
    rep = revenue(inst, sigma, args.system)
    _show_report(out, rep, labels)
    eff = is_efficient(inst, sigma)
    out.add(f"efficient    {eff}")
    return {"report": _report_payload(rep, labels), "efficient": eff}


def cmd_greedy(args, out, ctx):
    inst, labels = _load(args, ctx)
    sigma = o_greedy(inst) if args.system is System.O else p_greedy(inst)
    rep = revenue(inst, sigma, args.system)
    name = "O-greedy" if args.system is System.O else "P-greedy"
    out.add(f"{name} strategy")
    out.table(["customer", "bribe"], [(labels[c], out.q(b)) for c, b in enumerate(sigma.bribes) if b != 0] or [("-", "-")])
    out.add()
    _show_report(out, rep, labels)
    return {"strategy": _strategy_payload(sigma, labels), "report": _report_payload(rep, labels)}


def cmd_oracle(args, out, ctx):
    inst, labels = _load(args, ctx)
    grid = GridSpec(args.step)
    ctx["step"] = fr(grid.step)
    res = brute_force_best(inst, args.system, grid, cap=args.cap)
    proof = res.best_revenue == 0
    verdict = "bribery-proof on grid" if proof else "not bribery-proof on grid"
    out.add(f"system               {res.system.value}")
    out.add(f"grid step            {fr(grid.step)}")
    out.add(f"strategies examined  {res.strategies_examined}")
    out.add(f"best revenue         {out.q(res.best_revenue)}")
    out.add("best strategy        " + (", ".join(f"{labels[c]}={fr(b)}" for c, b in enumerate(res.best_strategy.bribes) if b) or "zero"))
    out.add(f"verdict              {verdict}")
    return {
        "system": res.system.value,
        "best_revenue": fr(res.best_revenue),
        "best_strategy": _strategy_payload(res.best_strategy, labels),
        "strategies_examined": res.strategies_examined,
        "bribery_proof": proof,
        "verdict": verdict,
    }


def cmd_expect(args, out, ctx):
    inst, labels = _load(args, ctx)
    sigma = _load_strategy(args, inst, ctx)
    scenario = PlacementScenario(inst.network, inst.profile, sigma, args.system)
    if args.exact:
        res = expected_revenue_exact(scenario, cap=args.cap, table=args.table)
    else:
        ctx["seed"] = args.seed
        res = expected_revenue_mc(scenario, args.samples, args.seed, table=args.table)
    label = "expected revenue" if res.exact else "sample mean"
    out.add(f"{label:<19}{out.q(res.value)}")
    if not res.exact:
        se = res.standard_error
        out.add(f"{'standard error':<19}{'-' if se is None else f'{se:.6g}'}")
    out.add(f"{'placements':<19}{res.placements_evaluated}")
    out.add(f"{'canonical budget':<19}{out.q(res.budget)} (spent {out.q(sigma.total)})")
    out.add(f"{'placement check':<19}{scenario.validation}")
    payload = {
        "system": scenario.system.value,
        "exact": res.exact,
        "value": fr(res.value),
        "standard_error": res.standard_error,
        "placements_evaluated": res.placements_evaluated,
        "canonical_budget": fr(res.budget),
        "total_spent": fr(sigma.total),
        "placement_check": scenario.validation,
    }
    if res.revenue_counts is not None:
        out.add()
        out.table(["revenue", "placements"], [(out.q(r), n) for r, n in sorted(res.revenue_counts.items())])
        payload["revenue_counts"] = {fr(r): n for r, n in sorted(res.revenue_counts.items())}
    return payload


def cmd_gen(args, out, ctx):
    if args.kind == "gnp":
        if args.p is None or args.seed is None:
            raise argparse.ArgumentTypeError("gnp needs an edge probability and --seed")
        ctx["seed"] = args.seed
    net = nio.generate(args.kind, args.size, args.p, args.seed)
    text = nio.format_edges(net)
    if args.output:
        Path(args.output).write_text(text)
        out.add(f"wrote {net.n} customers, {len(net.edges())} edges to {args.output}")
    else:
        out.lines.extend(text.rstrip("\n").split("\n"))
    return {"kind": args.kind, "n": net.n, "edges": [list(e) for e in net.edges()]}


def cmd_monotonic(args, out, ctx):
    inst, labels = _load(args, ctx)
    sigma = _load_strategy(args, inst, ctx)
    anchor = None
    if args.anchor is not None:
        if args.anchor not in labels:
            raise NetRatingError(f"unknown anchor customer {args.anchor!r}")
        anchor = labels.index(args.anchor)
    res = monotonic_series(inst, sigma, k_max=args.k_max, anchor=anchor, k_min=args.k_min)
    out.table(["k", "r_O", "r_P"], [(k, out.q(ro), out.q(rp)) for k, ro, rp in res.rows])
    out.add()
    out.add(f"anchor                     {labels[res.anchor]} (outside N(B): {res.anchor_outside_reach})")
    out.add(f"O-rating gain              {out.q(res.rating_gain)}")
    out.add(f"r_O strictly increasing    {res.r_o_strictly_increasing}")
    out.add(f"r_P constant               {res.r_p_constant}")
    return {
        "anchor": labels[res.anchor],
        "anchor_outside_reach": res.anchor_outside_reach,
        "o_rating_gain": fr(res.rating_gain),
        "rows": [{"k": k, "r_O": fr(ro), "r_P": fr(rp)} for k, ro, rp in res.rows],
        "r_O_strictly_increasing": res.r_o_strictly_increasing,
        "r_P_constant": res.r_p_constant,
    }


def cmd_bound(args, out, ctx):
    inst, labels = _load(args, ctx)
    grid = GridSpec(args.step)
    ctx["step"] = fr(grid.step)
    rows = bound_sweep(inst, grid)
    out.table(
        ["customer", "|N(c)|", "bribes", "max r_P", "holds"],
        [(labels[r.customer], r.bound, r.bribes_tried, out.q(r.max_revenue), r.holds) for r in rows],
    )
    ok = all(r.holds for r in rows)
    out.add()
    out.add(f"bound holds for every single bribe: {ok}")
    return {
        "rows": [
            {
                "customer": labels[r.customer],
                "bound": r.bound,
                "bribes_tried": r.bribes_tried,
                "max_revenue": None if r.max_revenue is None else fr(r.max_revenue),
                "holds": r.holds,
            }
            for r in rows
        ],
        "all_hold": ok,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netrating", description="Network-based rating systems and bribery.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, instance=True, system=True, strategy=False):
        if instance:
            p.add_argument("-n", "--network", required=True, help="edge-list file")
            p.add_argument("-e", "--eval", required=True, help="label,value evaluation CSV")
        if strategy:
            p.add_argument("-s", "--strategy", required=True, help="label,bribe strategy CSV")
        if system:
            p.add_argument("--system", type=_system, default=System.P, help="o or p (default p)")
        p.add_argument("--json", action="store_true", help="print a machine-readable record")
        p.add_argument("--decimal", action="store_true", help="also show decimal values")
        return p

    common(sub.add_parser("rate", help="O-rating or per-customer P-ratings and u0")).set_defaults(func=cmd_rate)
    p = common(sub.add_parser("weights", help="influence weight table"), system=False)
    p.add_argument("--all-voters", action="store_true", help="weights for V = C instead of the current voters")
    p.set_defaults(func=cmd_weights)
    common(sub.add_parser("revenue", help="score a strategy file"), strategy=True).set_defaults(func=cmd_revenue)
    common(sub.add_parser("greedy", help="O-greedy or P-greedy strategy")).set_defaults(func=cmd_greedy)

    p = common(sub.add_parser("oracle", help="exhaustive grid search for the best strategy"))
    p.add_argument("--step", type=_rational, default=Fraction(1, 10), help="grid step (default 1/10)")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP, help="maximum raw grid size")
    p.set_defaults(func=cmd_oracle)

    p = common(sub.add_parser("expect", help="expected revenue over unknown placements"), strategy=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true", help="enumerate all n! placements")
    mode.add_argument("--samples", type=int, help="Monte Carlo sample count")
    p.add_argument("--seed", type=int, help="seed for --samples")
    p.add_argument("--cap", type=int, default=9, help="largest n for --exact (default 9)")
    p.add_argument("--table", action="store_true", help="list distinct per-placement revenues")
    p.set_defaults(func=cmd_expect)

    p = common(sub.add_parser("gen", help="generate a network edge list"), instance=False, system=False)
    p.add_argument("kind", choices=sorted(nio.GENERATORS))
    p.add_argument("size", type=int, help="arms for star, node count otherwise")
    p.add_argument("p", nargs="?", type=float, help="edge probability (gnp)")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output", help="write the edge list here instead of stdout")
    p.set_defaults(func=cmd_gen)

    exp = sub.add_parser("experiment", help="population experiments").add_subparsers(dest="experiment", required=True)
    p = common(exp.add_parser("monotonic", help="add k non-voters, track r_O and r_P"), system=False, strategy=True)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--k-min", type=int, default=0)
    p.add_argument("--anchor", help="voter the new non-voters attach to (default: first voter outside N(B))")
    p.set_defaults(func=cmd_monotonic)
    p = common(exp.add_parser("bound", help="check r_P < |N(c)| over single-bribe sweeps"), system=False)
    p.add_argument("--step", type=_rational, default=Fraction(1, 10))
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", None) is not None:
        if args.seed is None:
            parser.error("--samples needs --seed")
        if args.samples < 1:
            parser.error("--samples must be at least 1")
    ctx = {"inputs": {}, "seed": None, "step": None}
    out = Output(args.decimal)
    start = time.perf_counter()
    try:
        payload = args.func(args, out, ctx)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))
    except (NetRatingError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - start
    if args.json:
        record = {
            "command": ["netrating"] + argv,
            "inputs": ctx["inputs"],
            "seed": ctx["seed"],
            "step": ctx["step"],
            "result": payload,
            "elapsed_seconds": elapsed,
        }
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print("\n".join(out.lines))
    return 0


if __name__ == "__main__":
    sys.exit(main())
