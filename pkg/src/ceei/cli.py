"""Command-line front end.

    ceei classify problem.json
    ceei solve problem.json [--rule competitive] [--json]
    ceei enumerate problem.json [--limit-supports N]
    ceei audit problem.json [--axioms --trials N --seed N]
    ceei components problem.json [--grid N]
    ceei demo lambda-family [--json]

Exit codes: 0 success, 1 input/usage error, 2 demo assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import reports
from .audit import check_rule_axioms
from .instances import DEMOS, run_demo
from .io import DocumentError, parse_document


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 1
    try:
        return args.handler(args)
    except DocumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ceei",
                                     description="Competitive division of mixed manna")
    sub = parser.add_subparsers(dest="command")

    def common(p, with_rule=True):
        p.add_argument("problem", help="path to a problem JSON document")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--exact", action="store_true",
                       help="parse numbers as exact rationals")
        p.add_argument("--tol", type=float, default=1e-7,
                       help="certificate tolerance (default 1e-7)")
        p.add_argument("--limit-supports", type=int, default=None,
                       help="cap on enumerated supports")
        p.add_argument("--seed", type=int, default=0, help="seed for audits")
        if with_rule:
            p.add_argument("--rule", default=None,
                           choices=["competitive", "egalitarian", "equal-split"])

    p = sub.add_parser("classify", help="positive / negative / null")
    common(p, with_rule=False)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("solve", help="compute the selected division")
    common(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("enumerate", help="all competitive divisions (negative problems)")
    common(p)
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("audit", help="fairness report for the selected division")
    common(p)
    p.add_argument("--axioms", action="store_true", help="also property-test the rule")
    p.add_argument("--trials", type=int, default=3)
    p.set_defaults(handler=_cmd_audit)

    p = sub.add_parser("components", help="EF-set component count (two bads)")
    common(p, with_rule=False)
    p.add_argument("--grid", type=int, default=None,
                   help="also run the grid oracle at this resolution")
    p.set_defaults(handler=_cmd_components)

    p = sub.add_parser("demo", help="replay a built-in worked example")
    p.add_argument("name", choices=sorted(DEMOS))
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_demo)
    return parser


def _load(args):
    with open(args.problem, "rb") as fh:
        raw = fh.read()
    doc = json.loads(raw)
    if args.exact and isinstance(doc, dict):
        doc.setdefault("mode", "exact")
    if getattr(args, "rule", None):
        doc["rule"] = args.rule
    if args.limit_supports is not None:
        doc.setdefault("limits", {})["supports"] = args.limit_supports
    return parse_document(doc)


def _emit(args, body: dict, text_fn) -> int:
    if args.json:
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        text_fn(body)
    return 0


def _cmd_classify(args) -> int:
    doc = _load(args)
    body = reports.classify_response(doc.problem)

    def text(b):
        print(f"{b['kind'].capitalize()} (t*={b['margin']:.6f})")

    return _emit(args, body, text)


def _cmd_solve(args) -> int:
    doc = _load(args)
    body = reports.solve_response(doc, tol=args.tol)
    return _emit(args, body, lambda b: _print_solution(b))


def _print_solution(b: dict) -> None:
    print(f"rule: {b['rule']}   classification: {b['classification']}")
    sel = b["selected"]
    print(f"profiles ({len(b['profiles'])}, selected #{sel}):")
    for idx, profile in enumerate(b["profiles"]):
        marker = "*" if idx == sel else " "
        print(f"  {marker} ({', '.join(_fmt(v) for v in profile)})")
    print("selected allocation:")
    for name, row in zip(b["agents"], b["allocations"][sel]):
        print(f"  {name}: ({', '.join(_fmt(v) for v in row)})")
    if "divisions" in b:
        division = b["divisions"][sel]
        print(f"price: ({', '.join(_fmt(v) for v in division['price'])})"
              f"   budget: {division['budget']:+d}")
        k = b["kkt"]
        print(f"kkt: passed={k['passed']} budget_residual={k['max_budget_residual']:.2e}"
              f" demand_residual={k['max_demand_residual']:.2e}")
    f = b["fairness"]
    print(f"fairness: envy_free={f['envy_free']} fair_share={f['fair_share']}"
          f" efficient={f['efficient']} weak_core={f['weak_core']}")
    if not b.get("exhaustive", True):
        print("warning: enumeration truncated (limits hit); results may be partial")


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _cmd_enumerate(args) -> int:
    doc = _load(args)
    body = reports.enumerate_response(doc, tol=args.tol)

    def text(b):
        print(f"classification: {b['classification']}")
        print(f"{len(b['profiles'])} profiles (selected #{b['selected']}):")
        for idx, (profile, prod) in enumerate(zip(b["profiles"], b["nash_products"])):
            marker = "*" if idx == b["selected"] else " "
            print(f"  {marker} ({', '.join(_fmt(v) for v in profile)})"
                  f"   |product|={prod:.6g}")
        if not b["exhaustive"]:
            print("warning: enumeration truncated (limits hit)")

    return _emit(args, body, text)


def _cmd_audit(args) -> int:
    doc = _load(args)
    body = reports.audit_response(doc)
    if args.axioms:
        report = check_rule_axioms(doc.rule, [doc.problem], trials=args.trials,
                                   seed=args.seed)
        body["axioms"] = {
            "ete": report.ete, "sol": report.sol, "ilb": report.ilb,
            "scale_invariance": report.scale_invariance,
            "pareto_indifference": report.pareto_indifference,
        }

    def text(b):
        print(f"rule: {b['rule']}   classification: {b['classification']}")
        print(f"selected profile: ({', '.join(_fmt(v) for v in b['selected_profile'])})")
        print(f"envy_free: {b['envy_free']} (worst margin {b['worst_envy_margin']:.3g})")
        print(f"fair_share: {b['fair_share']} (worst margin {b['worst_share_margin']:.3g})")
        print(f"efficient: {b['efficient']} (gap {b['efficiency_gap']:.3g})")
        print(f"weak_core: {b['weak_core']}"
              + (f" (blocked by {b['blocking_coalition']})" if b["blocking_coalition"] else ""))
        if "axioms" in b:
            print("axioms:", ", ".join(f"{k}={v}" for k, v in b["axioms"].items()))

    return _emit(args, body, text)


def _cmd_components(args) -> int:
    doc = _load(args)
    body = reports.components_response(doc, oracle_grid=args.grid)

    def text(b):
        print(f"components: {b['count']}")
        print(f"envy-free cuts at: {b['ef_cuts']}")
        print(f"interior rectangles: {b['interior_splits']}")
        if "oracle_count" in b:
            print(f"grid oracle: {b['oracle_count']}")

    return _emit(args, body, text)


def _cmd_demo(args) -> int:
    result = run_demo(args.name)
    body = reports.demo_response(result)
    if args.json:
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        print(f"demo {result.name}: {'PASS' if result.passed else 'FAIL'}")
        for label, ok, detail in result.checks:
            mark = "ok" if ok else "FAIL"
            suffix = f" ({detail})" if detail and not ok else ""
            print(f"  [{mark}] {label}{suffix}")
        for key, value in body["payload"].items():
            if key.endswith("note"):
                print(f"  note: {value}")
    return 0 if result.passed else 2


if __name__ == "__main__":
    sys.exit(main())
