"""Report builders shared by the CLI and the HTTP service.

Both front ends must emit byte-identical JSON structures for the same
input, so every numeric payload is assembled here once.
"""

from __future__ import annotations

from typing import Optional

from .audit import audit_allocation
from .classify import classify
from .enumeration import EnumerationLimits
from .io import ProblemDocument, allocation_to_json, division_to_json, profile_to_json
from .model import Problem
from .numbers import number_to_json
from .rules import RuleOutput, run_rule
from .solver import kkt_verify
from .topology import brute_force_components, ef_components_two_bads


def classify_response(problem: Problem) -> dict:
    c = classify(problem)
    return {"kind": c.kind, "margin": c.margin,
            "witness": allocation_to_json(c.witness)}


def solve_response(doc: ProblemDocument, deadline: Optional[float] = None,
                   tol: float = 1e-7) -> dict:
    limits = doc.limits
    if deadline is not None:
        limits = EnumerationLimits(limits.supports, limits.max_agents_plus_items, deadline)
    output = run_rule(doc.rule, doc.problem, weights=doc.weights, limits=limits)
    return _rule_output_json(doc.problem, doc.rule, output, tol)


def _rule_output_json(problem: Problem, rule: str, output: RuleOutput,
                      tol: float = 1e-7) -> dict:
    selected = output.selected
    body = {
        "rule": rule,
        "classification": output.classification.kind,
        "margin": output.classification.margin,
        "profiles": [profile_to_json(p) for p in output.profiles],
        "allocations": [allocation_to_json(a) for a in output.allocations],
        "selected": selected,
        "exhaustive": output.exhaustive,
        "agents": list(problem.agents),
        "items": list(problem.items),
    }
    if output.divisions:
        body["divisions"] = [division_to_json(d) for d in output.divisions]
        report = kkt_verify(problem, output.divisions[selected], tol)
        body["kkt"] = {
            "passed": report.passed,
            "max_budget_residual": float(report.max_budget_residual),
            "max_demand_residual": float(report.max_demand_residual),
        }
    fairness = audit_allocation(problem, output.allocations[selected])
    body["fairness"] = {
        "envy_free": fairness.envy_free,
        "worst_envy_margin": fairness.worst_envy_margin,
        "fair_share": fairness.fair_share,
        "worst_share_margin": fairness.worst_share_margin,
        "efficient": fairness.efficient,
        "weak_core": fairness.weak_core,
    }
    return body


def enumerate_response(doc: ProblemDocument, deadline: Optional[float] = None,
                       tol: float = 1e-7) -> dict:
    body = solve_response(doc, deadline, tol)
    body["nash_products"] = [
        _nash_product(p) for p in body["profiles"]
    ]
    return body


def _nash_product(profile_json: list) -> float:
    prod = 1.0
    for v in profile_json:
        value = float(v) if not isinstance(v, str) else float(eval_fraction(v))
        prod *= abs(value)
    return prod


def eval_fraction(text: str) -> float:
    from fractions import Fraction
    return float(Fraction(text))


def audit_response(doc: ProblemDocument) -> dict:
    output = run_rule(doc.rule, doc.problem, weights=doc.weights, limits=doc.limits)
    fairness = audit_allocation(doc.problem, output.selected_allocation)
    return {
        "rule": doc.rule,
        "classification": output.classification.kind,
        "selected_profile": profile_to_json(output.selected_profile),
        "envy_free": fairness.envy_free,
        "worst_envy_pair": list(fairness.worst_envy_pair),
        "worst_envy_margin": fairness.worst_envy_margin,
        "fair_share": fairness.fair_share,
        "worst_share_agent": fairness.worst_share_agent,
        "worst_share_margin": fairness.worst_share_margin,
        "efficient": fairness.efficient,
        "efficiency_gap": fairness.efficiency_gap,
        "weak_core": fairness.weak_core,
        "blocking_coalition": (None if fairness.blocking_coalition is None
                               else list(fairness.blocking_coalition)),
    }


def components_response(doc: ProblemDocument, oracle_grid: Optional[int] = None) -> dict:
    report = ef_components_two_bads(doc.problem)
    body = {
        "count": report.count,
        "ef_cuts": list(report.ef_cuts),
        "interior_splits": list(report.interior_splits),
        "ratio_order": list(report.ratio_order),
    }
    if oracle_grid:
        body["oracle_count"] = brute_force_components(doc.problem, grid=oracle_grid)
    return body


def demo_response(result) -> dict:
    return {
        "name": result.name,
        "passed": result.passed,
        "checks": [{"label": label, "ok": ok, "detail": detail}
                   for label, ok, detail in result.checks],
        "payload": _jsonify(result.payload),
    }


def _jsonify(value):
    from fractions import Fraction
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, Fraction):
        return number_to_json(value)
    return value
