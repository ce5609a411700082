"""Problem documents: JSON parsing, validation, and serialization.

Schema:
    {
      "agents": ["ann", "bob"],
      "items": [{"name": "a", "quantity": 1}, ...],
      "utilities": [[...one row per agent...]],
      "weights": {"ann": 2, "bob": 1},         # optional
      "rule": "competitive",                    # optional
      "mode": "float" | "exact",                # optional, default float
      "limits": {"supports": 2000000, "max_agents_plus_items": 12}  # optional
    }

Numbers may be JSON numbers or "p/q" strings; exact mode parses everything
into rationals.  Errors carry a JSON-pointer-style path to the offending
field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .enumeration import EnumerationLimits
from .model import Allocation, Division, Problem, UtilityProfile
from .numbers import number_to_json, parse_number
from .solver import Weights


class DocumentError(ValueError):
    """Schema violation, with a pointer to the offending location."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ProblemDocument:
    problem: Problem
    weights: Optional[Weights]
    rule: str
    mode: str
    limits: EnumerationLimits


def parse_problem(data: bytes | str | dict) -> Problem:
    return parse_document(data).problem


def parse_document(data: bytes | str | dict) -> ProblemDocument:
    if isinstance(data, (bytes, str)):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise DocumentError("", f"invalid JSON: {exc}") from exc
    else:
        doc = data
    if not isinstance(doc, dict):
        raise DocumentError("", "document must be a JSON object")

    mode = doc.get("mode", "float")
    if mode not in ("float", "exact"):
        raise DocumentError("/mode", "must be 'float' or 'exact'")
    exact = mode == "exact"

    agents = doc.get("agents")
    if not isinstance(agents, list) or not agents:
        raise DocumentError("/agents", "must be a non-empty list")
    agent_names = []
    for k, name in enumerate(agents):
        if not isinstance(name, str) or not name:
            raise DocumentError(f"/agents/{k}", "must be a non-empty string")
        agent_names.append(name)

    items = doc.get("items")
    if not isinstance(items, list) or not items:
        raise DocumentError("/items", "must be a non-empty list")
    item_names, quantities = [], []
    for k, entry in enumerate(items):
        if not isinstance(entry, dict) or "name" not in entry or "quantity" not in entry:
            raise DocumentError(f"/items/{k}", "must be {'name':..., 'quantity':...}")
        if not isinstance(entry["name"], str) or not entry["name"]:
            raise DocumentError(f"/items/{k}/name", "must be a non-empty string")
        try:
            q = parse_number(entry["quantity"], exact)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"/items/{k}/quantity", str(exc)) from exc
        if not q > 0:
            raise DocumentError(f"/items/{k}/quantity", "must be strictly positive")
        item_names.append(entry["name"])
        quantities.append(q)

    matrix = doc.get("utilities")
    if not isinstance(matrix, list) or len(matrix) != len(agent_names):
        raise DocumentError("/utilities", f"must have one row per agent ({len(agent_names)})")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != len(item_names):
            raise DocumentError(f"/utilities/{i}",
                                f"must have one entry per item ({len(item_names)})")
        parsed = []
        for a, v in enumerate(row):
            try:
                parsed.append(parse_number(v, exact))
            except (ValueError, ZeroDivisionError) as exc:
                raise DocumentError(f"/utilities/{i}/{a}", str(exc)) from exc
        rows.append(tuple(parsed))

    try:
        problem = Problem(tuple(agent_names), tuple(item_names),
                          tuple(quantities), tuple(rows))
    except ValueError as exc:
        raise DocumentError("", str(exc)) from exc

    weights = None
    if "weights" in doc:
        raw = doc["weights"]
        if isinstance(raw, dict):
            missing = [a for a in agent_names if a not in raw]
            if missing:
                raise DocumentError("/weights", f"missing agents: {missing}")
            values = [raw[a] for a in agent_names]
        elif isinstance(raw, list) and len(raw) == len(agent_names):
            values = raw
        else:
            raise DocumentError("/weights", "must map agents to positive numbers")
        try:
            weights = Weights(tuple(float(parse_number(v)) for v in values))
        except ValueError as exc:
            raise DocumentError("/weights", str(exc)) from exc

    rule = doc.get("rule", "competitive")
    if rule not in ("competitive", "egalitarian", "equal-split"):
        raise DocumentError("/rule", f"unknown rule {rule!r}")

    limits = EnumerationLimits()
    if "limits" in doc:
        raw = doc["limits"]
        if not isinstance(raw, dict):
            raise DocumentError("/limits", "must be an object")
        supports = raw.get("supports", limits.supports)
        size = raw.get("max_agents_plus_items", limits.max_agents_plus_items)
        if not isinstance(supports, int) or supports <= 0:
            raise DocumentError("/limits/supports", "must be a positive integer")
        if not isinstance(size, int) or size <= 0:
            raise DocumentError("/limits/max_agents_plus_items", "must be a positive integer")
        limits = EnumerationLimits(supports=supports, max_agents_plus_items=size)

    return ProblemDocument(problem, weights, rule, mode, limits)


def emit_problem(problem: Problem, mode: Optional[str] = None) -> dict:
    if mode is None:
        mode = "exact" if problem.exact else "float"
    return {
        "agents": list(problem.agents),
        "items": [{"name": name, "quantity": number_to_json(q)}
                  for name, q in zip(problem.items, problem.endowment)],
        "utilities": [[number_to_json(v) for v in row] for row in problem.utilities],
        "mode": mode,
    }


def allocation_to_json(allocation: Allocation) -> list:
    return [[number_to_json(v) for v in row] for row in allocation.shares]


def profile_to_json(profile: UtilityProfile) -> list:
    return [number_to_json(v) for v in profile.values]


def division_to_json(division: Division) -> dict:
    return {
        "allocation": allocation_to_json(division.allocation),
        "price": [number_to_json(v) for v in division.price],
        "budget": division.budget,
    }
