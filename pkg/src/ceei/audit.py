"""Fairness audits for allocations and axiom checks for division rules.

audit_allocation tests a single allocation for efficiency (no feasible
Pareto improvement, LP certificate), envy-freeness, the fair-share
guarantee, and the weak core from equal split (every coalition, endowed
with its population share of the manna, must fail to make all its members
strictly better off).

check_rule_axioms stress-tests a rule over a batch of problems: equal
treatment of equals, solidarity (no mixed-sign profiles), independence of
lost bids (lowering a bid on an item the bidder does not consume keeps the
allocation selected), scale invariance, and Pareto indifference.

rm_demo runs a rule on a problem and a one-item improvement of it and
reports whether anybody lost - the resource-monotonicity wedge between
dividing goods and dividing bads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .lp import LpSpec, solve_lp
from .model import (
    Allocation,
    Problem,
    check_feasible,
    scale_rows,
    utility_profile,
)
from .rules import RuleOutput, competitive_membership, run_rule
from .solver import kkt_verify

WEAK_CORE_MAX_AGENTS = 8
STRICT_IMPROVE_TOL = 1e-9


@dataclass(frozen=True)
class FairnessReport:
    envy_free: bool
    worst_envy_pair: tuple[int, int]
    worst_envy_margin: float   # min over (i, j) of u_i.(z_i - z_j)
    fair_share: bool
    worst_share_agent: int
    worst_share_margin: float  # min over i of u_i.z_i - u_i.omega/n
    efficient: bool
    efficiency_gap: float      # LP optimum of the Pareto-improvement program
    weak_core: Optional[bool]  # None when the coalition scan was skipped
    blocking_coalition: Optional[tuple[int, ...]]

    @property
    def all_passed(self) -> bool:
        return (self.envy_free and self.fair_share and self.efficient
                and self.weak_core is not False)


@dataclass(frozen=True)
class AxiomReport:
    ete: bool
    sol: bool
    ilb: bool
    scale_invariance: bool
    pareto_indifference: bool
    counterexamples: dict = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return (self.ete and self.sol and self.ilb
                and self.scale_invariance and self.pareto_indifference)


def audit_allocation(problem: Problem, allocation: Allocation,
                     tol: float = STRICT_IMPROVE_TOL) -> FairnessReport:
    if not check_feasible(problem, allocation):
        raise ValueError("allocation is infeasible")
    u = problem.util_array
    z = allocation.array
    n, m = u.shape
    U = (u * z).sum(axis=1)

    cross = u @ z.T  # cross[i, j] = u_i . z_j
    envy = cross - U[:, None]  # i envies j when positive
    np.fill_diagonal(envy, -np.inf)
    i, j = np.unravel_index(np.argmax(envy), envy.shape)
    worst_envy = float(-envy[i, j])
    envy_free = worst_envy >= -tol

    fair = U - (u @ problem.endow_array) / n
    k = int(np.argmin(fair))
    fair_share = float(fair[k]) >= -tol

    gap = _efficiency_gap(problem, U)
    efficient = gap <= max(1e-7, tol)

    weak_core: Optional[bool] = None
    witness: Optional[tuple[int, ...]] = None
    if n <= WEAK_CORE_MAX_AGENTS:
        weak_core, witness = _weak_core(problem, U, tol)

    return FairnessReport(envy_free, (int(i), int(j)), worst_envy,
                          fair_share, k, float(fair[k]),
                          efficient, gap, weak_core, witness)


def _efficiency_gap(problem: Problem, U: np.ndarray) -> float:
    """Optimum of: maximize sum of per-agent improvements over U, >= 0."""
    n, m = problem.n_agents, problem.n_items
    nvar = n * m + n  # shares, then deltas
    objective = [0.0] * (n * m) + [1.0] * n
    constraints = []
    for a in range(m):
        coefs = [0.0] * nvar
        for i in range(n):
            coefs[i * m + a] = 1.0
        constraints.append((coefs, "=", float(problem.endowment[a])))
    for i in range(n):
        coefs = [0.0] * nvar
        for a in range(m):
            coefs[i * m + a] = float(problem.utilities[i][a])
        coefs[n * m + i] = -1.0
        constraints.append((coefs, ">=", float(U[i])))
    sol = solve_lp(LpSpec.build(objective, constraints))
    if not sol.optimal:
        raise RuntimeError(f"efficiency LP failed: {sol.status}")
    return float(sol.value)


def _weak_core(problem: Problem, U: np.ndarray, tol: float):
    """Scan all coalitions for a strict blocking deviation from equal split."""
    n, m = problem.n_agents, problem.n_items
    for size in range(1, n + 1):
        for coalition in itertools.combinations(range(n), size):
            if _blocks(problem, U, coalition, tol):
                return False, coalition
    return True, None


def _blocks(problem: Problem, U, coalition, tol) -> bool:
    k, m = len(coalition), problem.n_items
    nvar = k * m + 1  # coalition shares plus the common improvement floor
    objective = [0.0] * (k * m) + [1.0]
    constraints = []
    for a in range(m):
        coefs = [0.0] * nvar
        for t in range(k):
            coefs[t * m + a] = 1.0
        constraints.append((coefs, "=", float(problem.endowment[a]) * k / problem.n_agents))
    for t, i in enumerate(coalition):
        coefs = [0.0] * nvar
        for a in range(m):
            coefs[t * m + a] = float(problem.utilities[i][a])
        coefs[-1] = -1.0
        constraints.append((coefs, ">=", float(U[i])))
    lower = [0.0] * (k * m) + [None]
    sol = solve_lp(LpSpec.build(objective, constraints, lower=lower))
    if not sol.optimal:
        raise RuntimeError(f"coalition LP failed: {sol.status}")
    return sol.value > tol


def check_rule_axioms(rule: str, problems: list[Problem], trials: int = 1,
                      seed: int = 0) -> AxiomReport:
    """Property-test a rule on the given problems with seeded perturbations."""
    rng = np.random.default_rng(seed)
    failures: dict[str, dict] = {}

    for idx, problem in enumerate(problems):
        output = run_rule(rule, problem)
        if "sol" not in failures:
            for profile in output.profiles:
                vals = profile.as_floats()
                if min(vals) < -1e-9 and max(vals) > 1e-9:
                    failures["sol"] = {"problem": idx, "profile": vals}
                    break
        if "ete" not in failures:
            witness = _ete_witness(rule, problem, rng)
            if witness is not None:
                failures["ete"] = {"problem": idx, **witness}
        if "ilb" not in failures:
            witness = _ilb_witness(rule, problem, output, rng, trials)
            if witness is not None:
                failures["ilb"] = {"problem": idx, **witness}
        if "scale" not in failures:
            witness = _scale_witness(rule, problem, output, rng)
            if witness is not None:
                failures["scale"] = {"problem": idx, **witness}
        if "pi" not in failures:
            witness = _pi_witness(rule, problem, output, rng)
            if witness is not None:
                failures["pi"] = {"problem": idx, **witness}

    return AxiomReport("ete" not in failures, "sol" not in failures,
                       "ilb" not in failures, "scale" not in failures,
                       "pi" not in failures, failures)


def _ete_witness(rule: str, problem: Problem, rng) -> Optional[dict]:
    """Duplicate one agent's row onto another; equals must stay equal."""
    n = problem.n_agents
    if n < 2:
        return None
    src, dst = rng.choice(n, size=2, replace=False)
    rows = [list(r) for r in problem.utilities]
    rows[dst] = list(rows[src])
    twin = problem.with_utilities(rows)
    output = run_rule(rule, twin)
    for profile in output.profiles:
        vals = profile.as_floats()
        if abs(vals[src] - vals[dst]) > 1e-6:
            return {"agents": (int(src), int(dst)), "profile": vals}
    return None


def _ilb_witness(rule: str, problem: Problem, output: RuleOutput, rng,
                 trials: int) -> Optional[dict]:
    """Lower a losing bid; the previously selected allocation must survive.

    Membership is certificate-based for the competitive rule and
    profile-based for single-valued rules.
    """
    divisions = output.divisions or (None,)
    for t, division in enumerate(divisions):
        allocation = output.allocations[t] if division is None else division.allocation
        z = allocation.array
        zeros = [(i, a) for i in range(problem.n_agents)
                 for a in range(problem.n_items) if z[i, a] <= 1e-11]
        if not zeros:
            continue
        for _ in range(max(1, trials)):
            i, a = zeros[int(rng.integers(len(zeros)))]
            old = float(problem.utilities[i][a])
            drop = float(rng.uniform(0.1, 2.0)) * abs(old) + 0.1
            rows = [list(r) for r in problem.utilities]
            rows[i][a] = old - drop
            perturbed = problem.with_utilities(rows)
            if rule == "competitive":
                report = kkt_verify(perturbed, division, 1e-7)
                ok = report.passed
            else:
                new_out = run_rule(rule, perturbed)
                old_profile = utility_profile(perturbed, allocation).as_floats()
                ok = any(np.allclose(old_profile, q.as_floats(), atol=1e-7)
                         for q in new_out.profiles)
            if not ok:
                return {"pair": (int(i), int(a)), "lowered_to": old - drop}
    return None


def _scale_witness(rule: str, problem: Problem, output: RuleOutput, rng) -> Optional[dict]:
    factors = tuple(float(f) for f in rng.uniform(0.25, 4.0, problem.n_agents))
    scaled = scale_rows(problem, factors)
    new_out = run_rule(rule, scaled)
    old_set = _allocation_set(output)
    new_set = _allocation_set(new_out)
    if len(old_set) != len(new_set):
        return {"factors": factors, "sizes": (len(old_set), len(new_set))}
    for row in old_set:
        if not any(np.allclose(row, other, atol=1e-6) for other in new_set):
            return {"factors": factors, "missing": row}
    return None


def _allocation_set(output: RuleOutput) -> list:
    return [alloc.array.ravel() for alloc in output.allocations]


def _pi_witness(rule: str, problem: Problem, output: RuleOutput, rng) -> Optional[dict]:
    """Find an alternative allocation with the selected profile and check
    it is accepted as a member of the rule's output set."""
    target = output.selected_profile.as_floats()
    n, m = problem.n_agents, problem.n_items
    objective = [float(v) for v in rng.uniform(-1.0, 1.0, n * m)]
    constraints = []
    for a in range(m):
        coefs = [0.0] * (n * m)
        for i in range(n):
            coefs[i * m + a] = 1.0
        constraints.append((coefs, "=", float(problem.endowment[a])))
    for i in range(n):
        coefs = [0.0] * (n * m)
        for a in range(m):
            coefs[i * m + a] = float(problem.utilities[i][a])
        constraints.append((coefs, "=", target[i]))
    sol = solve_lp(LpSpec.build(objective, constraints))
    if not sol.optimal:
        return None  # profile pinning can be numerically infeasible; skip
    rows = [[max(0.0, sol.point[i * m + a]) for a in range(m)] for i in range(n)]
    other = Allocation.from_rows(rows)
    if rule == "competitive":
        ok = competitive_membership(problem, output, other)
    else:
        vals = utility_profile(problem, other).as_floats()
        ok = np.allclose(vals, target, atol=1e-6)
    if not ok:
        return {"allocation": rows}
    return None


# ---------------------------------------------------------------------------
# Resource monotonicity


@dataclass(frozen=True)
class RmDemo:
    rule: str
    base_profile: tuple[float, ...]
    improved_profile: tuple[float, ...]
    deltas: tuple[float, ...]
    rm_holds: bool
    improved_item: int
    canonical: Optional[dict] = None


def _improvement_item(base: Problem, improved: Problem) -> int:
    """The single item whose quantity changed, validated as an improvement."""
    if base.agents != improved.agents or base.items != improved.items:
        raise ValueError("problems must share agents and items")
    if base.utilities != improved.utilities:
        raise ValueError("an improvement changes quantities, not utilities")
    changed = [a for a in range(base.n_items)
               if float(base.endowment[a]) != float(improved.endowment[a])]
    if len(changed) > 1:
        raise ValueError("an improvement changes at most one item")
    if not changed:
        return -1
    a = changed[0]
    col = [float(row[a]) for row in base.utilities]
    grew = float(improved.endowment[a]) > float(base.endowment[a])
    if grew and not all(v >= 0 for v in col):
        raise ValueError("adding quantity is an improvement only for a unanimous good")
    if not grew and not all(v <= 0 for v in col):
        raise ValueError("removing quantity is an improvement only for a unanimous bad")
    return a


def rm_demo(base: Problem, improved: Problem, rule: str = "competitive") -> RmDemo:
    """Run the rule on a problem and a one-item improvement of it.

    Reports per-agent utility deltas and whether resource monotonicity held
    for this pair.  The classic two-agent two-bad pair additionally carries
    the analytic bounds that force a violation for any efficient rule
    guaranteeing fair shares.
    """
    item = _improvement_item(base, improved)
    before = run_rule(rule, base)
    after = run_rule(rule, improved)
    b = before.selected_profile.as_floats()
    a = after.selected_profile.as_floats()
    deltas = tuple(x - y for x, y in zip(a, b))
    rm_holds = all(dv >= -1e-9 for dv in deltas)
    canonical = None
    if _is_canonical_pair(base, improved):
        half_share = Fraction(
            sum(Fraction(v) * Fraction(q) for v, q in
                zip(base.utilities[1], improved.endowment))) / 2
        canonical = {
            "agent2_half_fair_share": half_share,      # -13/18 on the classic pair
            "forced_utility_bound": Fraction(-10, 9),  # post-change cap for the winner
        }
    return RmDemo(rule, tuple(b), tuple(a), deltas, rm_holds, item, canonical)


def _is_canonical_pair(base: Problem, improved: Problem) -> bool:
    want_u = ((-1, -4), (-4, -1))
    if base.n_agents != 2 or base.n_items != 2:
        return False
    u_ok = all(float(base.utilities[i][a]) == want_u[i][a]
               for i in range(2) for a in range(2))
    return (u_ok and [float(q) for q in base.endowment] == [1.0, 1.0]
            and [float(q) for q in improved.endowment] == [1.0 / 9.0, 1.0])
