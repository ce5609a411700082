"""Division rules with a uniform, set-valued interface.

A rule maps a problem to a set of feasible allocations (usually a
singleton) plus a canonical selection.  Rules are ordinal: rescaling any
agent's utility row by a positive constant leaves the output allocations
unchanged, and any allocation utility-equivalent to an output is accepted
as an output (Pareto indifference).

The competitive rule is deliberately set-valued on negative problems -
there is no continuous single-valued selection - so callers get every
enumerated profile along with the disutility-product maximizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .classify import Classification, classify
from .enumeration import (
    EnumerationLimitExceeded,
    EnumerationLimits,
    enumerate_general,
    enumerate_two_agents,
    enumerate_two_items,
    select_division,
)
from .lp import LpSpec, solve_lp
from .model import (
    Allocation,
    Division,
    Problem,
    UtilityProfile,
    partition_agents,
    utility_profile,
)
from .solver import Weights, kkt_verify, solve_null, solve_positive

RULE_NAMES = ("competitive", "egalitarian", "equal-split")


@dataclass(frozen=True)
class RuleOutput:
    profiles: tuple[UtilityProfile, ...]
    allocations: tuple[Allocation, ...]
    selected: int
    classification: Classification
    divisions: tuple[Division, ...] = ()
    exhaustive: bool = True

    @property
    def selected_profile(self) -> UtilityProfile:
        return self.profiles[self.selected]

    @property
    def selected_allocation(self) -> Allocation:
        return self.allocations[self.selected]

    @property
    def selected_division(self) -> Optional[Division]:
        return self.divisions[self.selected] if self.divisions else None


def run_rule(name: str, problem: Problem, weights: Optional[Weights] = None,
             limits: Optional[EnumerationLimits] = None) -> RuleOutput:
    if name == "competitive":
        return competitive_rule(problem, weights=weights, limits=limits)
    if name == "egalitarian":
        return egalitarian_rule(problem)
    if name == "equal-split":
        return equal_split_rule(problem)
    raise ValueError(f"unknown rule {name!r}; expected one of {RULE_NAMES}")


def competitive_rule(problem: Problem, weights: Optional[Weights] = None,
                     limits: Optional[EnumerationLimits] = None,
                     classification: Optional[Classification] = None) -> RuleOutput:
    """Competitive divisions of the problem, one entry per utility profile.

    Positive and null problems have a single profile; negative problems get
    the full enumeration (closed forms when n=2 or m=2) with the selection
    pointing at the disutility-product maximizer.
    """
    if classification is None:
        classification = classify(problem)
    if classification.is_positive:
        division = solve_positive(problem, weights=weights, classification=classification)
        return _single(problem, division, classification)
    if classification.is_null:
        division = solve_null(problem, classification=classification)
        return _single(problem, division, classification)
    if problem.n_agents == 2:
        result = enumerate_two_agents(problem, classification=classification)
    elif problem.n_items == 2:
        result = enumerate_two_items(problem, classification=classification)
    else:
        result = enumerate_general(problem, limits=limits, classification=classification)
    if not result.profiles:
        if not result.exhaustive:
            raise EnumerationLimitExceeded(
                "problem exceeds the enumeration limits (size or support budget)")
        raise RuntimeError("enumeration produced no competitive division")
    chosen = select_division(result)
    selected = result.divisions.index(chosen)
    return RuleOutput(result.profiles,
                      tuple(d.allocation for d in result.divisions),
                      selected, classification, result.divisions, result.exhaustive)


def _single(problem: Problem, division: Division, classification) -> RuleOutput:
    profile = utility_profile(problem, division.allocation)
    return RuleOutput((profile,), (division.allocation,), 0, classification, (division,))


def competitive_membership(problem: Problem, output: RuleOutput,
                           allocation: Allocation, tol: float = 1e-7) -> bool:
    """Is the allocation one of the competitive divisions of the problem?

    Tested by pairing it with each enumerated price system and running the
    certificate check; Pareto-indifferent reshuffles therefore count as
    members, matching the set-valued definition.
    """
    for division in output.divisions:
        candidate = Division(allocation, division.price, division.budget)
        if kkt_verify(problem, candidate, tol).passed:
            return True
    return False


def egalitarian_rule(problem: Problem,
                     classification: Optional[Classification] = None) -> RuleOutput:
    """Equalize utilities relative to each agent's best (or worst) stake.

    Positive problems: scale the profile of per-agent maxima U^max down
    until feasible; attracted agents end up with U_i = t* U_i^max and
    repulsed ones with zero.  Negative problems: scale the profile of
    per-agent minima U^min toward zero until it hits the frontier.  Null
    problems: the zero profile.
    """
    if classification is None:
        classification = classify(problem)
    n, m = problem.n_agents, problem.n_items
    agents = partition_agents(problem)

    if classification.is_null:
        division = solve_null(problem, classification=classification)
        return _single(problem, division, classification)

    if classification.is_positive:
        anchors = {i: _best_utility(problem, i, maximize=True) for i in agents.n_plus}
        allocation, values = _ray_solve(problem, anchors, agents, maximize=True)
    else:
        anchors = {i: _best_utility(problem, i, maximize=False) for i in range(n)}
        allocation, values = _ray_solve(problem, anchors, agents, maximize=False)
    profile = UtilityProfile(tuple(values))
    return RuleOutput((profile,), (allocation,), 0, classification)


def _best_utility(problem: Problem, agent: int, maximize: bool) -> float:
    """max (or min) of u_i . z_i over all feasible allocations."""
    n, m = problem.n_agents, problem.n_items
    sign = 1.0 if maximize else -1.0
    objective = [0.0] * (n * m)
    for a in range(m):
        objective[agent * m + a] = sign * float(problem.utilities[agent][a])
    constraints = []
    for a in range(m):
        coefs = [0.0] * (n * m)
        for i in range(n):
            coefs[i * m + a] = 1.0
        constraints.append((coefs, "=", float(problem.endowment[a])))
    sol = solve_lp(LpSpec.build(objective, constraints))
    if not sol.optimal:
        raise RuntimeError(f"anchor LP failed: {sol.status}")
    return sign * sol.value


def _ray_solve(problem: Problem, anchors: dict[int, float], agents,
               maximize: bool) -> tuple[Allocation, list[float]]:
    """Find the frontier crossing of the ray t * anchors.

    Positive case: maximize t with u_i.z_i >= t*anchor_i on attracted
    agents and zero on repulsed ones.  Negative case: minimize t with
    u_i.z_i >= t*anchor_i for everyone (anchors negative, so smaller t is
    better for all).  A second pass pins utilities to the ray point
    exactly when such an allocation exists.
    """
    n, m = problem.n_agents, problem.n_items
    nvar = 1 + n * m

    def base_constraints():
        cons = []
        for a in range(m):
            coefs = [0.0] * nvar
            for i in range(n):
                coefs[1 + i * m + a] = 1.0
            cons.append((coefs, "=", float(problem.endowment[a])))
        return cons

    constraints = base_constraints()
    for i, anchor in anchors.items():
        coefs = [0.0] * nvar
        coefs[0] = -float(anchor)
        for a in range(m):
            coefs[1 + i * m + a] = float(problem.utilities[i][a])
        constraints.append((coefs, ">=", 0.0))
    if maximize:
        for j in partition_agents(problem).n_minus:
            coefs = [0.0] * nvar
            for a in range(m):
                coefs[1 + j * m + a] = float(problem.utilities[j][a])
            constraints.append((coefs, "=", 0.0))
    objective = [1.0 if maximize else -1.0] + [0.0] * (n * m)
    lower = [None] + [0.0] * (n * m)
    sol = solve_lp(LpSpec.build(objective, constraints, lower=lower))
    if not sol.optimal:
        raise RuntimeError(f"ray LP failed: {sol.status}")
    t = sol.value if maximize else -sol.value

    targets = {i: t * anchor for i, anchor in anchors.items()}
    pinned = base_constraints()
    for i in range(n):
        coefs = [0.0] * nvar
        for a in range(m):
            coefs[1 + i * m + a] = float(problem.utilities[i][a])
        pinned.append((coefs, "=", float(targets.get(i, 0.0))))
    pin = solve_lp(LpSpec.build([0.0] * nvar, pinned, lower=[None] + [0.0] * (n * m)))
    point = pin.point if pin.optimal else sol.point
    rows = [[max(0.0, float(point[1 + i * m + a])) for a in range(m)] for i in range(n)]
    allocation = Allocation.from_rows(rows)
    values = [float(v) for v in utility_profile(problem, allocation).values]
    return allocation, values


def equal_split_rule(problem: Problem,
                     classification: Optional[Classification] = None) -> RuleOutput:
    """Everyone consumes omega/n; the baseline fair-share rule."""
    if classification is None:
        classification = classify(problem)
    n = problem.n_agents
    exact = problem.exact
    if exact:
        from fractions import Fraction
        row = tuple(Fraction(q) / n for q in problem.endowment)
    else:
        row = tuple(q / n for q in problem.endowment)
    allocation = Allocation(tuple(row for _ in range(n)))
    profile = utility_profile(problem, allocation)
    return RuleOutput((profile,), (allocation,), 0, classification)
