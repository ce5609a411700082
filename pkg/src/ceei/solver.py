"""Competitive division solvers and the first-order certificate checker.

kkt_verify is the backbone of the package: a division is accepted exactly
when it satisfies the price-sign facts, the budget identities for its
budget sign, and the per-pair stationarity/maximum conditions (consumed
pairs sit at the per-item maximum of marginal-utility-to-money ratios;
non-consumed pairs sit weakly below).  It runs on plain Python numbers so
exact-rational divisions can be certified with zero tolerance.

solve_positive maximizes the weighted log-utility sum over feasible
allocations (projected gradient ascent with a support-polish finisher);
solve_null builds the zero-utility division plus its supporting weight
vector by linear programming.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classify import Classification, classify
from .lp import LpSpec, solve_lp
from .model import (
    Allocation,
    Division,
    Problem,
    UtilityProfile,
    check_feasible,
    partition_agents,
    partition_items,
    utility_profile,
)
from .numbers import KKT_TOL


class ClassificationMismatch(ValueError):
    """A solver was called on a problem of the wrong type."""


class ConvergenceError(RuntimeError):
    """The iterative solver hit its iteration cap before certifying."""


@dataclass(frozen=True)
class Weights:
    """Positive per-agent income shares; all-ones means equal incomes."""

    values: tuple[float, ...]

    def __post_init__(self):
        if any(not v > 0 for v in self.values):
            raise ValueError("weights must be strictly positive")

    @staticmethod
    def ones(n: int) -> "Weights":
        return Weights(tuple(1.0 for _ in range(n)))


@dataclass(frozen=True)
class KktReport:
    passed: bool
    budget_residuals: tuple
    demand_residuals: tuple[tuple, ...]
    price_sign_violations: tuple[int, ...]
    parsimony_violations: tuple[int, ...]
    failures: tuple[str, ...]

    @property
    def max_budget_residual(self):
        return max(self.budget_residuals)

    @property
    def max_demand_residual(self):
        return max(max(row) for row in self.demand_residuals)


def _consumed(z, q, exact: bool) -> bool:
    if exact:
        return z > 0
    return z > 1e-9 * max(1.0, float(q))


def kkt_verify(problem: Problem, division: Division, tol=KKT_TOL,
               weights: Optional[Weights] = None) -> KktReport:
    """Check the competitive-division certificate at the given tolerance.

    The checks depend on the division's budget sign: +1 uses attracted-agent
    ratios u_ia/U_i with budgets 1 (or the weighted shares), -1 uses
    disutility ratios u_ia/|U_i| with budgets -1 for everyone, 0 requires
    the zero profile plus a consistent positive weight vector on the
    attracted agents.  Failures never raise; they are carried in the report.
    """
    u = problem.utilities
    omega = problem.endowment
    n, m = problem.n_agents, problem.n_items
    exact = tol == 0
    z = division.allocation.shares
    p = division.price
    beta = division.budget
    failures: list[str] = []

    if len(p) != m or len(z) != n or any(len(row) != m for row in z):
        return KktReport(False, (), (), (), (), ("dimension mismatch",))
    if not check_feasible(problem, division.allocation, 0 if exact else 1e-9):
        failures.append("allocation infeasible")

    items = partition_items(problem)
    agents = partition_agents(problem)
    U = utility_profile(problem, division.allocation).values

    price_sign = []
    for a in items.a_plus:
        if not p[a] > 0:
            price_sign.append(a)
    for a in items.a_minus:
        if not p[a] < 0:
            price_sign.append(a)
    for a in items.a_zero:
        if abs(p[a]) > tol:
            price_sign.append(a)

    budget = [0 * omega[0] for _ in range(n)]
    demand = [[0 * omega[0]] * m for _ in range(n)]
    parsimony: list[int] = []

    def spend(i):
        return sum(p[a] * z[i][a] for a in range(m))

    if beta == 1:
        w = weights.values if weights is not None else tuple(1 for _ in range(n))
        if weights is not None and len(w) != n:
            return KktReport(False, (), (), (), (), ("weights dimension mismatch",))
        total = sum(p[a] * omega[a] for a in range(m))
        wsum = sum(w[i] for i in agents.n_plus)
        for i in agents.n_plus:
            if not U[i] > 0:
                failures.append(f"agent {i} attracted but utility not positive")
        for i in agents.n_minus:
            if abs(U[i]) > tol:
                failures.append(f"agent {i} repulsed but utility not zero")
        if failures:
            return KktReport(False, tuple(budget), tuple(tuple(r) for r in demand),
                             tuple(price_sign), tuple(parsimony), tuple(failures))
        for i in range(n):
            if i in agents.n_plus:
                target = 1 if weights is None else w[i] * total / wsum
                budget[i] = abs(spend(i) - target)
            else:
                budget[i] = abs(spend(i))
        for i in agents.n_plus:
            for a in range(m):
                ratio = w[i] * u[i][a] / U[i]
                if _consumed(z[i][a], omega[a], exact):
                    demand[i][a] = abs(ratio - p[a])
                else:
                    demand[i][a] = max(0 * ratio, ratio - p[a])
        for i in agents.n_minus:
            for a in range(m):
                if _consumed(z[i][a], omega[a], exact):
                    if abs(p[a]) > tol or u[i][a] != 0:
                        parsimony.append(i)
                        break

    elif beta == -1:
        for i in range(n):
            if not U[i] < 0:
                failures.append(f"agent {i} utility not negative")
        if failures:
            return KktReport(False, tuple(budget), tuple(tuple(r) for r in demand),
                             tuple(price_sign), tuple(parsimony), tuple(failures))
        for i in range(n):
            budget[i] = abs(spend(i) + 1)
            for a in range(m):
                ratio = u[i][a] / -U[i]
                if _consumed(z[i][a], omega[a], exact):
                    demand[i][a] = abs(ratio - p[a])
                else:
                    demand[i][a] = max(0 * ratio, ratio - p[a])

    else:
        for i in range(n):
            if abs(U[i]) > tol:
                failures.append(f"agent {i} utility not zero")
            budget[i] = abs(spend(i))
        lam = _reconstruct_null_weights(problem, division, items, agents, tol, failures)
        if lam is not None:
            active = set(items.a_plus) | set(items.a_minus)
            for i in agents.n_plus:
                for a in range(m):
                    if a in active:
                        value = lam[i] * u[i][a]
                        if _consumed(z[i][a], omega[a], exact):
                            demand[i][a] = abs(value - p[a])
                        else:
                            demand[i][a] = max(0 * value, value - p[a])
                    elif _consumed(z[i][a], omega[a], exact) and u[i][a] != 0:
                        demand[i][a] = abs(u[i][a])
            for i in agents.n_minus:
                for a in range(m):
                    if _consumed(z[i][a], omega[a], exact) and (
                            abs(p[a]) > tol or u[i][a] != 0):
                        parsimony.append(i)
                        break

    worst = max([max(budget, default=0), max((max(r) for r in demand), default=0)])
    passed = (not failures and not price_sign and not parsimony and worst <= tol)
    return KktReport(passed, tuple(budget), tuple(tuple(r) for r in demand),
                     tuple(price_sign), tuple(parsimony), tuple(failures))


def _reconstruct_null_weights(problem, division, items, agents, tol, failures):
    """Find positive lambda with lambda_i u_ia = p_a on consumed pairs.

    Consumed active pairs pin lambda_i by the price ratio; agents whose
    consumption is entirely neutral get an interval from the inequality
    side.  Returns None (and a failure note) when no consistent choice
    exists.
    """
    u = problem.utilities
    omega = problem.endowment
    z = division.allocation.shares
    p = division.price
    exact = tol == 0
    active = list(items.a_plus) + list(items.a_minus)
    lam = {}
    for i in agents.n_plus:
        pinned = None
        lo, hi = None, None
        for a in active:
            uia = u[i][a]
            if _consumed(z[i][a], omega[a], exact):
                if uia == 0:
                    failures.append(f"agent {i} consumes priced item {a} it is satiated on")
                    return None
                cand = p[a] / uia
                if pinned is None:
                    pinned = cand
                elif abs(cand - pinned) > tol * max(1, abs(pinned)):
                    failures.append(f"agent {i} has inconsistent supporting weights")
                    return None
            else:
                if uia > 0:
                    bound = p[a] / uia
                    hi = bound if hi is None else min(hi, bound)
                elif uia < 0 and p[a] < 0:
                    bound = p[a] / uia
                    lo = bound if lo is None else max(lo, bound)
        if pinned is not None:
            if not pinned > 0:
                failures.append(f"agent {i} needs a non-positive weight")
                return None
            lam[i] = pinned
        else:
            low = lo if lo is not None else 0
            if hi is None:
                lam[i] = max(low, 1)
            else:
                if low > hi + tol or not hi > 0:
                    failures.append(f"agent {i} has an empty weight interval")
                    return None
                lam[i] = (max(low, 0) + hi) / 2
    return lam


def verify_criticality(problem: Problem, profile: UtilityProfile, tol: float = 1e-7,
                       classification: Optional[Classification] = None) -> bool:
    """Is the profile a critical point of the disutility product on the frontier?

    Maximizes sum_i u_i.z_i/|U_i| over feasible allocations; the profile is
    critical exactly when the optimum equals -n.  The maximizer assigns each
    item to the agents with the best disutility ratio, so the optimum has a
    closed form and no simplex run is needed.
    """
    if classification is None:
        classification = classify(problem)
    if not classification.is_negative:
        raise ClassificationMismatch("criticality is defined for negative problems")
    U = profile.values
    if any(not v < 0 for v in U):
        raise ValueError("profile must be strictly negative")
    total = 0.0
    for a in range(problem.n_items):
        best = max(problem.utilities[i][a] / -U[i] for i in range(problem.n_agents))
        total += float(problem.endowment[a]) * float(best)
    return abs(total + problem.n_agents) <= tol


def solve_null(problem: Problem,
               classification: Optional[Classification] = None) -> Division:
    """Competitive division of a null problem: zero profile, zero budgets.

    The supporting weights lambda >= 1 and prices come from the LP
    minimize sum_a omega_a s_a  s.t.  s_a >= lambda_i u_ia; its optimum is
    zero precisely on null problems.  The witness allocation is then a
    feasibility LP restricted to pairs where the weight condition is tight.
    """
    if classification is None:
        classification = classify(problem)
    if not classification.is_null:
        raise ClassificationMismatch(f"solve_null on a {classification.kind} problem")
    u = problem.util_array
    omega = problem.endow_array
    n, m = u.shape
    items = partition_items(problem)
    agents = partition_agents(problem)
    active = list(items.a_plus) + list(items.a_minus)

    if not agents.n_plus:
        rows = [[0.0] * m for _ in range(n)]
        for a in range(m):
            eater = next(i for i in range(n) if u[i, a] == 0)
            rows[eater][a] = float(omega[a])
        return Division(Allocation.from_rows(rows), tuple(0.0 for _ in range(m)), 0)

    plus = list(agents.n_plus)
    k = len(plus)
    price = [0.0] * m
    if active:
        # variables: lambda_1..lambda_k, s_a for active items
        nvar = k + len(active)
        objective = [0.0] * k + [-float(omega[a]) for a in active]
        constraints = []
        for ai, a in enumerate(active):
            for ii, i in enumerate(plus):
                coefs = [0.0] * nvar
                coefs[k + ai] = 1.0
                coefs[ii] = -float(u[i, a])
                constraints.append((coefs, ">=", 0.0))
        lower = [1.0] * k + [None] * len(active)
        sol = solve_lp(LpSpec.build(objective, constraints, lower=lower))
        if not sol.optimal:
            raise RuntimeError(f"null certificate LP failed: {sol.status}")
        if abs(sol.value) > 1e-7:
            raise ClassificationMismatch("null certificate LP has nonzero optimum")
        lam = {i: sol.point[ii] for ii, i in enumerate(plus)}
        for ai, a in enumerate(active):
            price[a] = float(sol.point[k + ai])
    else:
        lam = {i: 1.0 for i in plus}

    allowed = [[False] * m for _ in range(n)]
    for a in active:
        best = max(lam[i] * u[i, a] for i in plus)
        for i in plus:
            if abs(lam[i] * u[i, a] - best) <= 1e-9 * max(1.0, abs(best)):
                allowed[i][a] = True
    for a in items.a_zero:
        for i in range(n):
            if u[i, a] == 0:
                allowed[i][a] = True

    cols = [(i, a) for i in range(n) for a in range(m) if allowed[i][a]]
    idx = {cell: j for j, cell in enumerate(cols)}
    constraints = []
    for a in range(m):
        coefs = [0.0] * len(cols)
        for i in range(n):
            if allowed[i][a]:
                coefs[idx[(i, a)]] = 1.0
        constraints.append((coefs, "=", float(omega[a])))
    for i in plus:
        coefs = [0.0] * len(cols)
        touched = False
        for a in active:
            if allowed[i][a]:
                coefs[idx[(i, a)]] = float(u[i, a])
                touched = True
        if touched:
            constraints.append((coefs, "=", 0.0))
    sol = solve_lp(LpSpec.build([0.0] * len(cols), constraints))
    if not sol.optimal:
        raise RuntimeError("null witness LP infeasible")
    rows = [[0.0] * m for _ in range(n)]
    for j, (i, a) in enumerate(cols):
        rows[i][a] = max(0.0, float(sol.point[j]))
    division = Division(Allocation.from_rows(rows), tuple(price), 0)
    report = kkt_verify(problem, division, 1e-7)
    if not report.passed:
        raise RuntimeError(f"null division failed verification: {report.failures}")
    return division


def solve_positive(problem: Problem, weights: Optional[Weights] = None,
                   classification: Optional[Classification] = None,
                   tol: float = KKT_TOL, max_iters: int = 100_000,
                   seed: Optional[int] = None, cancel=None) -> Division:
    """Competitive division of a positive problem (weighted equal incomes).

    Maximizes sum_i theta_i log(u_i.z_i) over feasible allocations with
    repulsed agents pinned to zero, by projected gradient ascent over the
    per-item simplices with backtracking.  Every few hundred iterations the
    active support is read off and the exact stationarity system is solved
    on it; the first candidate that passes kkt_verify at `tol` is returned.
    Prices are normalized so attracted agent i spends theta_i.
    """
    if classification is None:
        classification = classify(problem)
    if not classification.is_positive:
        raise ClassificationMismatch(f"solve_positive on a {classification.kind} problem")
    u = problem.util_array
    omega = problem.endow_array
    n, m = u.shape
    items = partition_items(problem)
    agents = partition_agents(problem)
    plus = list(agents.n_plus)
    active = list(items.a_plus) + list(items.a_minus)
    w = np.array((weights.values if weights is not None else [1.0] * n), dtype=float)
    if len(w) != n:
        raise ValueError("weights dimension mismatch")

    ua = u[np.ix_(plus, active)]
    qa = omega[active]
    wa = w[plus]

    Z = _positive_start(ua, qa, seed)
    U = (Z * ua).sum(axis=1)
    if np.any(U <= 0):
        raise RuntimeError("failed to find a strictly positive starting point")

    best: Optional[Division] = None
    obj = float(wa @ np.log(U))
    eta = 1.0 / max(1.0, np.abs(ua).max())
    for it in range(max_iters):
        if cancel is not None and cancel.is_set():
            raise ConvergenceError("cancelled")
        grad = wa[:, None] * ua / U[:, None]
        stepped = False
        for _ in range(60):
            Z_new = _project_columns(Z + eta * grad, qa)
            U_new = (Z_new * ua).sum(axis=1)
            if np.all(U_new > 0):
                obj_new = float(wa @ np.log(U_new))
                if obj_new > obj or (obj_new == obj and eta < 1e-14):
                    Z, U, obj = Z_new, U_new, obj_new
                    eta *= 1.3
                    stepped = True
                    break
            eta *= 0.5
        if not stepped or it % 100 == 99 or it == max_iters - 1:
            division = _positive_polish(problem, items, plus, active,
                                        ua, qa, Z, U, w, weights, tol)
            if division is not None:
                return division
            if not stepped:
                eta = 1.0 / max(1.0, np.abs(ua).max())
    raise ConvergenceError("positive solver did not certify within the iteration cap")


def _positive_start(ua: np.ndarray, qa: np.ndarray, seed: Optional[int]) -> np.ndarray:
    """A feasible allocation of active items with all utilities positive."""
    k, ma = ua.shape
    constraints = []
    nvar = 1 + k * ma
    for a in range(ma):
        coefs = [0.0] * nvar
        for i in range(k):
            coefs[1 + i * ma + a] = 1.0
        constraints.append((coefs, "=", float(qa[a])))
    for i in range(k):
        coefs = [0.0] * nvar
        coefs[0] = -1.0
        for a in range(ma):
            coefs[1 + i * ma + a] = float(ua[i, a])
        constraints.append((coefs, ">=", 0.0))
    objective = [1.0] + [0.0] * (k * ma)
    lower = [None] + [0.0] * (k * ma)
    sol = solve_lp(LpSpec.build(objective, constraints, lower=lower))
    if not sol.optimal or sol.value <= 0:
        raise RuntimeError("positive start LP failed")
    Z = np.array(sol.point[1:], dtype=float).reshape(k, ma)
    if seed is None:
        return Z
    # Random restart: blend a random feasible point toward the witness until
    # all utilities are positive.
    rng = np.random.default_rng(seed)
    R = rng.random((k, ma))
    R = R / R.sum(axis=0) * qa
    alpha = 1.0
    for _ in range(60):
        cand = alpha * R + (1 - alpha) * Z
        if np.all((cand * ua).sum(axis=1) > 0):
            return cand
        alpha *= 0.5
    return Z


def _project_columns(Z: np.ndarray, qa: np.ndarray) -> np.ndarray:
    """Euclidean projection of each column onto {v >= 0, sum v = q_a}."""
    k = Z.shape[0]
    if k == 1:
        return qa[None, :].copy()
    S = np.sort(Z, axis=0)[::-1]
    cums = np.cumsum(S, axis=0) - qa[None, :]
    js = np.arange(1, k + 1)[:, None]
    cond = S - cums / js > 0
    rho = k - 1 - np.argmax(cond[::-1], axis=0)
    tau = cums[rho, np.arange(Z.shape[1])] / (rho + 1)
    return np.maximum(Z - tau[None, :], 0.0)


def _positive_polish(problem, items, plus, active, ua, qa, Z, U, w, weights,
                     tol) -> Optional[Division]:
    """Solve the stationarity system exactly on the iterate's support.

    Starting from the consumed edges, the candidate face is solved in
    closed form; if the certificate reports a violated pair, that edge is
    added and the face re-solved (active-set style).  Dying edges are
    handled by retrying with tighter consumption thresholds.
    """
    k, ma = ua.shape
    item_sign = np.array([1.0] * len(items.a_plus) + [-1.0] * len(items.a_minus))
    valid = ua * item_sign[None, :] > 0
    ratios = w[plus, None] * ua / U[:, None]

    def covered(edge_set) -> bool:
        return (all(any(e[1] == a for e in edge_set) for a in range(ma))
                and all(any(e[0] == i for e in edge_set) for i in range(k)))

    seeds = []
    for z_thresh in (1e-4, 1e-6, 1e-9):
        edges = {(i, a) for i in range(k) for a in range(ma)
                 if Z[i, a] > z_thresh * max(1.0, qa[a]) and valid[i, a]}
        for i in range(k):  # budgets need at least one edge per agent
            if not any(e[0] == i for e in edges):
                best = max((a for a in range(ma) if valid[i, a]),
                           key=lambda a: ratios[i, a], default=None)
                if best is None:
                    return None
                edges.add((i, best))
        if covered(edges):
            seeds.append(frozenset(edges))

    queue = list(dict.fromkeys(seeds))
    seen = set(queue)
    for _ in range(60):
        if not queue:
            return None
        edges = queue.pop(0)
        status, payload = _solve_face(problem, items, plus, active, ua, qa,
                                      set(edges), w, weights, tol)
        if status == "ok":
            return payload
        if status == "add":
            grown = frozenset(edges | {payload})
            if grown not in seen:
                seen.add(grown)
                queue.insert(0, grown)
        elif status == "drop":
            # An inconsistent cycle or unsatisfiable shares: retry without
            # the weakest edges (ascending consumption in the iterate).
            for e in sorted(edges, key=lambda e: Z[e[0], e[1]])[:4]:
                shrunk = frozenset(edges - {e})
                if covered(shrunk) and shrunk not in seen:
                    seen.add(shrunk)
                    queue.insert(0, shrunk)
    return None


def _solve_face(problem, items, plus, active, ua, qa, edges, w, weights, tol):
    """Exact (U, p, z) on a support.

    Returns ("ok", division) on success, ("add", edge) when a maximum
    condition is violated by a non-edge, ("drop", None) when the support
    itself cannot carry a stationary point (inconsistent cycle relations or
    no nonnegative shares), and ("bad", None) for dead ends.

    The stationarity relations w_i|u_ia| = |p_a| U_i are log-linear on the
    support edges; each connected component is solved by least squares (the
    component scale is the null direction), so cyclic supports from true
    ties are handled without any propagation-order fragility.
    """
    k, ma = ua.shape
    adj_agent = [[] for _ in range(k)]
    adj_item = [[] for _ in range(ma)]
    for i, a in edges:
        adj_agent[i].append(a)
        adj_item[a].append(i)
    if any(not adj for adj in adj_item):
        return "bad", None

    comp_agent = [-1] * k
    comps = []
    for root in range(k):
        if comp_agent[root] >= 0:
            continue
        cid = len(comps)
        stack, comp_agents, comp_items, seen_items = [root], [], [], set()
        comp_agent[root] = cid
        while stack:
            i = stack.pop()
            comp_agents.append(i)
            for a in adj_agent[i]:
                if a not in seen_items:
                    seen_items.add(a)
                    comp_items.append(a)
                    for j in adj_item[a]:
                        if comp_agent[j] < 0:
                            comp_agent[j] = cid
                            stack.append(j)
        comps.append((comp_agents, comp_items))

    U_ex = np.zeros(k)
    p_ex = np.zeros(ma)
    sign = np.zeros(ma)
    for comp_agents, comp_items in comps:
        arow = {i: t for t, i in enumerate(comp_agents)}
        irow = {a: len(comp_agents) + t for t, a in enumerate(comp_items)}
        rows, rhs = [], []
        for i in comp_agents:
            for a in adj_agent[i]:
                row = np.zeros(len(comp_agents) + len(comp_items))
                row[arow[i]] = 1.0
                row[irow[a]] = 1.0
                rows.append(row)
                rhs.append(np.log(w[plus[i]] * abs(ua[i, a])))
        sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
        resid = np.array(rows) @ sol - np.array(rhs)
        if np.max(np.abs(resid)) > 1e-9:
            return "drop", None
        for i in comp_agents:
            U_ex[i] = np.exp(sol[arow[i]])
        for a in comp_items:
            sign[a] = 1.0 if ua[adj_item[a][0], a] > 0 else -1.0
            p_ex[a] = sign[a] * np.exp(sol[irow[a]])
        money = sum(p_ex[a] * qa[a] for a in comp_items)
        target = sum(w[plus[i]] for i in comp_agents)
        if money <= 0:
            return "bad", None
        sigma = money / target
        for i in comp_agents:
            U_ex[i] *= sigma
        for a in comp_items:
            p_ex[a] /= sigma

    # Most-violated maximum condition against the exact face values.
    worst, worst_gap = None, 1e-9
    for i in range(k):
        for a in range(ma):
            if (i, a) in edges or not ua[i, a] * p_ex[a] > 0:
                continue
            gap = (w[plus[i]] * ua[i, a] / U_ex[i] - p_ex[a]) / max(1.0, abs(p_ex[a]))
            if gap > worst_gap:
                worst, worst_gap = (i, a), gap
    if worst is not None:
        return "add", worst

    # Allocation on support edges: item balance plus exact budgets.
    edge_list = sorted(edges)
    idx = {e: j for j, e in enumerate(edge_list)}
    constraints = []
    for a in range(ma):
        coefs = [0.0] * len(edge_list)
        for i in adj_item[a]:
            coefs[idx[(i, a)]] = 1.0
        constraints.append((coefs, "=", float(qa[a])))
    for i in range(k):
        coefs = [0.0] * len(edge_list)
        for a in adj_agent[i]:
            coefs[idx[(i, a)]] = float(p_ex[a])
        constraints.append((coefs, "=", float(w[plus[i]])))
    sol = solve_lp(LpSpec.build([0.0] * len(edge_list), constraints))
    if not sol.optimal:
        return "drop", None

    n, m = problem.n_agents, problem.n_items
    rows = [[0.0] * m for _ in range(n)]
    for j, (i, a) in enumerate(edge_list):
        rows[plus[i]][active[a]] = max(0.0, float(sol.point[j]))
    price = [0.0] * m
    for a in range(ma):
        price[active[a]] = float(p_ex[a])
    _assign_neutral_items(problem, items, rows)
    division = Division(Allocation.from_rows(rows), tuple(price), 1)
    report = kkt_verify(problem, division, tol, weights)
    if report.passed:
        return "ok", division
    return "bad", None


def _assign_neutral_items(problem: Problem, items, rows) -> None:
    """Neutral items go wholly to the first agent indifferent to them."""
    for a in items.a_zero:
        eater = next(i for i in range(problem.n_agents) if problem.utilities[i][a] == 0)
        rows[eater][a] = float(problem.endowment[a])
