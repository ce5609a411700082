"""Enumerate all competitive divisions of a negative problem.

Negative problems can have many competitive utility profiles (the count
grows exponentially in min(n, m)), so this module enumerates them instead
of solving a single program:

* two agents: items sorted by utility ratio; candidates are the cuts
  (agent 1 takes a left interval of bads plus the complementary goods) and
  the single-item splits, each checked against the first-order certificate;
* two items: agents sorted by ratio; cut and split windows have closed
  forms for the shares and prices;
* general: depth-first search over acyclic consumption supports.  On a
  forest support the stationarity relations fix all price and disutility
  magnitudes up to one scalar per connected component; the scalar comes
  from the component's money identity, the shares from leaf-stripping the
  tree.  Ratio-inconsistent branches are pruned as soon as two agents share
  a component.

Every emitted division passes kkt_verify; profiles are deduplicated and
sorted in descending lexicographic order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional

from .classify import Classification, classify
from .model import (
    Allocation,
    Division,
    Problem,
    UtilityProfile,
    partition_items,
    utility_profile,
)
from .numbers import PROFILE_TOL, profiles_equal, ratio_cmp
from .solver import ClassificationMismatch, kkt_verify

class EnumerationLimitExceeded(RuntimeError):
    """The problem exceeds the configured enumeration limits."""


#: Hard cap on complete supports examined by the general enumerator.
DEFAULT_SUPPORT_LIMIT = 2_000_000
#: Size gate for the general enumerator.
DEFAULT_SIZE_LIMIT = 12


@dataclass(frozen=True)
class EnumerationLimits:
    supports: int = DEFAULT_SUPPORT_LIMIT
    max_agents_plus_items: int = DEFAULT_SIZE_LIMIT
    deadline: Optional[float] = None  # time.monotonic() cutoff


@dataclass(frozen=True)
class EnumerationResult:
    divisions: tuple[Division, ...]
    profiles: tuple[UtilityProfile, ...]
    exhaustive: bool

    def __len__(self) -> int:
        return len(self.profiles)


def _numeric(problem: Problem):
    conv = Fraction if problem.exact else float
    u = [[conv(v) for v in row] for row in problem.utilities]
    omega = [conv(q) for q in problem.endowment]
    return u, omega, problem.exact


def _tols(exact: bool):
    kkt_tol = 0 if exact else 1e-7
    dedup_tol = 0 if exact else PROFILE_TOL
    return kkt_tol, dedup_tol


def _require_negative(problem, classification) -> Classification:
    if classification is None:
        classification = classify(problem)
    if not classification.is_negative:
        raise ClassificationMismatch(f"enumeration needs a negative problem, got {classification.kind}")
    return classification


def _neutral_assignment(problem: Problem, u, omega, rows) -> None:
    for a in partition_items(problem).a_zero:
        eater = next(i for i in range(problem.n_agents) if u[i][a] == 0)
        rows[eater][a] = omega[a]


def _finish(problem: Problem, candidates, exact: bool, exhaustive: bool) -> EnumerationResult:
    """kkt-filter, deduplicate by profile, and sort (descending lex)."""
    kkt_tol, dedup_tol = _tols(exact)
    kept: list[tuple[tuple, Division]] = []
    for division in candidates:
        if not kkt_verify(problem, division, kkt_tol).passed:
            continue
        profile = utility_profile(problem, division.allocation).values
        if any(profiles_equal(profile, seen, dedup_tol) for seen, _ in kept):
            continue
        kept.append((profile, division))
    kept.sort(key=lambda pair: tuple(-float(v) for v in pair[0]))
    divisions = tuple(d for _, d in kept)
    profiles = tuple(UtilityProfile(p) for p, _ in kept)
    return EnumerationResult(divisions, profiles, exhaustive)


def select_division(result: EnumerationResult) -> Division:
    """The division maximizing the product of disutilities, ties broken
    toward the lexicographically largest profile."""
    if not result.profiles:
        raise ValueError("empty enumeration result")
    best_idx = 0
    best_key = None
    for idx, profile in enumerate(result.profiles):
        prod = 1
        for v in profile.values:
            prod *= -v
        key = (prod, tuple(profile.values))
        if best_key is None or key > best_key:
            best_key, best_idx = key, idx
    return result.divisions[best_idx]


# ---------------------------------------------------------------------------
# Two agents


def enumerate_two_agents(problem: Problem,
                         classification: Optional[Classification] = None) -> EnumerationResult:
    """All competitive divisions of a two-agent negative problem.

    Works on the ratio-sorted item line after merging equal-ratio items
    (merged quantity one, merged utility summed against the quantities);
    candidates are every cut position and every single-item split, and the
    certificate check keeps the competitive ones.  At most 2m-1 profiles.
    """
    if problem.n_agents != 2:
        raise ValueError("enumerate_two_agents needs exactly two agents")
    _require_negative(problem, classification)
    u, omega, exact = _numeric(problem)
    items = partition_items(problem)
    zero = set(items.a_zero)

    # Virtual columns: drop neutral items, zero out the losing side of
    # opposite-sign goods (the loser never consumes them).
    structural = [a for a in range(problem.n_items) if a not in zero]
    v = {}
    good = {}
    for a in structural:
        col = [u[0][a], u[1][a]]
        if a in set(items.a_plus):
            col = [x if x > 0 else 0 * x for x in col]
            good[a] = True
        else:
            good[a] = False
        v[a] = col

    # Merge equal-ratio items of the same kind; track member lists.
    groups: list[dict] = []
    for a in structural:
        placed = False
        for g in groups:
            if g["good"] == good[a] and ratio_cmp(v[a][0], v[a][1], g["num"], g["den"]) == 0:
                g["members"].append(a)
                g["u1"] += v[a][0] * omega[a]
                g["u2"] += v[a][1] * omega[a]
                placed = True
                break
        if not placed:
            groups.append({"good": good[a], "num": v[a][0], "den": v[a][1],
                           "members": [a], "u1": v[a][0] * omega[a],
                           "u2": v[a][1] * omega[a]})
    groups.sort(key=cmp_to_key(lambda g, h: ratio_cmp(g["u1"], g["u2"], h["u1"], h["u2"])))
    M = len(groups)

    def left_share(boundary: int, split_at: Optional[int] = None):
        """Agent 1's share per group: bads left of the boundary and goods
        right of it go to agent 1, the mirror set to agent 2."""
        shares = []
        for j, g in enumerate(groups):
            if split_at is not None and j == split_at:
                shares.append(None)
            elif j < boundary:
                shares.append(0 if g["good"] else 1)
            else:
                shares.append(1 if g["good"] else 0)
        return shares

    candidates = []
    one = Fraction(1) if exact else 1.0

    def build(shares, split_at=None, s=None):
        U1 = sum(g["u1"] * (s if j == split_at else shares[j])
                 for j, g in enumerate(groups))
        U2 = sum(g["u2"] * ((one - s) if j == split_at else (one - shares[j]))
                 for j, g in enumerate(groups))
        if not (U1 < 0 and U2 < 0):
            return
        rows = [[0 * one for _ in range(problem.n_items)] for _ in range(2)]
        price = [0 * one for _ in range(problem.n_items)]
        for j, g in enumerate(groups):
            share1 = s if j == split_at else shares[j]
            for a in g["members"]:
                rows[0][a] = share1 * omega[a]
                rows[1][a] = (one - share1) * omega[a]
                if share1 > 0:
                    price[a] = v[a][0] / -U1
                else:
                    price[a] = v[a][1] / -U2
        _neutral_assignment(problem, u, omega, rows)
        candidates.append(Division(Allocation.from_rows(rows), tuple(price), -1))

    for cut in range(M + 1):
        build(left_share(cut))
    for k in range(M):
        g = groups[k]
        if g["u1"] == 0 or g["u2"] == 0:
            continue
        shares = left_share(k, split_at=k)
        B1 = sum(groups[j]["u1"] * shares[j] for j in range(M) if j != k)
        B2 = sum(groups[j]["u2"] * (one - shares[j]) for j in range(M) if j != k)
        s = (g["u1"] * B2 + g["u1"] * g["u2"] - g["u2"] * B1) / (2 * g["u1"] * g["u2"])
        eps = 0 if exact else 1e-12
        if not (eps < s < one - eps):
            continue
        build(shares, split_at=k, s=s)

    return _finish(problem, candidates, exact, True)


# ---------------------------------------------------------------------------
# Two items


def enumerate_two_items(problem: Problem,
                        classification: Optional[Classification] = None) -> EnumerationResult:
    """All competitive divisions of a two-item negative problem.

    With two bads, agents sit on a ratio line; cuts are competitive inside
    the window r_i <= i/(n-i) <= r_{i+1} and strict single-agent splits
    inside (i-1)/(n-i+1) < r_i < i/(n-i), with closed-form shares.  With a
    collective good present the division is unique.  At most 2n-1 profiles.
    """
    if problem.n_items != 2:
        raise ValueError("enumerate_two_items needs exactly two items")
    _require_negative(problem, classification)
    u, omega, exact = _numeric(problem)
    n = problem.n_agents
    one = Fraction(1) if exact else 1.0
    items = partition_items(problem)

    if len(items.a_minus) == 0:
        raise ClassificationMismatch("a negative problem must contain a collective bad")

    candidates: list[Division] = []
    if len(items.a_minus) == 1 and len(items.a_plus) == 1:
        candidates.extend(_two_items_one_good(problem, u, omega, items, one))
    elif len(items.a_minus) == 1 and len(items.a_zero) == 1:
        candidates.extend(_two_items_one_neutral(problem, u, omega, items, one))
    else:
        candidates.extend(_two_items_two_bads(problem, u, omega, one, exact))
    return _finish(problem, candidates, exact, True)


def _two_items_two_bads(problem, u, omega, one, exact):
    n = problem.n_agents
    va = [u[i][0] * omega[0] for i in range(n)]
    vb = [u[i][1] * omega[1] for i in range(n)]
    order = sorted(range(n), key=cmp_to_key(
        lambda i, j: ratio_cmp(va[i], vb[i], va[j], vb[j])))
    ra = [va[i] for i in order]
    rb = [vb[i] for i in order]

    def emit(z_unit, price_unit):
        rows = [[0 * one, 0 * one] for _ in range(n)]
        for pos, i in enumerate(order):
            rows[i][0] = z_unit[pos][0] * omega[0]
            rows[i][1] = z_unit[pos][1] * omega[1]
        price = (price_unit[0] / omega[0], price_unit[1] / omega[1])
        return Division(Allocation.from_rows(rows), price, -1)

    candidates = []
    for i in range(1, n):  # cut between sorted positions i-1 and i (1-based i)
        if ratio_cmp(ra[i - 1], rb[i - 1], i, n - i) <= 0 <= ratio_cmp(ra[i], rb[i], i, n - i):
            z = [(one / i, 0 * one) if pos < i else (0 * one, one / (n - i))
                 for pos in range(n)]
            candidates.append(emit(z, (-one * i, -one * (n - i))))
    for i in range(1, n + 1):  # strict split window around sorted position i
        uia, uib = ra[i - 1], rb[i - 1]
        if not (ratio_cmp(i - 1, n - i + 1, uia, uib) < 0 and
                ratio_cmp(uia, uib, i, n - i) < 0):
            continue
        x = ((n - i + 1) * uia - (i - 1) * uib) / (n * uia)
        y = (i * uib - (n - i) * uia) / (n * uib)
        eps = 0 if exact else 1e-12
        if not (x > eps and y > eps):
            continue
        z = []
        for pos in range(n):
            if pos < i - 1:
                z.append(((one - x) / (i - 1), 0 * one))
            elif pos == i - 1:
                z.append((x, y))
            else:
                z.append((0 * one, (one - y) / (n - i)))
        denom = uia + uib
        candidates.append(emit(z, (-n * uia / denom, -n * uib / denom)))
    return candidates


def _two_items_one_good(problem, u, omega, items, one):
    """One collective good, one collective bad: a single division.

    Everyone consumes the bad; the good goes to the agent with the best
    good-to-bad ratio, whose utilities pin both prices.
    """
    n = problem.n_agents
    g, b = items.a_plus[0], items.a_minus[0]
    vg = [max(u[i][g], 0 * one) * omega[g] for i in range(n)]
    vb = [u[i][b] * omega[b] for i in range(n)]
    best = 0
    for i in range(1, n):
        # maximize vg/|vb|, i.e. minimize the signed ratio vg/vb
        if ratio_cmp(vg[i], vb[i], vg[best], vb[best]) < 0:
            best = i
    total = vg[best] + vb[best]
    if not total < 0:
        return []
    d = -total / n
    pg, pb = vg[best] / d, vb[best] / d
    share_b = -one / pb  # each non-best agent's slice of the bad
    rows = [[0 * one, 0 * one] for _ in range(n)]
    for i in range(n):
        if i == best:
            rows[i][g] = omega[g]
            rows[i][b] = (one - (n - 1) * share_b) * omega[b]
        else:
            rows[i][b] = share_b * omega[b]
    price = [0 * one, 0 * one]
    price[g] = pg / omega[g]
    price[b] = pb / omega[b]
    return [Division(Allocation.from_rows(rows), tuple(price), -1)]


def _two_items_one_neutral(problem, u, omega, items, one):
    """One bad plus one neutral item: everyone eats an equal slice of the bad."""
    n = problem.n_agents
    b = items.a_minus[0]
    rows = [[0 * one, 0 * one] for _ in range(n)]
    for i in range(n):
        rows[i][b] = omega[b] / n
    _neutral_assignment(problem, u, omega, rows)
    price = [0 * one, 0 * one]
    price[b] = -n / omega[b]
    return [Division(Allocation.from_rows(rows), tuple(price), -1)]


# ---------------------------------------------------------------------------
# General support search


def enumerate_general(problem: Problem,
                      limits: Optional[EnumerationLimits] = None,
                      classification: Optional[Classification] = None) -> EnumerationResult:
    """Enumerate competitive divisions via acyclic consumption supports.

    Items are assigned consumer sets one at a time; a consumer set may take
    at most one agent from each current component (acyclicity), and each
    assignment locks the relative disutility ratios inside the merged
    component, so ratio-infeasible prefixes are pruned as soon as they
    appear.  Complete supports are scaled by the per-component money
    identity; shares come from leaf-stripping the forest; the certificate
    check keeps the survivors.  One division is kept per utility profile.
    """
    limits = limits or EnumerationLimits()
    _require_negative(problem, classification)
    n, m = problem.n_agents, problem.n_items
    if n + m > limits.max_agents_plus_items:
        return EnumerationResult((), (), False)
    u, omega, exact = _numeric(problem)
    items = partition_items(problem)
    one = Fraction(1) if exact else 1.0

    active = list(items.a_plus) + list(items.a_minus)
    plus_set = set(items.a_plus)
    valid: dict[int, list[int]] = {}
    for a in active:
        valid[a] = [i for i in range(n) if u[i][a] > 0] if a in plus_set else list(range(n))
        if not valid[a]:
            return EnumerationResult((), (), True)

    # Agents that can still pick up an edge from the remaining items.
    suffix_cover = [set() for _ in range(len(active) + 1)]
    for pos in range(len(active) - 1, -1, -1):
        suffix_cover[pos] = suffix_cover[pos + 1] | set(valid[active[pos]])

    eps = 0 if exact else 1e-9

    # Search state, mutated in place with an undo trail per node.
    comp = list(range(n))                     # agent -> component id
    d = [one] * n                             # relative disutility magnitude
    members: list[list[int]] = [[i] for i in range(n)]
    comp_items: list[list] = [[] for _ in range(n)]  # [item, p_rel, consumers]
    money = [0 * one] * n                     # per component: sum p_rel * omega
    eaten = [0] * n
    ucols = [[u[i][a] for i in range(n)] for a in range(problem.n_items)]
    valid_sets = {a: set(v) for a, v in valid.items()}

    certified: dict[tuple, Division] = {}
    state = {"leaves": 0, "truncated": False}

    def push(a, consumers) -> Optional[list]:
        """Merge the consumers' components around item a; None on a ratio
        violation.  Consumers were prefiltered to be max-ratio members of
        their components for this item, so only the cross-part conditions
        on previously priced items need checking here."""
        col = ucols[a]
        base = consumers[0]
        bc = comp[base]
        p_new = col[base] / d[base]
        if len(consumers) == 1:
            comp_items[bc].append([a, p_new, consumers])
            eaten[base] += 1
            old_money = money[bc]
            money[bc] = old_money + p_new * omega[a]
            return [("item", bc, old_money)]
        parts = [(bc, None)]
        for i in consumers[1:]:
            parts.append((comp[i], col[i] / (p_new * d[i])))
        # Ratio checks across the about-to-merge parts, in the new frame.
        for pi, (ci, sigma_i) in enumerate(parts):
            for (b, pb, cons) in comp_items[ci]:
                pb_new = pb if sigma_i is None else pb / sigma_i
                tol_b = eps * (1 + abs(pb_new))
                bcol = ucols[b]
                for pj, (cj, sigma_j) in enumerate(parts):
                    if pi == pj:
                        continue
                    for j in members[cj]:
                        dj = d[j] if sigma_j is None else d[j] * sigma_j
                        if bcol[j] / dj > pb_new + tol_b:
                            return None
        # Commit: scale and move the non-base parts into the base component.
        trail = []
        new_money = money[bc]
        for (ci, sigma) in parts[1:]:
            for j in members[ci]:
                trail.append(("d", j, d[j]))
                d[j] = d[j] * sigma
                trail.append(("comp", j, ci))
                comp[j] = bc
            for entry in comp_items[ci]:
                trail.append(("price", entry, entry[1]))
                entry[1] = entry[1] / sigma
            trail.append(("members", bc, ci, len(members[ci]), len(comp_items[ci])))
            members[bc].extend(members[ci])
            comp_items[bc].extend(comp_items[ci])
            members[ci] = []
            comp_items[ci] = []
            new_money = new_money + money[ci] / sigma
        trail.append(("item", bc, money[bc]))
        money[bc] = new_money + p_new * omega[a]
        comp_items[bc].append([a, p_new, consumers])
        for i in consumers:
            eaten[i] += 1
        return trail

    def pop(trail, consumers):
        for i in consumers:
            eaten[i] -= 1
        for op in reversed(trail):
            if op[0] == "item":
                comp_items[op[1]].pop()
                money[op[1]] = op[2]
            elif op[0] == "d":
                d[op[1]] = op[2]
            elif op[0] == "comp":
                comp[op[1]] = op[2]
            elif op[0] == "price":
                op[1][1] = op[2]
            else:  # members
                _, bc, ci, na, ni = op
                members[ci] = members[bc][len(members[bc]) - na:]
                del members[bc][len(members[bc]) - na:]
                comp_items[ci] = comp_items[bc][len(comp_items[bc]) - ni:]
                del comp_items[bc][len(comp_items[bc]) - ni:]

    def finish_leaf():
        state["leaves"] += 1
        scale = [None] * n
        for cid in range(n):
            if not members[cid]:
                continue
            cash = money[cid]
            if not cash < 0:
                return
            scale[cid] = cash / (-len(members[cid]))
        d_abs = [d[i] * scale[comp[i]] for i in range(n)]
        key = tuple(d_abs) if exact else tuple([round(v, 9) for v in d_abs])
        if key in certified:
            return
        prices = {}
        for cid in range(n):
            for (b, pb, cons) in comp_items[cid]:
                prices[b] = (pb / scale[cid], cons)
        for b, (p_b, cons) in prices.items():
            bcol = ucols[b]
            tol_b = eps * (1 + abs(p_b))
            for j in range(n):
                if j not in cons and bcol[j] / d_abs[j] > p_b + tol_b:
                    return
        rows = _strip_solve(n, problem.n_items, prices, omega, one, exact)
        if rows is None:
            return
        _neutral_assignment(problem, u, omega, rows)
        price = [0 * one for _ in range(problem.n_items)]
        for b, (p_b, _) in prices.items():
            price[b] = p_b
        division = Division(Allocation.from_rows(rows), tuple(price), -1)
        if kkt_verify(problem, division, 0 if exact else 1e-7).passed:
            certified[key] = division

    last = len(active)

    def dfs(pos: int):
        if state["truncated"]:
            return
        if state["leaves"] >= limits.supports or (
                limits.deadline is not None and time.monotonic() > limits.deadline):
            state["truncated"] = True
            return
        if pos == last:
            finish_leaf()
            return
        a = active[pos]
        later = suffix_cover[pos + 1]
        vset = valid_sets[a]
        col = ucols[a]
        # Agents no later item can cover must consume this one (they are
        # still in their singleton components, so this never forces a cycle).
        must = [i for i in range(n) if eaten[i] == 0 and i not in later]
        if any(i not in vset for i in must):
            return
        used = {comp[i] for i in must}
        # A consumer must sit at the maximum ratio within its component;
        # the component scale cancels, so this prefilter is per agent.
        buckets: dict[int, list[int]] = {}
        for i in valid[a]:
            c = comp[i]
            if c in used:
                continue
            ri = col[i] / d[i]
            tol_i = eps * (1 + abs(ri))
            if all(col[j] / d[j] <= ri + tol_i for j in members[c] if j != i):
                buckets.setdefault(c, []).append(i)
        pools = list(buckets.values())
        counts = [len(p) + 1 for p in pools]
        total = 1
        for c in counts:
            total *= c
        for code in range(total):
            chosen = list(must)
            rest = code
            for t, cnt in enumerate(counts):
                rest, r = divmod(rest, cnt)
                if r:
                    chosen.append(pools[t][r - 1])
            if not chosen:
                continue
            trail = push(a, chosen)
            if trail is not None:
                dfs(pos + 1)
                pop(trail, chosen)
                if state["truncated"]:
                    return

    dfs(0)
    kept: list[tuple[tuple, Division]] = []
    dedup_tol = 0 if exact else PROFILE_TOL
    for division in certified.values():
        profile = utility_profile(problem, division.allocation).values
        if any(profiles_equal(profile, seen, dedup_tol) for seen, _ in kept):
            continue
        kept.append((profile, division))
    kept.sort(key=lambda pair: tuple(-float(v) for v in pair[0]))
    return EnumerationResult(tuple(dv for _, dv in kept),
                             tuple(UtilityProfile(p) for p, _ in kept),
                             not state["truncated"])


def _strip_solve(n, m, prices, omega, one, exact):
    """Shares on a forest support from item balances and unit budgets."""
    edges = []
    for a, (p_a, consumers) in prices.items():
        for i in consumers:
            edges.append((i, a))
    adj_agent = {i: [] for i in range(n)}
    adj_item = {}
    for i, a in edges:
        adj_agent[i].append(a)
        adj_item.setdefault(a, []).append(i)
    remaining_q = {a: omega[a] for a in prices}
    remaining_b = {i: -one for i in range(n)}
    deg_agent = {i: len(adj_agent[i]) for i in range(n)}
    deg_item = {a: len(adj_item[a]) for a in adj_item}
    rows = [[0 * one for _ in range(m)] for _ in range(n)]
    alive = set(edges)
    queue = [("item", a) for a in deg_item if deg_item[a] == 1]
    queue += [("agent", i) for i in deg_agent if deg_agent[i] == 1]
    while queue:
        kind, node = queue.pop()
        if kind == "item":
            live = [i for i in adj_item.get(node, []) if (i, node) in alive]
            if len(live) != 1:
                continue
            i = live[0]
            z = remaining_q[node]
            if not exact and z < 0:
                if z < -1e-9:
                    return None
                z = 0 * one
            elif exact and z < 0:
                return None
            rows[i][node] = z
            remaining_b[i] = remaining_b[i] - prices[node][0] * z
            alive.discard((i, node))
            deg_agent[i] -= 1
            remaining_q[node] = 0 * one
            if deg_agent[i] == 1:
                queue.append(("agent", i))
        else:
            live = [a for a in adj_agent[node] if (node, a) in alive]
            if len(live) != 1:
                continue
            a = live[0]
            z = remaining_b[node] / prices[a][0]
            if (exact and z < 0) or (not exact and z < -1e-9):
                return None
            z = max(z, 0 * one)
            rows[node][a] = z
            remaining_q[a] = remaining_q[a] - z
            alive.discard((node, a))
            deg_item[a] -= 1
            remaining_b[node] = 0 * one
            if deg_item[a] == 1:
                queue.append(("item", a))
    if alive:
        return None  # cyclic remainder; only forest supports are solvable here
    for a, q in remaining_q.items():
        tol = 0 if exact else 1e-7
        if abs(q) > tol * max(1, abs(omega[a])):
            return None
    return rows


# ---------------------------------------------------------------------------
# Hard-instance generators


def generate_lower_bound_instance(kind: str, n: int, m: int) -> Problem:
    """Parametric all-bads families with many competitive divisions.

    kind "two_agents": a powers-of-two ladder reaching the 2m-1 bound;
    kind "two_items": a ratio ladder putting every cut and split in its
    window, reaching 2n-1; kind "general": the diagonal -1 / off-diagonal
    -3 family (plus indifferent extra agents or items) reaching
    2^min(n,m) - 1 profiles for n != m.
    """
    if kind == "two_agents":
        if n != 2 or m < 2:
            raise ValueError("two_agents family needs n=2, m>=2")
        tip = 2 ** (m - 2) + 1
        u1 = [-(2 ** max(k - 2, 0)) for k in range(1, m)] + [-tip]
        u2 = [-tip] + [-(2 ** max(m - 1 - k, 0)) for k in range(2, m + 1)]
        rows = (tuple(u1), tuple(u2))
        return _bads_problem(rows)
    if kind == "two_items":
        if m != 2 or n < 2:
            raise ValueError("two_items family needs m=2, n>=2")
        if n == 6:
            rows = ((-1, -6), (-1, -3), (-2, -3), (-3, -2), (-3, -1), (-6, -1))
        else:
            rows = tuple((-(2 * i - 1), -(2 * (n - i) + 1)) for i in range(1, n + 1))
        return _bads_problem(rows)
    if kind == "general":
        if n == m:
            raise ValueError("general family needs n != m")
        if n < 2 or m < 2:
            raise ValueError("general family needs n, m >= 2")
        if n > m:
            rows = []
            for i in range(m):
                rows.append(tuple(-1 if a == i else -3 for a in range(m)))
            for _ in range(m, n):
                rows.append(tuple(-1 for _ in range(m)))
        else:
            rows = []
            for i in range(n):
                rows.append(tuple(-1 if (a == i or a >= n) else -3 for a in range(m)))
        return _bads_problem(tuple(rows))
    raise ValueError(f"unknown instance kind {kind!r}")


def _bads_problem(rows: tuple) -> Problem:
    n, m = len(rows), len(rows[0])
    agents = tuple(str(i + 1) for i in range(n))
    items = tuple("abcdefghijkl"[a] for a in range(m))
    return Problem(agents, items, tuple(1 for _ in range(m)), rows)
