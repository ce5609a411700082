"""Connectivity of the efficient-and-envy-free set for two-bads problems.

With two bads and ratio-sorted agents, every efficient envy-free
allocation lives in a chain of split rectangles S^1, ..., S^n (agent i
mixes both bads, agents left of i share bad a equally, agents right of i
share bad b).  Adjacent rectangles touch only at the cut allocations, so
the component count is combinatorial: an EF cut glues its two rectangles,
and a rectangle whose boundary cuts both fail envy-freeness can still
hold an isolated interior component.

ef_components_two_bads evaluates those window conditions directly;
brute_force_components rasterizes each rectangle and counts connected
components of the EF mask, serving as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .model import Problem
from .numbers import ratio_cmp


@dataclass(frozen=True)
class ComponentReport:
    count: int
    ef_cuts: tuple[int, ...]          # 1-based boundary index i of cut z^{i/i+1}
    interior_splits: tuple[int, ...]  # 1-based rectangle index with an interior component
    ratio_order: tuple[float, ...]    # sorted bad-a/bad-b utility ratios


def _two_bads_ratios(problem: Problem):
    n, m = problem.n_agents, problem.n_items
    if m != 2:
        raise ValueError("component analysis needs exactly two items")
    for row in problem.utilities:
        if not all(v < 0 for v in row):
            raise ValueError("component analysis needs every item to be a bad for everyone")
    va = [problem.utilities[i][0] * problem.endowment[0] for i in range(n)]
    vb = [problem.utilities[i][1] * problem.endowment[1] for i in range(n)]
    import functools
    order = sorted(range(n), key=functools.cmp_to_key(
        lambda i, j: ratio_cmp(va[i], vb[i], va[j], vb[j])))
    ratios = [float(va[i]) / float(vb[i]) for i in order]
    return order, ratios


def ef_components_two_bads(problem: Problem) -> ComponentReport:
    """Count the connected components of the efficient envy-free set.

    A cut between sorted positions i and i+1 is envy-free exactly when
    r_i <= i/(n-i) <= r_{i+1}; runs of consecutive EF cuts merge into one
    component.  A group of equal-ratio agents holds an isolated interior
    component when its neighbours' ratios fall strictly inside the group's
    share window; for the first group only the right condition applies, for
    the last only the left one.
    """
    n = problem.n_agents
    if n < 2:
        raise ValueError("need at least two agents")
    _, r = _two_bads_ratios(problem)

    ef_cuts = [i for i in range(1, n)
               if r[i - 1] * (n - i) <= i <= r[i] * (n - i)]

    # Group equal-ratio agents; at most one interior component per group.
    groups: list[tuple[int, int]] = []  # (first position, last position), 1-based
    start = 1
    for i in range(2, n + 1):
        if r[i - 1] != r[start - 1]:
            groups.append((start, i - 1))
            start = i
    groups.append((start, n))

    interior: list[int] = []
    cut_set = set(ef_cuts)
    for g, (lo, hi) in enumerate(groups):
        if any(lo <= i <= hi - 1 for i in cut_set):
            continue  # a knife-edge cut inside the group already connects it
        left_ok = True
        if g > 0:
            prev = r[groups[g - 1][1] - 1]
            b = lo - 1
            left_ok = prev * (n - b) > b  # previous ratio above the left bound
        right_ok = True
        if g < len(groups) - 1:
            nxt = r[groups[g + 1][0] - 1]
            b = hi
            right_ok = nxt * (n - b) < b  # next ratio below the right bound
        if left_ok and right_ok and not (g > 0 and (lo - 1) in cut_set) \
                and not (g < len(groups) - 1 and hi in cut_set):
            interior.append(lo)

    runs = 0
    prev = None
    for i in ef_cuts:
        if prev is None or i != prev + 1:
            runs += 1
        prev = i
    count = runs + len(interior)
    return ComponentReport(count, tuple(ef_cuts), tuple(interior),
                           tuple(float(x) for x in r))


def brute_force_components(problem: Problem, grid: int = 200) -> int:
    """Count EF components by rasterizing every split rectangle.

    Samples each rectangle on a (grid+1)^2 lattice (rectangles 1 and n are
    segments) and marks envy-free points.  Within one rectangle the EF set
    is an intersection of half-planes with a box, hence convex: a nonempty
    mask is a single region (pixel adjacency would spuriously split regions
    that taper below one pixel near a corner).  Rectangles are then glued
    through their shared cut allocations whenever the cut itself is marked.
    """
    n = problem.n_agents
    if n < 2 or n > 8:
        raise ValueError("oracle supports 2..8 agents")
    if grid > 400:
        raise ValueError("grid capped at 400")
    order, _ = _two_bads_ratios(problem)
    u = np.array([[float(problem.utilities[i][0]) * float(problem.endowment[0]),
                   float(problem.utilities[i][1]) * float(problem.endowment[1])]
                  for i in order])

    tol = 1e-9
    occupied = []
    corner_left = []   # cut z^{i/i+1} marked, seen from S^i: (max_x, 0)
    corner_right = []  # the same cut seen from S^{i+1}: (0, max_y)
    for i in range(1, n + 1):
        mask = _ef_mask(u, n, i, grid, tol)
        # Slivers thinner than one pixel escape the lattice; fall back to an
        # exact feasibility check over the same inequalities.
        occupied.append(bool(mask.any()) or _ef_nonempty(u, n, i))
        corner_left.append(bool(mask[-1, 0]))
        corner_right.append(bool(mask[0, -1]))

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(1, n):
        if corner_left[i - 1] and corner_right[i]:
            parent[find(i - 1)] = find(i)

    return len({find(i) for i in range(n) if occupied[i]})


def _ef_mask(u: np.ndarray, n: int, i: int, grid: int, tol: float) -> np.ndarray:
    """Envy-free mask of rectangle S^i on a (grid+1)x(grid+1) lattice.

    Coordinates: x = share of bad a to agent i in [0, 1/i] (pinned to 1 for
    i = 1), y = share of bad b in [0, 1/(n-i+1)] (pinned to 1 for i = n).
    """
    if i == 1:
        xs = np.full(grid + 1, 1.0)
        ys = np.linspace(0.0, 1.0 / n, grid + 1)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        X = X[:1, :]
        Y = Y[:1, :]
    elif i == n:
        xs = np.linspace(0.0, 1.0 / n, grid + 1)
        X, Y = np.meshgrid(xs, np.full(grid + 1, 1.0), indexing="ij")
        X = X[:, :1]
        Y = Y[:, :1]
    else:
        xs = np.linspace(0.0, 1.0 / i, grid + 1)
        ys = np.linspace(0.0, 1.0 / (n - i + 1), grid + 1)
        X, Y = np.meshgrid(xs, ys, indexing="ij")

    # Bundle utilities for each agent under the S^i structure.
    left = (1.0 - X) / (i - 1) if i > 1 else np.zeros_like(X)
    right = (1.0 - Y) / (n - i) if i < n else np.zeros_like(Y)

    # For each (evaluator e, bundle owner o): utility of o's bundle to e.
    n_pts = X.shape
    ok = np.ones(n_pts, dtype=bool)
    bundles = []  # (amount_a, amount_b) arrays per sorted agent
    for o in range(1, n + 1):
        if o < i:
            bundles.append((left, 0.0))
        elif o == i:
            bundles.append((X, Y))
        else:
            bundles.append((0.0, right))
    for e in range(n):
        ua, ub = u[e]
        own = ua * np.asarray(bundles[e][0]) + ub * np.asarray(bundles[e][1])
        for o in range(n):
            if o == e:
                continue
            other = ua * np.asarray(bundles[o][0]) + ub * np.asarray(bundles[o][1])
            ok &= own >= other - tol
    return ok


def _ef_nonempty(u: np.ndarray, n: int, i: int) -> bool:
    """Exact nonemptiness of EF within rectangle S^i (tiny LP feasibility)."""
    from .lp import LpSpec, solve_lp

    # Bundle of owner o as an affine function of (x, y): amount_a, amount_b.
    def bundle(o):
        if o < i:
            return ((-1.0 / (i - 1), 0.0, 1.0 / (i - 1)) if i > 1 else (0.0, 0.0, 0.0),
                    (0.0, 0.0, 0.0))
        if o == i:
            return (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)
        return ((0.0, 0.0, 0.0),
                (0.0, -1.0 / (n - i), 1.0 / (n - i)) if i < n else (0.0, 0.0, 0.0))

    constraints = []
    for e in range(n):
        ua, ub = float(u[e, 0]), float(u[e, 1])
        own_a, own_b = bundle(e + 1)
        for o in range(1, n + 1):
            if o == e + 1:
                continue
            oth_a, oth_b = bundle(o)
            coefs = [ua * (own_a[k] - oth_a[k]) + ub * (own_b[k] - oth_b[k])
                     for k in range(2)]
            rhs = -(ua * (own_a[2] - oth_a[2]) + ub * (own_b[2] - oth_b[2]))
            constraints.append((coefs, ">=", rhs))
    lo_x, hi_x = (1.0, 1.0) if i == 1 else (0.0, 1.0 / i)
    lo_y, hi_y = (1.0, 1.0) if i == n else (0.0, 1.0 / (n - i + 1))
    sol = solve_lp(LpSpec.build([0.0, 0.0], constraints,
                                lower=(lo_x, lo_y), upper=(hi_x, hi_y)))
    return sol.optimal


def clone_bads(problem: Problem, m: int) -> Problem:
    """Split the second bad into m-1 equal-utility clones (unit quantities).

    The clones are parallel columns summing back to the original, so the
    efficient envy-free set keeps its component structure while the item
    count grows to any m >= 3.
    """
    if problem.n_items != 2:
        raise ValueError("clone_bads needs a two-item problem")
    if m < 3:
        raise ValueError("m must be at least 3")
    for row in problem.utilities:
        if not all(v < 0 for v in row):
            raise ValueError("clone_bads needs an all-bads problem")
    k = m - 1
    items = (problem.items[0],) + tuple(f"{problem.items[1]}{j+1}" for j in range(k))
    rows = []
    for row in problem.utilities:
        ua = row[0] * problem.endowment[0]
        ub = row[1] * problem.endowment[1]
        if problem.exact:
            from fractions import Fraction
            rows.append((Fraction(ua),) + tuple(Fraction(ub) / k for _ in range(k)))
        else:
            rows.append((float(ua),) + tuple(float(ub) / k for _ in range(k)))
    endow = tuple(1 for _ in range(m))
    return Problem(problem.agents, items, endow, tuple(rows))


def reduce_parallel_items(problem: Problem) -> Problem:
    """Merge groups of proportional item columns (quantities folded in).

    The inverse of clone_bads up to item naming: merged columns carry the
    quantity-weighted sum of utilities and unit quantity.
    """
    n, m = problem.n_agents, problem.n_items
    cols = [tuple(problem.utilities[i][a] * problem.endowment[a] for i in range(n))
            for a in range(m)]
    groups: list[list[int]] = []
    for a in range(m):
        for g in groups:
            b = g[0]
            if _parallel(cols[a], cols[b]):
                g.append(a)
                break
        else:
            groups.append([a])
    items = tuple(problem.items[g[0]] for g in groups)
    rows = []
    for i in range(n):
        rows.append(tuple(sum(cols[a][i] for a in g) for g in groups))
    endow = tuple(1 for _ in groups)
    return Problem(problem.agents, items, endow, tuple(rows))


def _parallel(col1, col2) -> bool:
    for i in range(len(col1)):
        for j in range(i + 1, len(col1)):
            if col1[i] * col2[j] != col1[j] * col2[i]:
                return False
    # Exclude opposite-sign proportionality (a good is never a bad's clone).
    return all((x > 0) == (y > 0) and (x < 0) == (y < 0) for x, y in zip(col1, col2))
