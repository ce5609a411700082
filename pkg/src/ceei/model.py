"""Domain model: problems, allocations, divisions, and the basic partitions.

A division problem is a finite set of agents, a finite set of divisible
items with positive quantities, and an additive utility matrix.  Items may
be goods (positive marginal utility), bads (negative) or satiated (zero),
mixed arbitrarily across agents.

Everything here is immutable and pure; numbers may be floats or exact
Fractions (see `ceei.numbers`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .numbers import FEAS_TOL, NEG_TOL, Num


class DimensionError(ValueError):
    """Raised when matrices or vectors do not match the problem's shape."""


@dataclass(frozen=True)
class Problem:
    """Agents, items, quantities, and the additive utility matrix.

    utilities[i][a] is agent i's marginal utility per unit of item a; signs
    are unrestricted.  Quantities must be strictly positive.
    """

    agents: tuple[str, ...]
    items: tuple[str, ...]
    endowment: tuple[Num, ...]
    utilities: tuple[tuple[Num, ...], ...]

    def __post_init__(self):
        if len(self.agents) < 1 or len(self.items) < 1:
            raise ValueError("need at least one agent and one item")
        if len(set(self.agents)) != len(self.agents):
            raise ValueError("duplicate agent names")
        if len(set(self.items)) != len(self.items):
            raise ValueError("duplicate item names")
        if len(self.endowment) != len(self.items):
            raise DimensionError("endowment length != number of items")
        if len(self.utilities) != len(self.agents):
            raise DimensionError("utilities rows != number of agents")
        for row in self.utilities:
            if len(row) != len(self.items):
                raise DimensionError("ragged utilities matrix")
            for v in row:
                if isinstance(v, float) and not np.isfinite(v):
                    raise ValueError("utilities must be finite")
        for q in self.endowment:
            if not q > 0:
                raise ValueError("item quantities must be strictly positive")

    @property
    def n_agents(self) -> int:
        return len(self.agents)

    @property
    def n_items(self) -> int:
        return len(self.items)

    @property
    def exact(self) -> bool:
        return any(isinstance(v, Fraction) for row in self.utilities for v in row)

    @cached_property
    def util_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.utilities], dtype=float)

    @cached_property
    def endow_array(self) -> np.ndarray:
        return np.array([float(q) for q in self.endowment], dtype=float)

    def with_utilities(self, utilities) -> "Problem":
        return Problem(self.agents, self.items, self.endowment,
                       tuple(tuple(row) for row in utilities))

    def with_endowment(self, endowment) -> "Problem":
        return Problem(self.agents, self.items, tuple(endowment), self.utilities)


@dataclass(frozen=True)
class Allocation:
    """Nonnegative per-agent shares that jointly exhaust the endowment."""

    shares: tuple[tuple[Num, ...], ...]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.shares], dtype=float)

    @staticmethod
    def from_rows(rows) -> "Allocation":
        return Allocation(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class UtilityProfile:
    values: tuple[Num, ...]

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)


@dataclass(frozen=True)
class ItemPartition:
    """Collective goods / collective bads / neutral items."""

    a_plus: tuple[int, ...]
    a_minus: tuple[int, ...]
    a_zero: tuple[int, ...]


@dataclass(frozen=True)
class AgentPartition:
    """Agents attracted to the manna vs repulsed by it."""

    n_plus: tuple[int, ...]
    n_minus: tuple[int, ...]


@dataclass(frozen=True)
class Division:
    """A priced allocation: shares, per-item prices, and the common budget sign.

    budget is +1 for positive problems (everyone spends one unit of money),
    -1 for negative ones (everyone is paid one unit), 0 for null ones.
    """

    allocation: Allocation
    price: tuple[Num, ...]
    budget: int

    def __post_init__(self):
        if self.budget not in (-1, 0, 1):
            raise ValueError("budget sign must be -1, 0, or +1")


@dataclass(frozen=True)
class SupportGraph:
    """Bipartite consumption structure: (agent, item) pairs with z_ia > 0."""

    edges: frozenset[tuple[int, int]]


def support_graph(allocation: Allocation, tol: float = 1e-12) -> SupportGraph:
    edges = set()
    for i, row in enumerate(allocation.shares):
        for a, v in enumerate(row):
            if v > tol:
                edges.add((i, a))
    return SupportGraph(frozenset(edges))


def _check_shape(problem: Problem, allocation: Allocation) -> None:
    if len(allocation.shares) != problem.n_agents:
        raise DimensionError("allocation rows != number of agents")
    for row in allocation.shares:
        if len(row) != problem.n_items:
            raise DimensionError("allocation columns != number of items")


def utility_profile(problem: Problem, allocation: Allocation) -> UtilityProfile:
    """Per-agent utility of an allocation: the dot product of row i with share i."""
    _check_shape(problem, allocation)
    values = tuple(
        sum(u * z for u, z in zip(urow, zrow))
        for urow, zrow in zip(problem.utilities, allocation.shares)
    )
    return UtilityProfile(values)


def partition_items(problem: Problem) -> ItemPartition:
    """Split items into collective goods, collective bads and neutral items.

    An item is a collective good if anyone values it positively, a collective
    bad if everyone values it negatively, neutral if the best valuation is
    exactly zero.
    """
    plus, minus, zero = [], [], []
    for a in range(problem.n_items):
        col = [row[a] for row in problem.utilities]
        best = max(col)
        if best > 0:
            plus.append(a)
        elif best == 0:
            zero.append(a)
        else:
            minus.append(a)
    return ItemPartition(tuple(plus), tuple(minus), tuple(zero))


def partition_agents(problem: Problem) -> AgentPartition:
    """Attracted agents are those with some strictly positive entry."""
    plus, minus = [], []
    for i, row in enumerate(problem.utilities):
        (plus if max(row) > 0 else minus).append(i)
    return AgentPartition(tuple(plus), tuple(minus))


def check_feasible(problem: Problem, allocation: Allocation, tol: float = FEAS_TOL) -> bool:
    """Nonnegativity plus per-item balance within tolerance.

    Balance is judged relative to max(1, quantity); entries in [-1e-12, 0)
    count as zero.
    """
    _check_shape(problem, allocation)
    for row in allocation.shares:
        for v in row:
            if v < -NEG_TOL:
                return False
    for a, q in enumerate(problem.endowment):
        total = sum(row[a] for row in allocation.shares)
        if abs(total - q) > tol * max(1, abs(q)):
            return False
    return True


def equal_split(problem: Problem) -> Allocation:
    """Everyone gets 1/n of every item."""
    n = problem.n_agents
    if problem.exact:
        row = tuple(Fraction(q) / n for q in problem.endowment)
    else:
        row = tuple(q / n for q in problem.endowment)
    return Allocation(tuple(row for _ in range(n)))


def scale_rows(problem: Problem, factors) -> Problem:
    """Rescale each agent's utility row by a positive factor (ordinal move)."""
    if len(factors) != problem.n_agents:
        raise DimensionError("one factor per agent required")
    if any(not f > 0 for f in factors):
        raise ValueError("row factors must be positive")
    rows = tuple(tuple(f * v for v in row) for f, row in zip(factors, problem.utilities))
    return problem.with_utilities(rows)
