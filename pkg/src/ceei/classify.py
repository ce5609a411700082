"""Classify a division problem as positive, negative, or null.

The type of a problem is decided by one LP: maximize the common floor t of
the attracted agents' utilities while repulsed agents are pinned to zero
utility (structurally: they may only touch items they are indifferent to).
t* > 0 means some allocation makes every attracted agent strictly happy
(positive problem); t* = 0 means the zero profile is the best the group can
do jointly (null); t* < 0 means someone must end up suffering (negative).

Utility rows are normalized to max |u_ia| = 1 before solving so the margin
and the epsilon test are scale-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lp import LpSpec, solve_lp
from .model import Allocation, Problem, partition_agents

POSITIVE, NEGATIVE, NULL = "positive", "negative", "null"

#: Margin below which t* counts as zero (rows are normalized first).
NULL_EPS = 1e-9


@dataclass(frozen=True)
class Classification:
    kind: str
    witness: Allocation
    margin: float

    @property
    def is_positive(self) -> bool:
        return self.kind == POSITIVE

    @property
    def is_negative(self) -> bool:
        return self.kind == NEGATIVE

    @property
    def is_null(self) -> bool:
        return self.kind == NULL


def classify(problem: Problem) -> Classification:
    """Decide the problem type, with a feasible witness allocation.

    Positive witnesses give every attracted agent strictly positive utility
    and every repulsed agent exactly zero; null witnesses realize the
    all-zero profile; negative witnesses are the max-min allocation
    (informational only).
    """
    u = problem.util_array
    omega = problem.endow_array
    n, m = u.shape
    agents = partition_agents(problem)

    norm = np.abs(u).max(axis=1)
    norm[norm == 0] = 1.0
    un = u / norm[:, None]

    if not agents.n_plus:
        # Nobody can gain: the problem is null when every item has an
        # indifferent consumer, negative when some item hurts everyone.
        all_bad_col = [(a, col) for a, col in enumerate(un.T) if np.all(col < 0)]
        if not all_bad_col:
            rows = [[0.0] * m for _ in range(n)]
            for a in range(m):
                eater = int(np.argmax(un[:, a] == 0))
                rows[eater][a] = float(omega[a])
            return Classification(NULL, Allocation.from_rows(rows), 0.0)
        spec = _floor_lp(un, omega, list(range(n)), [[True] * m for _ in range(n)])
        sol = solve_lp(spec)
        z = _unpack(sol.point[1:], n, m, [[True] * m for _ in range(n)])
        return Classification(NEGATIVE, z, float(sol.value))

    allowed = [[True] * m for _ in range(n)]
    for i in agents.n_minus:
        for a in range(m):
            allowed[i][a] = un[i, a] == 0
    spec = _floor_lp(un, omega, list(agents.n_plus), allowed)
    sol = solve_lp(spec)
    if not sol.optimal:
        raise RuntimeError(f"classification LP failed: {sol.status}")
    t = float(sol.value)
    witness = _unpack(sol.point[1:], n, m, allowed)
    if t > NULL_EPS:
        kind = POSITIVE
    elif t < -NULL_EPS:
        kind = NEGATIVE
    else:
        kind = NULL
    return Classification(kind, witness, t)


def _floor_lp(un: np.ndarray, omega: np.ndarray, floor_agents: list[int],
              allowed: list[list[bool]]) -> LpSpec:
    """max t s.t. allocation feasible on allowed cells, u_i.z_i >= t."""
    n, m = un.shape
    cols = [(i, a) for i in range(n) for a in range(m) if allowed[i][a]]
    idx = {cell: 1 + k for k, cell in enumerate(cols)}
    nvar = 1 + len(cols)

    constraints = []
    for a in range(m):
        coefs = [0.0] * nvar
        for i in range(n):
            if allowed[i][a]:
                coefs[idx[(i, a)]] = 1.0
        constraints.append((coefs, "=", float(omega[a])))
    for i in floor_agents:
        coefs = [0.0] * nvar
        coefs[0] = -1.0
        for a in range(m):
            if allowed[i][a]:
                coefs[idx[(i, a)]] = float(un[i, a])
        constraints.append((coefs, ">=", 0.0))

    objective = [0.0] * nvar
    objective[0] = 1.0
    lower = [None] + [0.0] * len(cols)
    return LpSpec.build(objective, constraints, lower=lower)


def _unpack(flat, n: int, m: int, allowed: list[list[bool]]) -> Allocation:
    rows = [[0.0] * m for _ in range(n)]
    k = 0
    for i in range(n):
        for a in range(m):
            if allowed[i][a]:
                rows[i][a] = max(0.0, float(flat[k]))
                k += 1
    return Allocation.from_rows(rows)
