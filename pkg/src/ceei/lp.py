"""Small dense LP kernel: maximize c.x under linear constraints and bounds.

Two-phase primal simplex on a dense tableau with Bland's rule, so results
are deterministic and cycling is impossible.  Problems in this package are
tiny (tens of variables), so clarity wins over sparse cleverness.

Duals are recovered from the inverse-basis columns and reported per input
constraint; reduced costs come along so callers can audit optimality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

LE, EQ, GE = "<=", "=", ">="

_RED_TOL = 1e-9
_PIVOT_TOL = 1e-10
_FEAS_TOL = 1e-8
_MAX_PIVOTS = 50_000


class LpError(Exception):
    """Malformed spec or numeric breakdown (never silently wrong output)."""


@dataclass(frozen=True)
class LpSpec:
    """maximize objective . x subject to constraints and variable bounds.

    constraints: (coefficients, relation, rhs) with relation in {<=, =, >=}.
    lower/upper: per-variable bounds, None meaning unbounded on that side.
    Default bounds are x >= 0.
    """

    objective: tuple[float, ...]
    constraints: tuple[tuple[tuple[float, ...], str, float], ...]
    lower: Optional[tuple[Optional[float], ...]] = None
    upper: Optional[tuple[Optional[float], ...]] = None

    @staticmethod
    def build(objective: Sequence[float], constraints, lower=None, upper=None) -> "LpSpec":
        cons = tuple((tuple(float(v) for v in coefs), rel, float(rhs))
                     for coefs, rel, rhs in constraints)
        n = len(objective)
        lo = tuple(lower) if lower is not None else tuple(0.0 for _ in range(n))
        up = tuple(upper) if upper is not None else tuple(None for _ in range(n))
        return LpSpec(tuple(float(v) for v in objective), cons, lo, up)


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: tuple[float, ...] = ()
    value: float = 0.0
    dual: tuple[float, ...] = ()
    reduced_costs: tuple[float, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _validate(spec: LpSpec) -> None:
    n = len(spec.objective)
    if n == 0:
        raise LpError("empty objective")
    if not np.all(np.isfinite(spec.objective)):
        raise LpError("non-finite objective")
    for coefs, rel, rhs in spec.constraints:
        if len(coefs) != n:
            raise LpError("constraint dimension mismatch")
        if rel not in (LE, EQ, GE):
            raise LpError(f"unknown relation {rel!r}")
        if not (np.all(np.isfinite(coefs)) and np.isfinite(rhs)):
            raise LpError("non-finite constraint")
    for bound in (spec.lower, spec.upper):
        if bound is not None and len(bound) != n:
            raise LpError("bounds dimension mismatch")


def solve_lp(spec: LpSpec) -> LpSolution:
    """Solve the LP; deterministic for a fixed spec (Bland pivot rule)."""
    _validate(spec)
    n = len(spec.objective)
    lower = spec.lower if spec.lower is not None else tuple(0.0 for _ in range(n))
    upper = spec.upper if spec.upper is not None else tuple(None for _ in range(n))

    # Substitute each variable by nonnegative ones: x = off + sign*y (or a
    # split pair for doubly-free variables).
    col_of: list[list[tuple[int, float]]] = []  # per original var: [(std col, sign)]
    offsets = np.zeros(n)
    n_std = 0
    extra_rows: list[tuple[int, float]] = []  # (std col, ub) for two-sided bounds
    for j in range(n):
        lo, up = lower[j], upper[j]
        if lo is not None and up is not None and up < lo - 1e-15:
            return LpSolution("infeasible")
        if lo is not None:
            col_of.append([(n_std, 1.0)])
            offsets[j] = lo
            if up is not None:
                extra_rows.append((n_std, up - lo))
            n_std += 1
        elif up is not None:
            col_of.append([(n_std, -1.0)])
            offsets[j] = up
            n_std += 1
        else:
            col_of.append([(n_std, 1.0), (n_std + 1, -1.0)])
            n_std += 2

    rows = list(spec.constraints) + [
        (tuple(0.0 for _ in range(n)), LE, 0.0) for _ in extra_rows
    ]
    m = len(rows)
    n_user = len(spec.constraints)

    A = np.zeros((m, n_std))
    b = np.zeros(m)
    rels = []
    for r, (coefs, rel, rhs) in enumerate(rows):
        rels.append(rel)
        if r < n_user:
            shift = 0.0
            for j, v in enumerate(coefs):
                shift += v * offsets[j]
                for col, sign in col_of[j]:
                    A[r, col] += v * sign
            b[r] = rhs - shift
        else:
            col, ub = extra_rows[r - n_user]
            A[r, col] = 1.0
            b[r] = ub

    c = np.zeros(n_std)
    const_term = float(np.dot(spec.objective, offsets))
    for j, v in enumerate(spec.objective):
        for col, sign in col_of[j]:
            c[col] += v * sign

    # Equality form with slack/surplus columns, then b >= 0.
    slack_cols = {}
    blocks = []
    for r, rel in enumerate(rels):
        if rel in (LE, GE):
            slack_cols[r] = n_std + len(blocks)
            blocks.append((r, 1.0 if rel == LE else -1.0))
    n_slack = len(blocks)
    T = np.zeros((m, n_std + n_slack + m + 1))
    T[:, :n_std] = A
    for (r, sgn), col in zip(blocks, slack_cols.values()):
        T[r, col] = sgn
    T[:, -1] = b
    row_sign = np.ones(m)
    for r in range(m):
        if T[r, -1] < 0:
            T[r, :] *= -1.0
            row_sign[r] = -1.0
    art0 = n_std + n_slack
    for r in range(m):
        T[r, art0 + r] = 1.0

    n_cols = n_std + n_slack + m
    basis = [art0 + r for r in range(m)]
    c_phase1 = np.zeros(n_cols)
    c_phase1[art0:] = -1.0

    status = _simplex(T, basis, c_phase1, allowed=n_cols)
    if status != "optimal":
        raise LpError("phase-1 breakdown")
    if -float(c_phase1[basis] @ T[:, -1]) > _FEAS_TOL:
        return LpSolution("infeasible")
    _drive_out_artificials(T, basis, art0)

    c_full = np.zeros(n_cols)
    c_full[: len(c)] = c
    status = _simplex(T, basis, c_full, allowed=art0)
    if status == "unbounded":
        return LpSolution("unbounded")

    x_std = np.zeros(n_cols)
    for r, bv in enumerate(basis):
        x_std[bv] = T[r, -1]
    x = offsets.copy()
    for j in range(n):
        for col, sign in col_of[j]:
            x[j] += sign * x_std[col]
    value = float(c_full[basis] @ T[:, -1]) + const_term

    # Duals: y = c_B B^-1, read off the artificial (identity) columns.
    y = np.array([float(c_full[basis] @ T[:, art0 + r]) for r in range(m)]) * row_sign
    dual = tuple(float(v) for v in y[:n_user])
    reduced = tuple(
        float(spec.objective[j] - sum(y[r] * rows[r][0][j] for r in range(n_user)))
        for j in range(n)
    )
    return LpSolution("optimal", tuple(float(v) for v in x), value, dual, reduced)


def _simplex(T: np.ndarray, basis: list[int], c: np.ndarray, allowed: int) -> str:
    """Bland's-rule simplex on tableau T; columns >= allowed never enter."""
    m = T.shape[0]
    for _ in range(_MAX_PIVOTS):
        z = c[basis] @ T[:, :-1]
        red = c[: T.shape[1] - 1] - z
        enter = -1
        for j in range(allowed):
            if red[j] > _RED_TOL:
                enter = j
                break
        if enter < 0:
            return "optimal"
        col = T[:, enter]
        best_r, best_ratio = -1, None
        for r in range(m):
            if col[r] > _PIVOT_TOL:
                ratio = T[r, -1] / col[r]
                if (best_ratio is None or ratio < best_ratio - 1e-12 or
                        (abs(ratio - best_ratio) <= 1e-12 and basis[r] < basis[best_r])):
                    best_r, best_ratio = r, ratio
        if best_r < 0:
            return "unbounded"
        _pivot(T, basis, best_r, enter)
    raise LpError("pivot limit exceeded (possible numeric breakdown)")


def _drive_out_artificials(T: np.ndarray, basis: list[int], art0: int) -> None:
    m = T.shape[0]
    for r in range(m):
        if basis[r] >= art0:
            enter = -1
            for j in range(art0):
                if abs(T[r, j]) > _PIVOT_TOL:
                    enter = j
                    break
            if enter >= 0:
                _pivot(T, basis, r, enter)
            # else: redundant row, harmless to keep with the artificial at 0.


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row, :] /= T[row, col]
    piv = T[row, :]
    for r in range(T.shape[0]):
        if r != row and abs(T[r, col]) > 0:
            T[r, :] -= T[r, col] * piv
    basis[row] = col
