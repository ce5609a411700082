"""Shared instance generators for the test suite (seeded, reproducible)."""

from __future__ import annotations

import numpy as np

from ceei.classify import classify
from ceei.model import Problem

ITEM_NAMES = "abcdefghijkl"


def make_problem(u_rows, endowment=None) -> Problem:
    n = len(u_rows)
    m = len(u_rows[0])
    endow = tuple(endowment) if endowment is not None else tuple(1.0 for _ in range(m))
    return Problem(tuple(str(i + 1) for i in range(n)),
                   tuple(ITEM_NAMES[:m]), endow,
                   tuple(tuple(float(v) for v in row) for row in u_rows))


def lam_problem(lam) -> Problem:
    return make_problem([[-1, -3, lam], [-2, -1, lam]])


def random_bads(rng, n, m, lo=0.1, hi=3.0) -> Problem:
    u = -rng.uniform(lo, hi, size=(n, m))
    return make_problem(u.round(3))


def random_goods(rng, n, m, lo=0.1, hi=3.0) -> Problem:
    u = rng.uniform(lo, hi, size=(n, m))
    return make_problem(u.round(3))


def random_positive(rng, n, m, max_tries=50) -> Problem:
    """A random mixed-sign problem that classifies positive."""
    for _ in range(max_tries):
        u = rng.uniform(-1.0, 2.0, size=(n, m)).round(3)
        # make sure every agent likes something so N_+ is everyone
        for i in range(n):
            if u[i].max() <= 0:
                u[i, rng.integers(m)] = float(rng.uniform(0.5, 2.0))
        problem = make_problem(u)
        if classify(problem).is_positive:
            return problem
    return random_goods(rng, n, m)


def random_null(rng, n, m) -> Problem:
    """Null by construction: common direction with zero total worth."""
    v = rng.uniform(-1.0, 1.0, size=m)
    v[0] = 1.0
    omega = rng.uniform(0.5, 2.0, size=m).round(6)
    # shift the last coordinate so v . omega = 0, keeping mixed signs
    v[-1] -= np.dot(v, omega) / omega[-1]
    scales = rng.uniform(0.5, 2.0, size=n)
    u = np.outer(scales, v)
    return make_problem(u, endowment=omega)


def random_mixed_negative(rng, n, m, max_tries=60) -> Problem:
    """A negative problem that still contains some individual goods."""
    for _ in range(max_tries):
        u = -rng.uniform(0.2, 2.0, size=(n, m))
        i = rng.integers(n)
        a = rng.integers(m)
        u[i, a] = float(rng.uniform(0.05, 0.4))
        problem = make_problem(u.round(3))
        if classify(problem).is_negative:
            return problem
    return random_bads(rng, n, m)
