import numpy as np
import pytest

from ceei.classify import classify
from ceei.model import check_feasible, scale_rows, utility_profile

from helpers import lam_problem, make_problem, random_null


@pytest.mark.parametrize("lam,kind", [
    (4, "positive"), (3, "positive"), (2, "null"),
    (1, "negative"), (0, "negative"), (-1, "negative"),
    (-2, "negative"), (-3, "negative"),
])
def test_lambda_family(lam, kind):
    assert classify(lam_problem(lam)).kind == kind


def test_null_margin_is_tiny():
    c = classify(lam_problem(2))
    assert abs(c.margin) <= 1e-9


def test_positive_witness_profile():
    c = classify(lam_problem(4))
    profile = utility_profile(lam_problem(4), c.witness).values
    assert all(v > 0 for v in profile)
    assert check_feasible(lam_problem(4), c.witness)


def test_null_witness_is_zero_profile():
    problem = lam_problem(2)
    c = classify(problem)
    profile = utility_profile(problem, c.witness).values
    assert profile == pytest.approx((0.0, 0.0), abs=1e-9)


def test_mixed_sign_witness_structure():
    problem = make_problem([[6, 2], [0, -1]])
    c = classify(problem)
    assert c.is_positive
    profile = utility_profile(problem, c.witness).values
    assert profile[0] > 0
    assert profile[1] == pytest.approx(0.0, abs=1e-12)
    # the repulsed agent's zero is structural, not incidental
    assert c.witness.shares[1][1] == 0.0


def test_ee_style_opposed_preferences():
    problem = make_problem([[1, -2], [-2, 1]])
    c = classify(problem)
    assert c.is_positive
    profile = utility_profile(problem, c.witness).values
    assert min(profile) > 0


def test_no_attracted_agents_null_vs_negative():
    null_p = make_problem([[0, -1], [-1, 0]])
    assert classify(null_p).is_null
    neg_p = make_problem([[0, -1], [-1, -1]])
    assert classify(neg_p).is_negative
    zero_p = make_problem([[0, 0], [0, 0]])
    assert classify(zero_p).is_null


def test_trichotomy_and_scale_invariances():
    rng = np.random.default_rng(21)
    for _ in range(60):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        problem = make_problem(rng.normal(size=(n, m)).round(2))
        kind = classify(problem).kind
        assert kind in ("positive", "negative", "null")
        # per-agent positive rescaling
        scaled = scale_rows(problem, tuple(rng.uniform(0.2, 5.0, n)))
        assert classify(scaled).kind == kind
        # item-unit rescaling: omega_a -> l*omega_a, column /= l
        factors = rng.uniform(0.2, 5.0, m)
        new_endow = tuple(q * f for q, f in zip(problem.endowment, factors))
        new_u = tuple(tuple(v / f for v, f in zip(row, factors))
                      for row in problem.utilities)
        rescaled = problem.with_endowment(new_endow).with_utilities(new_u)
        assert classify(rescaled).kind == kind


def test_constructed_nulls_classify_null():
    rng = np.random.default_rng(8)
    for _ in range(25):
        problem = random_null(rng, int(rng.integers(2, 5)), int(rng.integers(2, 5)))
        assert classify(problem).is_null
