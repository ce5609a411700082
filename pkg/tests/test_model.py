import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ceei.model import (
    Allocation,
    DimensionError,
    Problem,
    check_feasible,
    equal_split,
    partition_agents,
    partition_items,
    scale_rows,
    utility_profile,
)

from helpers import lam_problem, make_problem


def test_problem_validation():
    with pytest.raises(ValueError):
        make_problem([[1.0]], endowment=[0.0])
    with pytest.raises(ValueError):
        make_problem([[1.0]], endowment=[-1.0])
    with pytest.raises(DimensionError):
        Problem(("a",), ("x", "y"), (1.0, 1.0), ((1.0,),))
    with pytest.raises(ValueError):
        Problem((), ("x",), (1.0,), ())


def test_utility_profile_lambda_example():
    problem = lam_problem(-1)
    z = Allocation.from_rows([[1, 0, 0.5], [0, 1, 0.5]])
    assert utility_profile(problem, z).values == (-1.5, -1.5)


def test_utility_profile_symmetric_five_bads():
    # six agents, five bads: own bad at -1, others at -3, last agent all -1
    rows = [[-1 if a == i else -3 for a in range(5)] for i in range(5)]
    rows.append([-1] * 5)
    problem = make_problem(rows)
    shares = [[5 / 6 if a == i else 0.0 for a in range(5)] for i in range(5)]
    shares.append([1 / 6] * 5)
    profile = utility_profile(problem, Allocation.from_rows(shares))
    assert profile.values == pytest.approx([-5 / 6] * 6)


def test_utility_profile_zero_matrix():
    problem = make_problem([[0, 0], [0, 0]])
    z = equal_split(problem)
    assert utility_profile(problem, z).values == (0.0, 0.0)


def test_utility_profile_dimension_mismatch():
    problem = lam_problem(1)
    with pytest.raises(DimensionError):
        utility_profile(problem, Allocation.from_rows([[1, 0], [0, 1]]))


def test_partition_items_lambda_family():
    p_minus1 = partition_items(lam_problem(-1))
    assert p_minus1.a_minus == (0, 1, 2)
    assert p_minus1.a_plus == () and p_minus1.a_zero == ()
    p_one = partition_items(lam_problem(1))
    assert p_one.a_plus == (2,) and p_one.a_minus == (0, 1)
    p_zero = partition_items(lam_problem(0))
    assert p_zero.a_zero == (2,)


def test_partition_items_footnote():
    problem = make_problem([[6, 2], [0, -1]])
    parts = partition_items(problem)
    assert parts.a_plus == (0, 1) and parts.a_minus == () and parts.a_zero == ()


def test_partition_agents():
    assert partition_agents(lam_problem(-1)).n_minus == (0, 1)
    assert partition_agents(lam_problem(4)).n_plus == (0, 1)
    parts = partition_agents(make_problem([[6, 2], [0, -1]]))
    assert parts.n_plus == (0,) and parts.n_minus == (1,)


def test_partition_covers_items():
    rng = np.random.default_rng(3)
    for _ in range(50):
        u = rng.normal(size=(3, 4)).round(2)
        parts = partition_items(make_problem(u))
        merged = sorted(parts.a_plus + parts.a_minus + parts.a_zero)
        assert merged == [0, 1, 2, 3]


def test_partition_agents_scale_invariant():
    rng = np.random.default_rng(4)
    for _ in range(30):
        u = rng.normal(size=(3, 3)).round(2)
        problem = make_problem(u)
        scaled = scale_rows(problem, tuple(rng.uniform(0.1, 5.0, 3)))
        assert partition_agents(problem) == partition_agents(scaled)


def test_check_feasible():
    problem = lam_problem(-1)
    good = Allocation.from_rows([[1, 0, 0.5], [0, 1, 0.5]])
    under = Allocation.from_rows([[1, 0, 0.5], [0, 1, 0.0]])
    negative = Allocation.from_rows([[-0.1, 0, 0.5], [1.1, 1, 0.5]])
    assert check_feasible(problem, good)
    assert not check_feasible(problem, under)
    assert not check_feasible(problem, negative)


@given(st.lists(st.floats(-5, 5), min_size=6, max_size=6),
       st.floats(0, 1))
@settings(max_examples=60, deadline=None)
def test_utility_profile_linear(entries, alpha):
    problem = make_problem([entries[:3], entries[3:]])
    z1 = Allocation.from_rows([[1, 0, 0.25], [0, 1, 0.75]])
    z2 = Allocation.from_rows([[0.5, 0.5, 1], [0.5, 0.5, 0]])
    mix = Allocation.from_rows([
        [alpha * a + (1 - alpha) * b for a, b in zip(r1, r2)]
        for r1, r2 in zip(z1.shares, z2.shares)
    ])
    u_mix = utility_profile(problem, mix).values
    u1 = utility_profile(problem, z1).values
    u2 = utility_profile(problem, z2).values
    for got, want in zip(u_mix, [alpha * a + (1 - alpha) * b for a, b in zip(u1, u2)]):
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)
