from fractions import Fraction

import numpy as np
import pytest

from ceei.classify import classify
from ceei.enumeration import (
    EnumerationLimits,
    enumerate_general,
    enumerate_two_agents,
    enumerate_two_items,
    generate_lower_bound_instance,
    select_division,
)
from ceei.model import Problem, utility_profile
from ceei.solver import kkt_verify, verify_criticality

from helpers import lam_problem, make_problem, random_bads, random_mixed_negative


def profiles_of(result):
    return [tuple(float(v) for v in p.values) for p in result.profiles]


def assert_profiles_close(got, want, tol=1e-7):
    assert len(got) == len(want), f"{len(got)} profiles vs {len(want)}"
    for g, w in zip(got, want):
        assert g == pytest.approx(w, abs=tol), f"{g} vs {w}"


# ---------------------------------------------------------------------------
# two agents


def test_lambda_minus_one_four_profiles():
    problem = lam_problem(-1)
    result = enumerate_two_agents(problem)
    assert_profiles_close(profiles_of(result),
                          [(-1.0, -2.0), (-1.5, -1.5), (-2.0, -1.0), (-2.5, -5 / 6)])
    chosen = select_division(result)
    assert utility_profile(problem, chosen.allocation).values == pytest.approx((-1.5, -1.5))
    assert chosen.allocation.shares[0] == pytest.approx((1.0, 0.0, 0.5))


def test_lambda_one_single_profile():
    result = enumerate_two_agents(lam_problem(1))
    assert profiles_of(result) == pytest.approx([(-0.5, -0.5)])
    # with a single profile, the selection is trivially the one most
    # favourable to agent 1
    chosen = select_division(result)
    assert utility_profile(lam_problem(1), chosen.allocation).values == \
        pytest.approx((-0.5, -0.5))


def test_lambda_zero_three_profiles():
    problem = lam_problem(0)
    result = enumerate_two_agents(problem)
    assert_profiles_close(profiles_of(result),
                          [(-0.75, -1.5), (-1.0, -1.0), (-2.0, -2 / 3)])
    chosen = select_division(result)
    # unique product maximum at 4/3
    assert utility_profile(problem, chosen.allocation).values == \
        pytest.approx((-2.0, -2 / 3))


def test_selection_tie_breaks_toward_agent_one():
    # the opposed 2x2 pair has two split profiles tied at product 25/16;
    # the lexicographic rule keeps the one most favourable to agent 1
    problem = make_problem([[-1, -4], [-4, -1]])
    result = enumerate_two_agents(problem)
    chosen = select_division(result)
    assert utility_profile(problem, chosen.allocation).values == \
        pytest.approx((-0.625, -2.5))


def test_single_bad_even_split():
    problem = make_problem([[-1.0], [-1.0]])
    result = enumerate_two_agents(problem)
    assert profiles_of(result) == pytest.approx([(-0.5, -0.5)])
    assert result.divisions[0].price[0] == pytest.approx(-2.0)


def test_six_bads_eleven_profiles():
    problem = generate_lower_bound_instance("two_agents", 2, 6)
    assert problem.utilities == ((-1, -1, -2, -4, -8, -17), (-17, -8, -4, -2, -1, -1))
    result = enumerate_two_agents(problem)
    assert len(result.profiles) == 11
    # the split of the last bad pins agent 1 exactly at its fair share
    fair = [p for p in result.profiles if float(p.values[0]) == pytest.approx(-16.5)]
    assert fair and float(fair[0].values[1]) == pytest.approx(-33 / 34)


def test_two_agent_merge_invariance():
    # two items with identical ratio merge into one; profile sets agree
    problem = make_problem([[-1, -2, -3], [-2, -4, -1]])
    merged = make_problem([[-3, -3], [-6, -1]])
    assert_profiles_close(profiles_of(enumerate_two_agents(problem)),
                          profiles_of(enumerate_two_agents(merged)))


def test_two_agents_mixed_goods():
    rng = np.random.default_rng(55)
    for _ in range(20):
        problem = random_mixed_negative(rng, 2, int(rng.integers(2, 6)))
        cls = classify(problem)
        result = enumerate_two_agents(problem, classification=cls)
        assert result.profiles, "negative problems always have a division"
        for division in result.divisions:
            assert kkt_verify(problem, division, 1e-7).passed


# ---------------------------------------------------------------------------
# two items


def test_ladder_eleven_profiles_and_tables():
    problem = generate_lower_bound_instance("two_items", 6, 2)
    result = enumerate_two_items(problem)
    assert len(result.profiles) == 11
    cut = [d for d in result.divisions
           if tuple(float(v) for v in d.price) == pytest.approx((-2.0, -4.0))]
    assert cut, "the {1,2}|{3,4,5,6} cut is competitive at p=-(2,4)"


def test_ladder_exact_split_table():
    base = generate_lower_bound_instance("two_items", 6, 2)
    problem = Problem(base.agents, base.items, tuple(Fraction(1) for _ in range(2)),
                      tuple(tuple(Fraction(v) for v in row) for row in base.utilities))
    result = enumerate_two_items(problem)
    assert len(result.profiles) == 11
    split3 = [d for d in result.divisions if d.allocation.shares[2][0] == Fraction(1, 6)]
    assert split3
    division = split3[0]
    assert tuple(r[0] for r in division.allocation.shares) == (
        Fraction(5, 12), Fraction(5, 12), Fraction(1, 6), 0, 0, 0)
    assert tuple(r[1] for r in division.allocation.shares) == (
        0, 0, Fraction(1, 6), Fraction(5, 18), Fraction(5, 18), Fraction(5, 18))
    assert division.price == (Fraction(-12, 5), Fraction(-18, 5))


def test_opposed_pair_three_profiles():
    problem = make_problem([[-1, -4], [-4, -1]])
    result = enumerate_two_items(problem)
    assert_profiles_close(profiles_of(result),
                          [(-0.625, -2.5), (-1.0, -1.0), (-2.5, -0.625)])
    # the strict splits come from the closed-form shares x=1, y=3/8
    one_split = [d for d in result.divisions
                 if float(d.allocation.shares[0][0]) == pytest.approx(1.0)
                 and 0 < float(d.allocation.shares[0][1]) < 1]
    assert one_split
    assert float(one_split[0].allocation.shares[0][1]) == pytest.approx(3 / 8)


def test_one_collective_good_single_profile():
    # negative problem with a good: everyone eats the bad, the best
    # good-to-bad agent alone eats the good
    problem = make_problem([[1, -4], [0.5, -2], [0.2, -5]])
    cls = classify(problem)
    assert cls.is_negative
    result = enumerate_two_items(problem, classification=cls)
    assert len(result.profiles) == 1
    assert kkt_verify(problem, result.divisions[0], 1e-9).passed


def test_one_neutral_item():
    problem = make_problem([[0, -2], [-1, -1]])
    cls = classify(problem)
    assert cls.is_negative
    result = enumerate_two_items(problem, classification=cls)
    assert len(result.profiles) == 1
    division = result.divisions[0]
    assert kkt_verify(problem, division, 1e-9).passed
    # the bad is split evenly regardless of intensity
    assert [float(r[1]) for r in division.allocation.shares] == pytest.approx([0.5, 0.5])


def test_two_items_boundary_equalities_are_cuts_only():
    # ratios exactly at the window bounds: both split windows of (1/2, 2, 2)
    # are empty, so the enumeration contains cuts but no strict splits
    n = 3
    problem = make_problem([[-1, -2], [-2, -1], [-2, -1]])
    cls = classify(problem)
    result = enumerate_two_items(problem, classification=cls)
    for division in result.divisions:
        mixed = [i for i in range(n)
                 if float(division.allocation.shares[i][0]) > 1e-9
                 and float(division.allocation.shares[i][1]) > 1e-9]
        assert not mixed


def test_count_bound_random():
    rng = np.random.default_rng(56)
    for _ in range(60):
        if rng.random() < 0.5:
            n, m = 2, int(rng.integers(2, 7))
            problem = random_bads(rng, n, m)
            result = enumerate_two_agents(problem, classification=classify(problem))
            assert len(result.profiles) <= 2 * m - 1
        else:
            n, m = int(rng.integers(2, 7)), 2
            problem = random_bads(rng, n, m)
            result = enumerate_two_items(problem, classification=classify(problem))
            assert len(result.profiles) <= 2 * n - 1


# ---------------------------------------------------------------------------
# general support search


def test_general_matches_two_agents_on_lambda():
    problem = lam_problem(-1)
    general = enumerate_general(problem)
    special = enumerate_two_agents(problem)
    assert_profiles_close(profiles_of(general), profiles_of(special))


def test_general_cross_paths_random():
    rng = np.random.default_rng(57)
    for _ in range(40):
        two_agent = rng.random() < 0.5
        n, m = (2, int(rng.integers(2, 5))) if two_agent else (int(rng.integers(2, 5)), 2)
        problem = random_bads(rng, n, m)
        cls = classify(problem)
        general = enumerate_general(problem, classification=cls)
        special = (enumerate_two_agents(problem, classification=cls) if two_agent
                   else enumerate_two_items(problem, classification=cls))
        assert_profiles_close(profiles_of(general), profiles_of(special))


def test_single_agent():
    problem = make_problem([[-1, -2]])
    result = enumerate_general(problem)
    assert profiles_of(result) == [(-3.0,)]
    assert tuple(float(v) for v in result.divisions[0].price) == \
        pytest.approx((-1 / 3, -2 / 3))


def test_general_all_divisions_certify_and_are_critical():
    rng = np.random.default_rng(58)
    for _ in range(25):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        problem = random_bads(rng, n, m)
        cls = classify(problem)
        result = enumerate_general(problem, classification=cls)
        assert result.exhaustive
        for division, profile in zip(result.divisions, result.profiles):
            assert kkt_verify(problem, division, 1e-7).passed
            assert verify_criticality(problem, profile, classification=cls)


def test_random_efficient_profiles_are_not_critical():
    """The reverse direction of the characterization: a generic efficient
    profile on the negative frontier is not a critical point unless the
    enumerator found it."""
    rng = np.random.default_rng(59)
    checked = 0
    for _ in range(200):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        problem = random_bads(rng, n, m)
        cls = classify(problem)
        result = enumerate_general(problem, classification=cls)
        known = profiles_of(result)
        # random positive welfare weights give a random efficient vertex
        weights = rng.uniform(0.2, 2.0, n)
        rows = [[0.0] * m for _ in range(n)]
        for a in range(m):
            best = int(np.argmax([weights[i] * float(problem.utilities[i][a])
                                  for i in range(n)]))
            rows[best][a] = float(problem.endowment[a])
        from ceei.model import Allocation
        profile = utility_profile(problem, Allocation.from_rows(rows))
        vals = tuple(float(v) for v in profile.values)
        if any(v >= 0 for v in vals):
            continue
        if any(max(abs(a - b) for a, b in zip(vals, k)) < 1e-6 for k in known):
            assert verify_criticality(problem, profile, classification=cls)
        else:
            checked += 1
            assert not verify_criticality(problem, profile, classification=cls), \
                (problem.utilities, vals)
    assert checked >= 20  # enough genuinely non-enumerated frontier points


def test_general_support_limit_truncates():
    problem = generate_lower_bound_instance("general", 4, 3)
    limits = EnumerationLimits(supports=5)
    result = enumerate_general(problem, limits=limits)
    assert not result.exhaustive


def test_general_size_gate():
    problem = random_bads(np.random.default_rng(1), 7, 7)
    result = enumerate_general(problem)
    assert not result.exhaustive and not result.profiles


def test_select_division_empty():
    from ceei.enumeration import EnumerationResult
    with pytest.raises(ValueError):
        select_division(EnumerationResult((), (), True))


# ---------------------------------------------------------------------------
# hard-instance generators


def test_generator_two_agents_matrices():
    p4 = generate_lower_bound_instance("two_agents", 2, 4)
    assert p4.utilities == ((-1, -1, -2, -5), (-5, -2, -1, -1))
    result = enumerate_two_agents(p4)
    assert len(result.profiles) == 2 * 4 - 1


def test_generator_two_items_windows():
    for n in (3, 5, 7):
        problem = generate_lower_bound_instance("two_items", n, 2)
        result = enumerate_two_items(problem)
        assert len(result.profiles) == 2 * n - 1


def test_generator_general_matrix():
    problem = generate_lower_bound_instance("general", 6, 5)
    assert problem.utilities[0] == (-1, -3, -3, -3, -3)
    assert problem.utilities[5] == (-1, -1, -1, -1, -1)
    mirror = generate_lower_bound_instance("general", 3, 4)
    assert mirror.utilities[0] == (-1, -3, -3, -1)


def test_generator_general_profile_floor():
    for n, m in ((3, 2), (2, 3), (3, 4), (4, 3)):
        problem = generate_lower_bound_instance("general", n, m)
        result = enumerate_general(problem)
        assert len(result.profiles) >= 2 ** min(n, m) - 1
        assert result.exhaustive


def test_generator_rejects_bad_sizes():
    with pytest.raises(ValueError):
        generate_lower_bound_instance("general", 3, 3)
    with pytest.raises(ValueError):
        generate_lower_bound_instance("two_agents", 3, 4)
    with pytest.raises(ValueError):
        generate_lower_bound_instance("nope", 2, 2)


def test_general_single_bad_many_agents():
    problem = make_problem([[-1], [-2], [-4]])
    result = enumerate_general(problem)
    # everyone spends the same unit of money on the only bad, so shares are
    # equal and utilities are proportional to intensity
    assert len(result.profiles) == 1
    assert profiles_of(result)[0] == pytest.approx((-1 / 3, -2 / 3, -4 / 3))
    z = result.divisions[0].allocation.array
    assert z[:, 0] == pytest.approx([1 / 3, 1 / 3, 1 / 3])


def test_exact_mode_general_path():
    problem = Problem(('1', '2'), ('a', 'b', 'c'),
                      (Fraction(1), Fraction(1), Fraction(1)),
                      ((Fraction(-1), Fraction(-3), Fraction(-1)),
                       (Fraction(-2), Fraction(-1), Fraction(-1))))
    result = enumerate_general(problem)
    values = [p.values for p in result.profiles]
    assert values == [
        (Fraction(-1), Fraction(-2)),
        (Fraction(-3, 2), Fraction(-3, 2)),
        (Fraction(-2), Fraction(-1)),
        (Fraction(-5, 2), Fraction(-5, 6)),
    ]
    chosen = select_division(result)
    assert chosen.allocation.shares[0] == (Fraction(1), Fraction(0), Fraction(1, 2))
    assert chosen.price == (Fraction(-2, 3), Fraction(-2, 3), Fraction(-2, 3))


def test_supports_are_item_covering_forests():
    from ceei.model import support_graph
    rng = np.random.default_rng(60)
    for _ in range(25):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        problem = random_bads(rng, n, m)
        result = enumerate_general(problem, classification=classify(problem))
        for division in result.divisions:
            graph = support_graph(division.allocation)
            eaters = {a: {i for i, b in graph.edges if b == a} for a in range(m)}
            assert all(eaters[a] for a in range(m)), "every item needs a consumer"
            # acyclic: edges <= nodes - components (union-find count)
            parent = list(range(n + m))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            cyclic = False
            for i, a in graph.edges:
                ri, ra = find(i), find(n + a)
                if ri == ra:
                    cyclic = True
                    break
                parent[ri] = ra
            assert not cyclic, "generic enumerated supports are forests"


def test_profiles_pairwise_distinct():
    rng = np.random.default_rng(61)
    for _ in range(30):
        n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        problem = random_bads(rng, n, m)
        result = enumerate_general(problem, classification=classify(problem))
        values = profiles_of(result)
        for x in range(len(values)):
            for y in range(x + 1, len(values)):
                assert max(abs(a - b) for a, b in zip(values[x], values[y])) > 1e-6
