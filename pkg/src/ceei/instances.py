"""Built-in demo instances and their expected results.

Each demo replays a documented worked example end to end and checks the
frozen golden values; the CLI exposes them under `ceei demo <name>` and the
service under GET /api/demos/{name}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .classify import classify
from .enumeration import (
    enumerate_general,
    enumerate_two_agents,
    enumerate_two_items,
    generate_lower_bound_instance,
    select_division,
)
from .model import Problem, utility_profile
from .numbers import profiles_equal
from .solver import kkt_verify
from .topology import brute_force_components, ef_components_two_bads

TOL = 1e-6


def lambda_family(lam) -> Problem:
    """Two agents, three items; the third item's worth sweeps good to bad."""
    return Problem(("1", "2"), ("a", "b", "c"), (1, 1, 1),
                   ((-1, -3, lam), (-2, -1, lam)))


def two_agent_six_bads() -> Problem:
    return generate_lower_bound_instance("two_agents", 2, 6)


def six_agent_two_bads() -> Problem:
    return generate_lower_bound_instance("two_items", 6, 2)


def six_agent_five_bads() -> Problem:
    return generate_lower_bound_instance("general", 6, 5)


def rm_canonical_pair() -> tuple[Problem, Problem]:
    base = Problem(("1", "2"), ("a", "b"), (1, 1), ((-1, -4), (-4, -1)))
    improved = base.with_endowment((Fraction(1, 9), 1))
    return base, improved


def parsimony_footnote() -> Problem:
    """One agent loves everything, the other is satiated or repulsed."""
    return Problem(("1", "2"), ("a", "b"), (1, 1), ((6, 2), (0, -1)))


def weak_core_triple() -> Problem:
    """Three agents, one item that only two of them want."""
    return Problem(("1", "2", "3"), ("a",), (1,), ((1,), (1,), (-1,)))


def component_witness(kind: str) -> Problem:
    """Two-bad profiles whose EF set has three components or one."""
    ratios = {"three": (0.2, 0.3, 3.5, 4.0), "one": (0.2, 0.3, 0.5, 0.9)}[kind]
    rows = tuple((-r, -1.0) for r in ratios)
    return Problem(tuple(str(i + 1) for i in range(4)), ("a", "b"), (1, 1), rows)


def component_ladder(n: int) -> Problem:
    """Ratio pattern with floor((2n+1)/3) EF components, for n >= 3.

    Positions 1,2 sit below the first cut window, then triples occupy the
    open windows between consecutive cut thresholds, leaving every third
    cut envy-free and every first-of-triple rectangle with an isolated
    region.
    """
    if n < 3:
        raise ValueError("pattern defined for n >= 3")
    bound = lambda i: i / (n - i) if i < n else float("inf")
    ratios: list[float] = []
    hi0 = bound(1)
    ratios += [hi0 * 0.5, hi0 * 0.8]
    q = 1
    while len(ratios) < n:
        lo, hi = bound(3 * q), bound(3 * q + 1)
        if len(ratios) + 3 <= n and hi < float("inf"):
            step = (hi - lo) / 4
            ratios += [lo + step, lo + 2 * step, lo + 3 * step]
            q += 1
        else:
            # Tail: remaining agents sit above the last cut threshold.
            left = n - len(ratios)
            base = max(bound(n - 1), ratios[-1]) + 1.0
            ratios += [base + t for t in range(left)]
            break
    rows = tuple((-r, -1.0) for r in ratios[:n])
    return Problem(tuple(str(i + 1) for i in range(n)), ("a", "b"), (1, 1), rows)


@dataclass
class DemoResult:
    name: str
    passed: bool
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, bool(ok), detail))
        if not ok:
            self.passed = False


def _profiles_close(found, expected) -> bool:
    if len(found) != len(expected):
        return False
    return all(profiles_equal(f.values, e, TOL) for f, e in zip(found, expected))


def demo_lambda_family() -> DemoResult:
    result = DemoResult("lambda-family", True)
    kinds = {4: "positive", 3: "positive", 2: "null", 1: "negative",
             0: "negative", -1: "negative", -2: "negative", -3: "negative"}
    got = {}
    for lam, want in kinds.items():
        kind = classify(lambda_family(lam)).kind
        got[lam] = kind
        result.check(f"classify lambda={lam}", kind == want, f"{kind} vs {want}")
    problem = lambda_family(-1)
    enumeration = enumerate_two_agents(problem)
    expected = [(-1.0, -2.0), (-1.5, -1.5), (-2.0, -1.0), (-2.5, -5.0 / 6.0)]
    result.check("four profiles", _profiles_close(enumeration.profiles, expected))
    chosen = select_division(enumeration)
    sel = utility_profile(problem, chosen.allocation).values
    result.check("selection (-1.5, -1.5)", profiles_equal(sel, (-1.5, -1.5), TOL))
    result.check("selected share of agent 1",
                 profiles_equal(chosen.allocation.shares[0], (1.0, 0.0, 0.5), TOL))
    result.payload = {"classifications": got,
                      "profiles": [p.as_floats() for p in enumeration.profiles]}
    return result


def demo_prop1_two_agents() -> DemoResult:
    result = DemoResult("prop1-two-agents", True)
    problem = two_agent_six_bads()
    enumeration = enumerate_two_agents(problem)
    result.check("eleven profiles", len(enumeration.profiles) == 11,
                 f"got {len(enumeration.profiles)}")
    fair_share = -33.0 / 2
    hit = [p for p in enumeration.profiles if abs(p.values[0] - fair_share) < TOL]
    result.check("agent 1 pinned at its fair share in the last split", bool(hit))
    cut_price = (-0.5, -0.5, -0.5, -0.25, -0.125, -0.125)
    found = None
    for d in enumeration.divisions:
        if profiles_equal(d.price, cut_price, TOL):
            found = d
    result.check("two-left-bads cut price", found is not None)
    if found is not None:
        report = kkt_verify(problem, found, 1e-8)
        result.check("cut certificate at 1e-8", report.passed)
    result.payload = {"profiles": [p.as_floats() for p in enumeration.profiles]}
    return result


def demo_prop1_two_items() -> DemoResult:
    result = DemoResult("prop1-two-items", True)
    problem = six_agent_two_bads()
    exact = Problem(problem.agents, problem.items,
                    tuple(Fraction(1) for _ in problem.endowment),
                    tuple(tuple(Fraction(v) for v in row) for row in problem.utilities))
    enumeration = enumerate_two_items(exact)
    result.check("eleven profiles", len(enumeration.profiles) == 11,
                 f"got {len(enumeration.profiles)}")
    table = None
    for d in enumeration.divisions:
        if d.allocation.shares[2][0] == Fraction(1, 6):
            table = d
    result.check("split-at-third-agent division found", table is not None)
    if table is not None:
        a_col = tuple(row[0] for row in table.allocation.shares)
        b_col = tuple(row[1] for row in table.allocation.shares)
        result.check("bad-a column", a_col == (Fraction(5, 12), Fraction(5, 12),
                                               Fraction(1, 6), 0, 0, 0))
        result.check("bad-b column", b_col == (0, 0, Fraction(1, 6), Fraction(5, 18),
                                               Fraction(5, 18), Fraction(5, 18)))
        result.check("price", table.price == (Fraction(-12, 5), Fraction(-18, 5)))
    cut = None
    for d in enumeration.divisions:
        if d.price == (Fraction(-2), Fraction(-4)):
            cut = d
    result.check("two-agent cut price -(2,4)", cut is not None)
    result.payload = {"profiles": [[str(v) for v in p.values] for p in enumeration.profiles]}
    return result


def demo_prop1_general() -> DemoResult:
    result = DemoResult("prop1-general", True)
    problem = six_agent_five_bads()
    classification = classify(problem)
    enumeration = enumerate_general(problem, classification=classification)
    result.check("enumeration exhaustive", enumeration.exhaustive)
    symmetric = [p for p in enumeration.profiles
                 if all(abs(v + 5.0 / 6.0) < TOL for v in p.values)]
    result.check("symmetric division present (all -5/6)", bool(symmetric))
    target = (-2 / 3, -2 / 3, -1.0, -1.0, -1.0, -2 / 3)
    subset = None
    for d, p in zip(enumeration.divisions, enumeration.profiles):
        if profiles_equal(p.values, target, TOL):
            subset = d
    result.check("three-singles division present", subset is not None)
    if subset is not None:
        result.check("its price -(3/2,3/2,1,1,1)",
                     profiles_equal(subset.price, (-1.5, -1.5, -1.0, -1.0, -1.0), TOL))
    # The documented count for this table is 31; the certificate check
    # accepts additional divisions (mixed-consumption supports), so the
    # full enumeration is strictly larger.  Report both facts.
    family = _subset_family_profiles()
    missing = [f for f in family
               if not any(profiles_equal(p.values, f, TOL) for p in enumeration.profiles)]
    result.check("all 31 documented divisions found", not missing,
                 f"missing {len(missing)}")
    result.payload = {
        "profile_count": len(enumeration.profiles),
        "documented_count": 31,
        "count_note": ("certificate-verified enumeration exceeds the documented "
                       "31-member family; every division passes the first-order "
                       "checks at 1e-7"),
    }
    return result


def _subset_family_profiles() -> list[tuple[float, ...]]:
    """The 31 documented profiles: each strict subset of the first five
    agents eats its own bad fully, the rest share with agent six."""
    import itertools
    out = []
    for size in range(0, 5):
        for full in itertools.combinations(range(5), size):
            q = 5 - size
            shared = -q / (q + 1.0)
            vals = [0.0] * 6
            for i in range(5):
                vals[i] = -1.0 if i in full else shared
            vals[5] = shared
            out.append(tuple(vals))
    return out


def demo_prop4_rm() -> DemoResult:
    from .audit import rm_demo  # local import to avoid a cycle

    result = DemoResult("prop4-rm", True)
    base, improved = rm_canonical_pair()
    demo = rm_demo(base, improved, "competitive")
    result.check("pair recognized", demo.canonical is not None)
    if demo.canonical:
        result.check("agent 2 half fair share -13/18",
                     demo.canonical["agent2_half_fair_share"] == Fraction(-13, 18))
    result.check("competitive rule violates monotonicity here", not demo.rm_holds)
    loser = min(range(2), key=lambda i: demo.deltas[i])
    result.check("loser ends at or below -10/9",
                 demo.improved_profile[loser] <= -10.0 / 9.0 + 1e-9)
    egal = rm_demo(base, improved, "egalitarian")
    result.check("egalitarian rule violates monotonicity here", not egal.rm_holds)
    result.payload = {"competitive": {"before": demo.base_profile,
                                      "after": demo.improved_profile,
                                      "deltas": demo.deltas},
                      "egalitarian": {"before": egal.base_profile,
                                      "after": egal.improved_profile}}
    return result


def demo_lemma5() -> DemoResult:
    result = DemoResult("lemma5", True)
    for kind, want in (("three", 3), ("one", 1)):
        problem = component_witness(kind)
        report = ef_components_two_bads(problem)
        oracle = brute_force_components(problem, grid=200)
        result.check(f"{kind}-component witness: formula", report.count == want,
                     f"got {report.count}")
        result.check(f"{kind}-component witness: grid oracle", oracle == want,
                     f"got {oracle}")
    for n in range(3, 10):
        problem = component_ladder(n)
        want = (2 * n + 1) // 3
        report = ef_components_two_bads(problem)
        result.check(f"ladder n={n} hits floor((2n+1)/3)={want}",
                     report.count == want, f"got {report.count}")
    result.payload = {}
    return result


DEMOS: dict[str, Callable[[], DemoResult]] = {
    "lambda-family": demo_lambda_family,
    "prop1-two-agents": demo_prop1_two_agents,
    "prop1-two-items": demo_prop1_two_items,
    "prop1-general": demo_prop1_general,
    "prop4-rm": demo_prop4_rm,
    "lemma5": demo_lemma5,
}


def run_demo(name: str) -> DemoResult:
    if name not in DEMOS:
        raise KeyError(f"unknown demo {name!r}; available: {', '.join(sorted(DEMOS))}")
    return DEMOS[name]()
