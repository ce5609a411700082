"""Competitive (equal-income) division of a mixed manna.

Classify problems as positive/negative/null, compute competitive
divisions, enumerate the full profile set of negative problems, audit
fairness properties, and analyze the topology of the envy-free set.
"""

from .classify import Classification, classify
from .enumeration import (
    EnumerationLimits,
    EnumerationResult,
    enumerate_general,
    enumerate_two_agents,
    enumerate_two_items,
    generate_lower_bound_instance,
    select_division,
)
from .model import (
    Allocation,
    AgentPartition,
    Division,
    ItemPartition,
    Problem,
    SupportGraph,
    UtilityProfile,
    check_feasible,
    equal_split,
    partition_agents,
    partition_items,
    support_graph,
    utility_profile,
)
from .audit import AxiomReport, FairnessReport, audit_allocation, check_rule_axioms, rm_demo
from .rules import RuleOutput, competitive_rule, egalitarian_rule, equal_split_rule, run_rule
from .solver import (
    ClassificationMismatch,
    ConvergenceError,
    KktReport,
    Weights,
    kkt_verify,
    solve_null,
    solve_positive,
    verify_criticality,
)
from .topology import (
    ComponentReport,
    brute_force_components,
    clone_bads,
    ef_components_two_bads,
    reduce_parallel_items,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
