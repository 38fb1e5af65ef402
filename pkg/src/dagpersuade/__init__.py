"""Causal-model persuasion planning over d-separation oracles."""
from .dag import Dag, GraphError, OrientationConflict, Pattern, ancestors, classify_triplet, correlated, descendants, is_acyclic
from .dsep import IndependenceOracle, ScopeError, d_separates, find_separating_set, is_independent, restrict
from .fixtures import build_fixture, build_prior, enumerate_simple_dags, random_dag
from .ic import (
    BudgetExceeded,
    ConsistencyVerdict,
    VStructureWitness,
    enumerate_consistent_dags,
    ic_algorithm,
    ic_orient_vstructures,
    ic_skeleton,
    is_consistent,
    meek_closure,
    uniquely_consistent_link,
)
from .planner import (
    Goal,
    Plan,
    ReceiverSpec,
    debunks,
    minimal_dsep_set,
    nitpick_search,
    persuade,
    persuade_naive,
    persuade_sophisticated,
    plan_debunk,
    plan_dissuade,
    receiver_accepts,
)
from .world import (
    CauseCatalog,
    WorldProfile,
    defective_links,
    find_confounders,
    find_nonobvious_causes,
    find_obvious_causes,
    is_rich,
    is_simple,
)

__version__ = "0.1.0"

__all__ = [
    "ancestors",
    "BudgetExceeded",
    "build_fixture",
    "build_prior",
    "CauseCatalog",
    "classify_triplet",
    "ConsistencyVerdict",
    "correlated",
    "d_separates",
    "Dag",
    "debunks",
    "defective_links",
    "descendants",
    "enumerate_consistent_dags",
    "enumerate_simple_dags",
    "find_confounders",
    "find_nonobvious_causes",
    "find_obvious_causes",
    "find_separating_set",
    "Goal",
    "GraphError",
    "ic_algorithm",
    "ic_orient_vstructures",
    "ic_skeleton",
    "IndependenceOracle",
    "is_acyclic",
    "is_consistent",
    "is_independent",
    "is_rich",
    "is_simple",
    "meek_closure",
    "minimal_dsep_set",
    "nitpick_search",
    "OrientationConflict",
    "Pattern",
    "persuade",
    "persuade_naive",
    "persuade_sophisticated",
    "Plan",
    "plan_debunk",
    "plan_dissuade",
    "random_dag",
    "receiver_accepts",
    "ReceiverSpec",
    "restrict",
    "ScopeError",
    "uniquely_consistent_link",
    "VStructureWitness",
    "WorldProfile",
]
