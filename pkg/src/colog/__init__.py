"""Collaborative city-logistics planning.

Macro level: collaboration squares over dimension blocks, sign-case
evaluation and enumeration. Micro level: compliance filtering, trip-count
minimization, coalition routing and symbolic emission accounting.
Complexity level: uncertainty effectors, the system complexity/state pair,
trio conditionality and the spider tangibility network.
"""

__version__ = "0.1.0"

from .complexity import (
    CityDeltas,
    ConditionEffector,
    canonical_spider_network,
    classify_spider_node,
    classify_trio,
    effector_sum,
    make_effector,
    system_complexity,
    system_state,
)
from .compliance import ComplianceReport, filter_trucks
from .emissions import (
    EmissionVector,
    account_emissions,
    compare_emissions,
    tier1_lookup,
)
from .errors import (
    CologError,
    InfeasibleError,
    InputError,
)
from .model import (
    CollaborationBlocks,
    Network,
    Order,
    Scenario,
    SignAssignment,
    Truck,
    parse_scenario,
    serialize_scenario,
)
from .pipeline import PipelineReport, resolve_intents, run_pipeline
from .routing import (
    build_routes,
    compare_scenarios,
    detect_coalitions,
    shortest_path,
)
from .assignment import enumerate_allocations, min_trips
from .square import (
    CollaborationOutcome,
    enumerate_sign_cases,
    eval_scs,
    rank_sampled_cases,
)

__all__ = [
    "__version__",
    "CityDeltas",
    "CollaborationBlocks",
    "CollaborationOutcome",
    "CologError",
    "ComplianceReport",
    "ConditionEffector",
    "EmissionVector",
    "InfeasibleError",
    "InputError",
    "Network",
    "Order",
    "PipelineReport",
    "Scenario",
    "SignAssignment",
    "Truck",
    "account_emissions",
    "build_routes",
    "canonical_spider_network",
    "classify_spider_node",
    "classify_trio",
    "compare_emissions",
    "compare_scenarios",
    "detect_coalitions",
    "effector_sum",
    "enumerate_allocations",
    "enumerate_sign_cases",
    "eval_scs",
    "filter_trucks",
    "make_effector",
    "min_trips",
    "parse_scenario",
    "rank_sampled_cases",
    "resolve_intents",
    "run_pipeline",
    "serialize_scenario",
    "shortest_path",
    "system_complexity",
    "system_state",
    "tier1_lookup",
]
