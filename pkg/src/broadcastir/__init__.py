"""Broadcast domination and irredundance on finite graphs.

Exact solvers for the broadcast parameters, a polynomial decision procedure
for maximal irredundance with checkable evidence, and a constructive
conversion of maximal irredundant broadcasts into dominating broadcasts of at
most 5/4 the cost.
"""

from .broadcast import (
    BroadcastAnalysis,
    analyze,
    check_broadcast,
    cost,
    has_epb_everywhere,
    is_dominating,
    is_irredundant,
    is_minimal_dominating,
)
from .budget import Budget
from .construct import ConstructionError, ConstructionTrace, build_overlap_graph, classify_BCD, construct_dominating
from .errors import (
    BroadcastError,
    BudgetExceeded,
    GraphInputError,
    InvalidBroadcastError,
    InvariantViolation,
    PreconditionError,
    TrivialComponentError,
)
from .graph import FamilySpec, Graph, build_graph, centers, diameter, generate, induced_subgraph, radius
from .graphio import broadcast_from_json, broadcast_to_json, parse_edge_list, read_edge_list, to_dot
from .irredundance import (
    MaximalityEvidence,
    check_condition_i,
    check_condition_ii,
    escalate,
    find_irredundant_extension,
    is_maximal_irredundant,
    is_maximal_irredundant_oracle,
)
from .solvers import (
    IR_b,
    Gamma_b,
    ParameterResult,
    chain_check,
    compute,
    conjecture_check,
    gamma_b,
    ir_b,
    mp,
    set_params,
)

__all__ = [name for name in dir() if not name.startswith("_")]
