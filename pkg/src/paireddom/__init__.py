"""Paired dominating sets of size at most 10n/17 in graphs of minimum degree 4."""

__version__ = "0.1.0"

from .coloring import (
    AMBER,
    CYAN,
    WEIGHTS,
    ColoredState,
    DesirableSet,
    WeightTable,
    apply_extension,
    color,
    weight,
    xi,
)
from .errors import (
    InfeasibleParams,
    InvalidPairing,
    MalformedInput,
    MinDegreeViolation,
    NoPDSet,
    ProofGap,
    SelfLoop,
    ThresholdViolation,
    TooLarge,
    VertexOutOfRange,
)
from .graph import (
    Graph,
    components,
    emit_edge_list,
    emit_graph6,
    generate,
    parse_edge_list,
    parse_graph6,
)
from .oracle import ExactResult, exact_gamma_pr, has_perfect_matching, is_pd_set
from .rules import amber_components, boundary, find_desirable
from .solver import PDSolution, preprocess, solve
