"""Exact toolkit for binary knapsack problems with signed value dependencies.

Element values are modulated by positive or negative, imprecisely weighted
dependencies on the selection state of other elements, modeled as a signed
directed fuzzy graph.  The package computes per-pair influences via max-min
path algebra, evaluates selections exactly, solves instances by
branch-and-bound or exhaustive search, and exports the linearized integer
program in LP format.
"""

from .evaluate import (
    PenaltyVector,
    Selection,
    is_feasible,
    objective_value,
    penalties,
    selection_weight,
)
from .graph import (
    DependencyPath,
    Element,
    Instance,
    InstanceFormatError,
    Quality,
    Vdg,
    explicit_edges,
    instance_from_json,
    instance_to_json,
    validate,
)
from .influence import (
    InfluenceMatrix,
    InvalidPathError,
    enumerate_simple_paths,
    influence_matrix,
    path_quality,
    path_strength,
    signed_strengths,
    walk_closure,
)
from .milp import (
    BINARY,
    CONTINUOUS,
    LinearConstraint,
    MilpModel,
    VariableDef,
    build_model,
    export_lp,
)
from .solver import (
    EXHAUSTIVE_CAP,
    ExhaustiveLimitError,
    SolveResult,
    generate_instance,
    relaxation_bound,
    solve_bnb,
    solve_exhaustive,
)

__version__ = "0.1.0"

__all__ = [
    "BINARY",
    "CONTINUOUS",
    "DependencyPath",
    "EXHAUSTIVE_CAP",
    "Element",
    "ExhaustiveLimitError",
    "InfluenceMatrix",
    "Instance",
    "InstanceFormatError",
    "InvalidPathError",
    "LinearConstraint",
    "MilpModel",
    "PenaltyVector",
    "Quality",
    "Selection",
    "SolveResult",
    "VariableDef",
    "Vdg",
    "build_model",
    "enumerate_simple_paths",
    "explicit_edges",
    "export_lp",
    "generate_instance",
    "influence_matrix",
    "instance_from_json",
    "instance_to_json",
    "is_feasible",
    "objective_value",
    "path_quality",
    "path_strength",
    "penalties",
    "relaxation_bound",
    "selection_weight",
    "signed_strengths",
    "solve_bnb",
    "solve_exhaustive",
    "validate",
    "walk_closure",
]
