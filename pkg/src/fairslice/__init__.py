"""fairslice: exact-arithmetic cake-cutting procedures and their audits.

The cake is the unit interval, value measures are piecewise-constant
rational densities, and every computation stays in ``fractions.Fraction``,
so fairness, envy, Pareto optimality, and manipulation claims are all
decided by exact equality.
"""

from .errors import (
    AllocationError,
    EPUndefinedError,
    FairsliceError,
    InfeasibleSeedError,
    InsufficientMassError,
    InvalidDensityError,
    MismatchError,
    NoFeasibleOrderingError,
    NonUniqueMedianError,
    ParseError,
    ProcedureUndefinedError,
    UnboundedError,
)
from .measures import (
    Allocation,
    DensityReport,
    DensityViolation,
    GAP_OR_OVERLAP,
    Interval,
    IntervalSet,
    NEGATIVE_DENSITY,
    Piece,
    Rational,
    Scenario,
    StepDensity,
    TOTAL_MASS_NOT_ONE,
    as_rational,
)
from .procedures import (
    EQUITABLE,
    PROPORTIONAL,
    PROCEDURE_NAMES,
    ProcedureOutcome,
    TieEvent,
    TieRule,
    contiguous_allocation,
    cut_and_choose,
    declared_values,
    ep_for_ordering,
    equitability,
    moving_knife,
    run_procedure,
    surplus_divide,
)
from .solve import (
    CellDecomposition,
    DominationWitness,
    EqualValueSolution,
    LinearConstraint,
    LinearProgram,
    SimplexResult,
    build_improvement_lp,
    decompose,
    equal_value_solve,
    greedy_cuts,
    pareto_improve,
    simplex_max,
    utilitarian_bound,
)
from .verify import (
    ManipulationWitness,
    PropertyReport,
    TruthProfile,
    envy_free_check,
    pareto_optimal_check,
    proportional_check,
    theorem_a_check,
    weak_manipulation_search,
)
from .harness import (
    CASES,
    ComparisonReport,
    CounterexampleCase,
    ProcedureSpec,
    ScenarioDocument,
    emit_report,
    load_allocation,
    load_densities,
    load_document,
    load_scenario,
    run_counterexample,
    save_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "AllocationError",
    "CASES",
    "CellDecomposition",
    "ComparisonReport",
    "CounterexampleCase",
    "DensityReport",
    "DensityViolation",
    "DominationWitness",
    "EPUndefinedError",
    "EQUITABLE",
    "EqualValueSolution",
    "FairsliceError",
    "GAP_OR_OVERLAP",
    "InfeasibleSeedError",
    "InsufficientMassError",
    "Interval",
    "IntervalSet",
    "InvalidDensityError",
    "LinearConstraint",
    "LinearProgram",
    "ManipulationWitness",
    "MismatchError",
    "NEGATIVE_DENSITY",
    "NoFeasibleOrderingError",
    "NonUniqueMedianError",
    "PROCEDURE_NAMES",
    "PROPORTIONAL",
    "ParseError",
    "Piece",
    "ProcedureOutcome",
    "ProcedureSpec",
    "ProcedureUndefinedError",
    "PropertyReport",
    "Rational",
    "Scenario",
    "ScenarioDocument",
    "SimplexResult",
    "StepDensity",
    "TOTAL_MASS_NOT_ONE",
    "TieEvent",
    "TieRule",
    "TruthProfile",
    "UnboundedError",
    "as_rational",
    "build_improvement_lp",
    "contiguous_allocation",
    "cut_and_choose",
    "declared_values",
    "decompose",
    "emit_report",
    "envy_free_check",
    "ep_for_ordering",
    "equal_value_solve",
    "equitability",
    "greedy_cuts",
    "load_allocation",
    "load_densities",
    "load_document",
    "load_scenario",
    "moving_knife",
    "pareto_improve",
    "pareto_optimal_check",
    "proportional_check",
    "run_counterexample",
    "run_procedure",
    "save_scenario",
    "simplex_max",
    "surplus_divide",
    "theorem_a_check",
    "utilitarian_bound",
    "weak_manipulation_search",
]
