"""Invariant densities for weighted two-branch interval maps.

The core objects are step functions with exact quadratic-irrational or
float values (`StepFunction`, `Surd`), systems pairing an expansion
parameter with a density and branch weights (`EquippedSystem`), the
transfer step acting on densities (`pushforward_density`), finite
checkable conditions equivalent to invariance
(`check_invariance_conditions`, `solve_alpha1`), ready-made invariant
families (`lebesgue_family`, `nonconstant_family`, `renyi_system`),
binary expansions in bases from (1, 2] (`greedy_expansion`,
`enumerate_expansions`), and Monte Carlo stationarity checks
(`one_step_stationarity_test`, `run_chain`).
"""

from .criterion import (
    ConditionCheck,
    ConditionReport,
    InfeasibleError,
    check_invariance_conditions,
    invariance_defect,
    solve_alpha1,
)
from .expansion import (
    BudgetExceededError,
    DigitSequence,
    InadmissibleChoiceError,
    enumerate_expansions,
    evaluate_expansion,
    greedy_expansion,
    orbit_expansion,
)
from .families import (
    lebesgue_family,
    nonconstant_family,
    normalize,
    renyi_density,
    renyi_system,
    renyi_transfer,
    total_mass,
)
from .numerics import (
    Interval,
    MixedBackendError,
    MixedRadicandError,
    ParseError,
    Scalar,
    Surd,
    format_scalar,
    is_exact,
    parse_scalar,
    sqrt_scalar,
)
from .piecewise import (
    NonpositiveSlopeError,
    StepFunction,
    ZeroMassError,
    step_from_json,
    step_to_csv,
    step_to_json,
)
from .simulate import (
    ChainReport,
    HistogramReport,
    OneStepReport,
    SampleSet,
    histogram_report,
    one_step_stationarity_test,
    read_sample_file,
    run_chain,
    sample_from_density,
    write_sample_file,
)
from .system import (
    BranchChoice,
    EquippedSystem,
    apply_branch,
    as_float_system,
    derive_n,
    pushforward_density,
    pushforward_measure,
    system_from_json,
    system_to_json,
)

__version__ = "1.0.0"

__all__ = [
    "BranchChoice",
    "BudgetExceededError",
    "ChainReport",
    "ConditionCheck",
    "ConditionReport",
    "DigitSequence",
    "EquippedSystem",
    "HistogramReport",
    "InadmissibleChoiceError",
    "InfeasibleError",
    "Interval",
    "MixedBackendError",
    "MixedRadicandError",
    "NonpositiveSlopeError",
    "OneStepReport",
    "ParseError",
    "SampleSet",
    "Scalar",
    "StepFunction",
    "Surd",
    "ZeroMassError",
    "apply_branch",
    "as_float_system",
    "check_invariance_conditions",
    "derive_n",
    "enumerate_expansions",
    "evaluate_expansion",
    "format_scalar",
    "greedy_expansion",
    "histogram_report",
    "invariance_defect",
    "is_exact",
    "lebesgue_family",
    "nonconstant_family",
    "normalize",
    "one_step_stationarity_test",
    "orbit_expansion",
    "parse_scalar",
    "pushforward_density",
    "pushforward_measure",
    "read_sample_file",
    "renyi_density",
    "renyi_system",
    "renyi_transfer",
    "run_chain",
    "sample_from_density",
    "solve_alpha1",
    "sqrt_scalar",
    "step_from_json",
    "step_to_csv",
    "step_to_json",
    "system_from_json",
    "system_to_json",
    "total_mass",
    "write_sample_file",
]
