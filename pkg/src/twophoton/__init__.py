"""Two-photon interference at a polarization-dependent beam splitter.

The package has three layers that deliberately do not share arithmetic:

* :mod:`twophoton.fock`, :mod:`twophoton.elements`, :mod:`twophoton.engine`
  build detection probabilities from annihilation-operator algebra on the
  two-photon Fock space (the brute-force reference path);
* :mod:`twophoton.formulas` carries the factorized closed forms for the
  same probabilities;
* :mod:`twophoton.montecarlo` samples click-level runs from a full outcome
  distribution, and :mod:`twophoton.compare` sweeps engine against formulas
  over dense parameter grids.

`twophoton.cli` exposes the `twophoton` command with `sweep`, `compare`,
and `mc` subcommands.
"""

from .compare import DEFAULT_TOL, CheckResult, run_comparison
from .elements import (
    AnalyzerSetting,
    BeamSplitterSpec,
    PhaseGeometry,
    Port,
    bs_output_ops,
    detector_operator,
    phase_from_positions,
    same_arm_operator_pair,
)
from .engine import (
    InputSpec,
    Outcome,
    OutcomeDistribution,
    OutcomeKind,
    all_outcomes,
    coincidence_no_polarizers,
    coincidence_probability,
    double_trigger_probability,
    full_outcome_distribution,
    same_arm_both_arms,
    same_arm_no_polarizers,
    same_arm_probability,
)
from .fock import (
    Arm,
    FreqSlot,
    IncidentPolarization,
    Mode,
    OperatorExpr,
    Pol,
    TwoPhotonState,
    apply_annihilation,
    apply_operator_expr,
    product_state,
    vacuum_amplitude,
)
from .formulas import (
    BunchPathAmplitudes,
    PairPathAmplitudes,
    bunch_path_amplitudes,
    p_classical,
    p_coincidence,
    p_double_trigger,
    p_no_polarizers,
    p_same_arm,
    p_same_arm_no_polarizers,
    p_unpolarized,
    p_unpolarized_5050,
    p_unpolarized_same_arm,
    pair_path_amplitudes,
)
from .montecarlo import (
    BLOCK_PAIRS,
    RNG_ALGORITHM,
    CountTable,
    OutcomeEstimate,
    RunConfig,
    consistency_z,
    estimate,
    sample_run,
)

__version__ = "0.1.0"

__all__ = [
    "Arm",
    "Pol",
    "FreqSlot",
    "Mode",
    "TwoPhotonState",
    "IncidentPolarization",
    "OperatorExpr",
    "product_state",
    "apply_annihilation",
    "apply_operator_expr",
    "vacuum_amplitude",
    "BeamSplitterSpec",
    "AnalyzerSetting",
    "Port",
    "PhaseGeometry",
    "phase_from_positions",
    "bs_output_ops",
    "detector_operator",
    "same_arm_operator_pair",
    "InputSpec",
    "Outcome",
    "OutcomeKind",
    "OutcomeDistribution",
    "all_outcomes",
    "coincidence_probability",
    "coincidence_no_polarizers",
    "same_arm_probability",
    "same_arm_both_arms",
    "same_arm_no_polarizers",
    "double_trigger_probability",
    "full_outcome_distribution",
    "PairPathAmplitudes",
    "BunchPathAmplitudes",
    "pair_path_amplitudes",
    "bunch_path_amplitudes",
    "p_coincidence",
    "p_no_polarizers",
    "p_same_arm",
    "p_same_arm_no_polarizers",
    "p_double_trigger",
    "p_unpolarized",
    "p_unpolarized_5050",
    "p_unpolarized_same_arm",
    "p_classical",
    "RunConfig",
    "CountTable",
    "OutcomeEstimate",
    "sample_run",
    "estimate",
    "consistency_z",
    "BLOCK_PAIRS",
    "RNG_ALGORITHM",
    "run_comparison",
    "CheckResult",
    "DEFAULT_TOL",
]
