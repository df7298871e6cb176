"""Two-mode relative-phase distributions and Fisher information for optical
phase sensing."""

from .errors import (
    DegenerateStateError,
    EmptyProjectionError,
    IntegrandError,
    InvalidStateError,
    LssPhaseError,
    NonConvergenceError,
)
from .fisher import (
    EstimationBound,
    FisherReport,
    bhattacharyya_fidelity,
    compute_report,
    cramer_rao_min,
    fidelity_curvature_check,
    fisher_lss,
    fisher_quantum,
    fisher_quantum_analytic,
    reference_fisher,
)
from .phasedist import (
    PhaseDistribution,
    PhaseSample,
    autocorrelation,
    eval_dp,
    eval_p,
    eval_p_direct,
    phase_width,
    sample_grid,
    uncertainty_product,
)
from .quadrature import QuadResult, integrate_adaptive, integrate_periodic
from .states import (
    CorrelatedFock,
    FockOneInput,
    Noon,
    PhaseState,
    Regime,
    SqueezedCoherent,
    StateSpec,
    TwinFock,
    TwoModeFockState,
    apply_phase_shift,
    beam_splitter_oracle,
    build_correlated_fock,
    build_fock_one_input,
    build_noon,
    build_phase_state,
    build_squeezed_coherent_projected,
    build_state,
    build_twin_fock,
    family_name,
    max_diff_up_to_global_phase,
    photon_moments,
)

__version__ = "0.1.0"
