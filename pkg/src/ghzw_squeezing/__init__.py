"""Kitagawa-Ueda spin squeezing of the tripartite GHZ/W superposition under
amplitude-damping, phase-damping and depolarizing decoherence."""

from .channels import (
    AMPLITUDE_DAMPING,
    CHANNEL_KINDS,
    DEPOLARIZING,
    PHASE_DAMPING,
    KrausSet,
    amplitude_damping_kraus,
    apply_channel_all_qubits,
    depolarizing_kraus,
    kraus_set,
    phase_damping_kraus,
    validate_kraus,
)
from .collective import (
    Direction,
    MeanSpinVector,
    SpinEnsemble,
    SqueezingResult,
    collective_operator,
    mean_spin_direction,
    mean_spin_vector,
    min_perpendicular_variance,
    perpendicular_basis,
    spin_moments,
    squeezing_parameter,
    variance_along,
)
from .kernels import backend_name
from .qstate import (
    density_from_pure,
    expectation,
    ghz_state,
    superposition_state,
    tensor,
    validate_density,
    w_state,
)
from .sweep import (
    DEFAULT_ALPHA_GRID,
    DEFAULT_GAMMA_T_GRID,
    DEFAULT_PHI_GRID,
    DEFAULT_THETA_GRID,
    AlphaSensitivity,
    NoSqueezeVerdict,
    SweepRecord,
    SweepSpec,
    alpha_sensitivity_scan,
    detect_no_squeezing,
    discrepancy_report,
    emit_results,
    grid_range,
    load_records,
    run_sweep,
)

__version__ = "0.1.0"
