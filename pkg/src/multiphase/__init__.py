"""Precision bounds for simultaneous multi-phase estimation under photon loss.

A small numerics library around one question: how well can d optical
phases be estimated at once when every mode loses photons? It provides
a variational, moment-only upper bound on the quantum Fisher information
matrix with its gauge optimization, exact QFI and attainability checks
at small photon number, and individual-estimation baselines for
comparison. All public objects are frozen; functions are pure, so sweeps
parallelize safely.
"""

from .baselines import (
    AsymptoticReport,
    IeResult,
    asymptotic_report,
    ie_optimal,
    ie_total_variance,
    psi_s_asymptotic,
    regime_classify,
    se_asymptotic,
    single_phase_bound,
    single_phase_bound_numeric,
)
from .bounds import (
    COND_LIMIT,
    CqBound,
    DeltaGauge,
    SingularBoundError,
    ab_coefficients,
    bound_total_variance,
    cq_matrix,
    optimize_delta,
)
from .fock import (
    AT_MOST_TOTAL,
    DEFAULT_N_CAP,
    FIXED_TOTAL,
    DensityOperator,
    FockBasis,
    PhaseMoments,
    PureState,
    annihilate,
    build_basis,
    moments,
    phase_moments,
)
from .loss import (
    DEFAULT_DENSE_CAP,
    LossChannel,
    apply_loss,
    apply_loss_density,
    kraus_operator,
    phase_factors,
    uniform_loss,
)
from .probes import (
    ProbeSpec,
    custom_probe,
    generalized_noon,
    generalized_noon_moments,
    ie_two_mode,
)
from .qfi import SUPPORT_CUTOFF, QfiResult, qfi_mixed, qfi_pure, sld_and_residual

__version__ = "0.1.0"

__all__ = [
    "AT_MOST_TOTAL",
    "AsymptoticReport",
    "COND_LIMIT",
    "CqBound",
    "DEFAULT_DENSE_CAP",
    "DEFAULT_N_CAP",
    "DeltaGauge",
    "DensityOperator",
    "FIXED_TOTAL",
    "FockBasis",
    "IeResult",
    "LossChannel",
    "PhaseMoments",
    "ProbeSpec",
    "PureState",
    "QfiResult",
    "SUPPORT_CUTOFF",
    "SingularBoundError",
    "ab_coefficients",
    "annihilate",
    "apply_loss",
    "apply_loss_density",
    "asymptotic_report",
    "bound_total_variance",
    "build_basis",
    "cq_matrix",
    "custom_probe",
    "generalized_noon",
    "generalized_noon_moments",
    "ie_optimal",
    "ie_total_variance",
    "ie_two_mode",
    "kraus_operator",
    "moments",
    "optimize_delta",
    "phase_factors",
    "phase_moments",
    "psi_s_asymptotic",
    "qfi_mixed",
    "qfi_pure",
    "regime_classify",
    "se_asymptotic",
    "single_phase_bound",
    "single_phase_bound_numeric",
    "sld_and_residual",
    "uniform_loss",
]
