"""Tunable Gaussian pulses for delay-Doppler sensing and communication."""

from .bounds import (
    CrlbResult,
    FimResult,
    TruncationWarning,
    ambiguity_function,
    crlb_closed_form,
    crlb_from_fim,
    d_poly_value,
    fim_closed_form,
    fim_discrete,
    snr_to_kfim,
)
from .capacity import (
    CapacityConfig,
    CapacityPoint,
    Normalization,
    ergodic_capacity,
    instantaneous_capacity,
)
from .channel import (
    EffectiveChannel,
    PathSet,
    SensingEcho,
    Target,
    effective_channel,
    mean_echo,
    sample_veh_a,
    sample_wssus,
)
from .covariance import (
    CovarianceModel,
    QuadCoeffs,
    ScatterStats,
    assemble_covariance,
    condition_number,
    covariance_diag,
    covariance_offdiag,
    ipr,
    jensen_capacity,
    mc_covariance,
    quad_coeffs,
)
from .grid import GridSpec
from .pulses import (
    PULSE_KINDS,
    DiscretePulse,
    PulseParams,
    beta_c_limit,
    rrc_prototype,
    sample_pulse,
    tgp_continuous,
    tgp_widths,
)
from .special import complex_erf, erfcx

__all__ = [
    "GridSpec",
    "PULSE_KINDS",
    "DiscretePulse",
    "PulseParams",
    "beta_c_limit",
    "rrc_prototype",
    "sample_pulse",
    "tgp_continuous",
    "tgp_widths",
    "complex_erf",
    "erfcx",
    "FimResult",
    "CrlbResult",
    "TruncationWarning",
    "snr_to_kfim",
    "d_poly_value",
    "fim_closed_form",
    "crlb_closed_form",
    "crlb_from_fim",
    "fim_discrete",
    "ambiguity_function",
    "PathSet",
    "EffectiveChannel",
    "Target",
    "SensingEcho",
    "effective_channel",
    "sample_wssus",
    "sample_veh_a",
    "mean_echo",
    "ScatterStats",
    "QuadCoeffs",
    "CovarianceModel",
    "quad_coeffs",
    "covariance_diag",
    "covariance_offdiag",
    "assemble_covariance",
    "mc_covariance",
    "jensen_capacity",
    "ipr",
    "condition_number",
    "CapacityConfig",
    "CapacityPoint",
    "Normalization",
    "instantaneous_capacity",
    "ergodic_capacity",
]
