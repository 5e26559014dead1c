"""Wideband distributed-beamforming simulator for random satellite swarms.

Computes the angular response of a swarm's combined transmission with the
full wideband model: per-node residual delays are applied to the shaping
pulse itself (cubic time-domain resampling) in addition to the carrier
phase rotation, so pulse decorrelation and carrier decoherence are both
captured.  Monte-Carlo sweeps aggregate three estimators over random
swarm realizations: the phase-free real-pulse gain, the raw received
power, and the squared matched-filter similarity.
"""

from .combiner import (
    CombinedPulse,
    GainSample,
    combined_pulse,
    dense_oracle_prr,
    dense_oracle_pvr,
    gain_sample,
    matched_similarity,
    raw_power,
    real_pulse_gain,
)
from .experiment import (
    ESTIMATORS,
    ExperimentConfig,
    SweepResult,
    VarianceReport,
    default_theta_grid,
    derive_seed,
    half_power_width,
    run_sweep,
    variance_check,
)
from .geometry import (
    SPEED_OF_LIGHT,
    DelayProfile,
    PointingAngle,
    SwarmConfig,
    analytic_delay_std,
    delay_profile,
    plane_distance,
    pointing_vector,
    rotation_matrix,
    sample_positions,
)
from .presets import DEFAULT_SEED, PRESET_PARAMS, preset_config
from .pulse import (
    PulseSpec,
    SampledPulse,
    apply_phase,
    fractional_delay,
    sinc_taps,
    srrc_taps,
)
from .reporting import plot_svg, read_csv, write_csv

__version__ = "0.1.0"

__all__ = [
    "SPEED_OF_LIGHT",
    "DEFAULT_SEED",
    "ESTIMATORS",
    "PRESET_PARAMS",
    "CombinedPulse",
    "DelayProfile",
    "ExperimentConfig",
    "GainSample",
    "PointingAngle",
    "PulseSpec",
    "SampledPulse",
    "SwarmConfig",
    "SweepResult",
    "VarianceReport",
    "analytic_delay_std",
    "apply_phase",
    "combined_pulse",
    "default_theta_grid",
    "delay_profile",
    "dense_oracle_prr",
    "dense_oracle_pvr",
    "derive_seed",
    "fractional_delay",
    "gain_sample",
    "half_power_width",
    "matched_similarity",
    "plane_distance",
    "plot_svg",
    "pointing_vector",
    "preset_config",
    "raw_power",
    "read_csv",
    "real_pulse_gain",
    "rotation_matrix",
    "run_sweep",
    "sample_positions",
    "sinc_taps",
    "srrc_taps",
    "variance_check",
    "write_csv",
]
