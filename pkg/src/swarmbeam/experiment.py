"""Monte-Carlo sweeps of the gain estimators over a pointing-angle grid.

Each realization draws fresh node positions from a sub-seed derived
deterministically from ``(master_seed, realization_index)`` with a
SplitMix64 mixing step, owns its own RNG stream, and is aggregated by
index after all realizations complete.  Results are therefore bit
identical no matter how many workers execute them or in what order.
"""

from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .combiner import gain_sample
from .geometry import (
    SPEED_OF_LIGHT,
    PointingAngle,
    SwarmConfig,
    analytic_delay_std,
    delay_profile,
    sample_positions,
)
from .pulse import PulseSpec

_MASK64 = (1 << 64) - 1

#: Estimator names accepted by :func:`half_power_width`.
ESTIMATORS = ("real", "prr", "pvr")


def derive_seed(master_seed: int, index: int) -> int:
    """Mix ``(master_seed, index)`` into an independent 64-bit sub-seed.

    One SplitMix64 step with state ``master_seed + (index + 1) * golden``,
    where ``golden`` is the 64-bit golden-ratio increment.  The mixing is
    fixed and documented so seed derivations can be reproduced elsewhere.
    """
    z = (master_seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def default_theta_grid(
    max_deg: float = 2.0, min_deg: float = 1e-5, points: int = 201
) -> np.ndarray:
    """Zero plus ``points - 1`` log-spaced angles over [min_deg, max_deg], in radians.

    The log spacing resolves the carrier-phase decoherence region (around
    1e-4 degrees for the default presets) and still covers the out-of-beam
    plateau out to ``max_deg``.
    """
    if points < 2:
        raise ValueError("points must be >= 2")
    if not 0.0 < min_deg < max_deg:
        raise ValueError("need 0 < min_deg < max_deg")
    grid = np.concatenate(
        [
            [0.0],
            np.logspace(math.log10(min_deg), math.log10(max_deg), points - 1),
        ]
    )
    return np.deg2rad(grid)


@dataclass(frozen=True)
class ExperimentConfig:
    """One full sweep: swarm statistics, pulse, angle grid, repetitions, seed.

    ``master_seed`` drives the per-realization sub-seeds; the seed stored
    inside ``swarm`` is ignored by :func:`run_sweep` (it only matters for
    standalone position sampling).
    """

    swarm: SwarmConfig
    pulse: PulseSpec
    theta_grid: np.ndarray
    phi: float = 0.0
    realizations: int = 200
    master_seed: int = 0

    def __post_init__(self):
        grid = np.array(self.theta_grid, dtype=float)
        grid.setflags(write=False)
        object.__setattr__(self, "theta_grid", grid)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("theta_grid must be a nonempty 1-D array")
        if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
            raise ValueError("theta_grid must be strictly increasing")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")

    def describe(self) -> dict:
        """Flat, JSON-friendly view of every resolved parameter."""
        return {
            "swarm.node_count": self.swarm.node_count,
            "swarm.position_stddev_m": self.swarm.position_stddev,
            "swarm.distribution": self.swarm.distribution,
            "swarm.bound_radius_m": self.swarm.bound_radius,
            "pulse.baud_rate_hz": self.pulse.baud_rate,
            "pulse.rolloff": self.pulse.rolloff,
            "pulse.oversampling": self.pulse.oversampling,
            "pulse.tap_count": self.pulse.tap_count,
            "pulse.carrier_frequency_hz": self.pulse.carrier_frequency,
            "phi_rad": self.phi,
            "theta_points": int(self.theta_grid.size),
            "theta_max_rad": float(self.theta_grid[-1]),
            "realizations": self.realizations,
            "master_seed": self.master_seed,
        }


@dataclass(frozen=True)
class SweepResult:
    """Per-angle mean and sample standard deviation of the three estimators."""

    config: ExperimentConfig
    theta_grid: np.ndarray
    real_gain_mean: np.ndarray
    real_gain_std: np.ndarray
    prr_mean: np.ndarray
    prr_std: np.ndarray
    pvr_sq_mean: np.ndarray
    pvr_sq_std: np.ndarray

    _ARRAYS = (
        "theta_grid",
        "real_gain_mean",
        "real_gain_std",
        "prr_mean",
        "prr_std",
        "pvr_sq_mean",
        "pvr_sq_std",
    )

    def __post_init__(self):
        for name in self._ARRAYS:
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
            if arr.shape != self.theta_grid.shape:
                raise ValueError(f"{name} must match the theta grid shape")

    def estimator_mean(self, estimator: str) -> np.ndarray:
        if estimator not in ESTIMATORS:
            raise ValueError(f"estimator must be one of {ESTIMATORS}")
        return {
            "real": self.real_gain_mean,
            "prr": self.prr_mean,
            "pvr": self.pvr_sq_mean,
        }[estimator]

    def content_hash(self) -> str:
        """Git-style SHA-1 over the resolved config and all result arrays."""
        payload = json.dumps(self.config.describe(), sort_keys=True).encode()
        for name in self._ARRAYS:
            payload += getattr(self, name).tobytes()
        blob = b"swarmbeam-sweep %d\0" % len(payload) + payload
        return hashlib.sha1(blob).hexdigest()


def _realization_gains(config: ExperimentConfig, index: int) -> np.ndarray:
    """(angles x 3) estimator values for realization ``index``."""
    seed = derive_seed(config.master_seed, index)
    positions = sample_positions(replace(config.swarm, seed=seed))
    steer = PointingAngle(0.0, config.phi)
    out = np.empty((config.theta_grid.size, 3))
    for i, theta in enumerate(config.theta_grid):
        observe = PointingAngle(float(theta), config.phi)
        profile = delay_profile(
            positions, steer, observe, config.pulse.carrier_frequency
        )
        sample = gain_sample(profile, config.pulse)
        out[i] = (sample.real_pulse_gain, sample.prr, sample.pvr_abs_sq)
    return out


def _sweep_worker(args) -> tuple[int, np.ndarray]:
    config, index = args
    return index, _realization_gains(config, index)


def run_sweep(config: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Run the Monte-Carlo sweep, optionally across worker processes.

    Every realization is an independent work unit with its own derived
    seed; the (realizations x angles x 3) block is assembled by index and
    reduced afterwards, so the result is bit-identical for any worker
    count.  Standard deviations use the unbiased (R - 1) denominator and
    are defined as zero for a single realization.
    """
    r_count = config.realizations
    gains = np.empty((r_count, config.theta_grid.size, 3))
    if workers <= 1:
        for r in range(r_count):
            gains[r] = _realization_gains(config, r)
    else:
        tasks = [(config, r) for r in range(r_count)]
        chunk = max(1, r_count // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, block in pool.map(_sweep_worker, tasks, chunksize=chunk):
                gains[index] = block

    means = gains.mean(axis=0)
    if r_count > 1:
        stds = gains.std(axis=0, ddof=1)
    else:
        stds = np.zeros_like(means)
    return SweepResult(
        config=config,
        theta_grid=config.theta_grid,
        real_gain_mean=means[:, 0],
        real_gain_std=stds[:, 0],
        prr_mean=means[:, 1],
        prr_std=stds[:, 1],
        pvr_sq_mean=means[:, 2],
        pvr_sq_std=stds[:, 2],
    )


def half_power_width(result: SweepResult, estimator: str) -> float:
    """Smallest angle where the estimator's mean falls below half its boresight value.

    The grid must contain theta = 0; the crossing is located by linear
    interpolation between the bracketing grid points.  Raises if the mean
    never crosses half power within the grid.
    """
    mean = result.estimator_mean(estimator)
    grid = result.theta_grid
    zero_idx = np.flatnonzero(grid == 0.0)
    if zero_idx.size == 0:
        raise ValueError("theta grid does not cover theta = 0")
    start = int(zero_idx[0])
    half = mean[start] / 2.0
    for i in range(start + 1, grid.size):
        if mean[i] < half:
            prev, cur = mean[i - 1], mean[i]
            t0, t1 = grid[i - 1], grid[i]
            return float(t0 + (half - prev) * (t1 - t0) / (cur - prev))
    raise ValueError(f"{estimator} mean never crosses half power within the grid")


@dataclass(frozen=True)
class VarianceReport:
    """Empirical vs closed-form path-difference spread at one angle."""

    empirical_std: float
    analytic_std: float
    relative_error: float


def variance_check(
    swarm: SwarmConfig, angle: PointingAngle, samples: int
) -> VarianceReport:
    """Compare sampled path-length spread against the closed form.

    Draws ``samples`` positions from the swarm statistics, computes the
    path-length differences ``c * delta`` for boresight steering observed
    at ``angle``, and reports the empirical standard deviation next to
    :func:`swarmbeam.geometry.analytic_delay_std`.  At boresight both are
    zero and the relative error is defined as 0.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    positions = sample_positions(replace(swarm, node_count=samples))
    profile = delay_profile(positions, PointingAngle(0.0, 0.0), angle, 1.0)
    path = profile.delays * SPEED_OF_LIGHT
    empirical = float(np.std(path, ddof=1)) if samples > 1 else 0.0
    analytic = analytic_delay_std(angle, swarm.position_stddev)
    if analytic == 0.0:
        relative = 0.0 if empirical == 0.0 else math.inf
    else:
        relative = abs(empirical - analytic) / analytic
    return VarianceReport(
        empirical_std=empirical, analytic_std=analytic, relative_error=relative
    )
