"""Self-contained correctness checks behind the ``verify`` CLI subcommand.

Each check returns a :class:`CheckResult`; the CLI renders them as a
PASS/FAIL table.  ``quick`` trims sample counts so the whole battery
finishes in well under a minute; the full battery adds the out-of-beam
Monte-Carlo check and tighter statistical tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .combiner import (
    CombinedPulse,
    base_pulse,
    dense_oracle_prr,
    dense_oracle_pvr,
    gain_sample,
    matched_similarity,
    raw_power,
)
from .experiment import (
    ExperimentConfig,
    PointingAngle,
    run_sweep,
    variance_check,
)
from .geometry import DelayProfile, SwarmConfig
from .presets import preset_config
from .pulse import SampledPulse

_VERIFY_SEED = 0xC0FFEE


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_boresight(realizations: int = 5) -> CheckResult:
    """Boresight means equal N^2 with zero spread, for N in {8, 16}."""
    worst = 0.0
    for nodes in (8, 16):
        config = preset_config(
            "fig3" if nodes == 8 else "fig4",
            master_seed=_VERIFY_SEED,
            realizations=realizations,
            theta_grid=np.array([0.0]),
        )
        result = run_sweep(config)
        expected = float(nodes * nodes)
        for mean in (result.real_gain_mean, result.prr_mean, result.pvr_sq_mean):
            worst = max(worst, abs(mean[0] - expected) / expected)
        for std in (result.real_gain_std, result.prr_std, result.pvr_sq_std):
            worst = max(worst, float(std[0]))
    passed = worst < 1e-6
    return CheckResult(
        name="boresight-gain-law",
        passed=passed,
        detail=f"worst deviation {worst:.2e} (limit 1e-06)",
    )


def _random_combined(rng: np.random.Generator, length: int) -> CombinedPulse:
    samples = rng.normal(size=length) + 1j * rng.normal(size=length)
    return CombinedPulse(samples=samples, sample_rate=1.0, center_index=length // 2)


def _random_ideal(rng: np.random.Generator, taps: int = 17) -> SampledPulse:
    samples = rng.normal(size=taps) + 1j * rng.normal(size=taps)
    return SampledPulse(samples=samples, sample_rate=1.0, center_index=taps // 2)


def check_oracle_equivalence(cases: int = 100, tolerance: float = 1e-10) -> CheckResult:
    """Fast trace paths vs dense circulant oracles on random pulses."""
    rng = np.random.default_rng(_VERIFY_SEED)
    worst = 0.0
    per_length = max(1, cases // 3)
    for length in (32, 64, 128):
        for _ in range(per_length):
            g = _random_combined(rng, length)
            ideal = _random_ideal(rng)
            prr_fast = raw_power(g)
            prr_dense = dense_oracle_prr(g)
            worst = max(worst, abs(prr_fast - prr_dense) / abs(prr_dense))
            pvr_fast = matched_similarity(g, ideal)
            pvr_dense = dense_oracle_pvr(g, ideal)
            scale = max(abs(pvr_dense), 1e-30)
            worst = max(worst, abs(pvr_fast - np.conj(pvr_dense)) / scale)
    passed = worst < tolerance
    return CheckResult(
        name="oracle-equivalence",
        passed=passed,
        detail=f"worst relative error {worst:.2e} (limit {tolerance:.0e})",
    )


_VARIANCE_ANGLES = (
    (np.deg2rad(0.5), 0.0),
    (np.deg2rad(1.0), 0.0),
    (np.deg2rad(60.0), 0.0),
    (np.deg2rad(1.0), np.deg2rad(30.0)),
)


def check_variance(samples: int = 10**6, tolerance: float = 0.01) -> CheckResult:
    """Sampled path-length spread against the closed form at four angles."""
    swarm = SwarmConfig(node_count=1, position_stddev=500.0, seed=_VERIFY_SEED)
    worst = 0.0
    for theta, phi in _VARIANCE_ANGLES:
        report = variance_check(swarm, PointingAngle(theta, phi), samples)
        worst = max(worst, report.relative_error)
    passed = worst < tolerance
    return CheckResult(
        name="delay-spread-closed-form",
        passed=passed,
        detail=f"worst relative error {worst:.2e} over 4 angles (limit {tolerance})",
    )


def check_similarity_bound(cases: int = 50) -> CheckResult:
    """Cauchy-Schwarz: |matched output|^2 never exceeds raw power."""
    rng = np.random.default_rng(_VERIFY_SEED + 1)
    spec = preset_config("fig3").pulse
    ideal = base_pulse(spec)
    worst = -np.inf
    for _ in range(cases):
        nodes = int(rng.integers(1, 12))
        delays = rng.normal(0.0, 3.0, size=nodes) / spec.sample_rate
        profile = DelayProfile(
            delays=delays,
            phases=2.0 * np.pi * spec.carrier_frequency * delays,
            carrier_frequency=spec.carrier_frequency,
        )
        sample = gain_sample(profile, spec)
        worst = max(worst, sample.pvr_abs_sq - sample.prr * ideal.energy)
    passed = worst <= 1e-9
    return CheckResult(
        name="matched-similarity-bound",
        passed=passed,
        detail=f"max(|pvr|^2 - prr) = {worst:.2e} (must be <= 0)",
    )


def check_out_of_beam(realizations: int = 200) -> CheckResult:
    """Mean raw power at 2 degrees sits near N for N in {8, 16}."""
    worst_ratio = 0.0
    details = []
    for name, nodes in (("fig3", 8), ("fig4", 16)):
        config = preset_config(
            name,
            master_seed=_VERIFY_SEED,
            realizations=realizations,
            theta_grid=np.array([0.0, np.deg2rad(2.0)]),
        )
        result = run_sweep(config)
        ratio = float(result.prr_mean[-1]) / nodes
        details.append(f"N={nodes}: {ratio:.3f}N")
        worst_ratio = max(worst_ratio, abs(ratio - 1.0))
    passed = worst_ratio <= 0.25
    return CheckResult(
        name="out-of-beam-floor",
        passed=passed,
        detail=", ".join(details) + " (must stay within [0.75N, 1.25N])",
    )


def run_verification(quick: bool = False) -> list[CheckResult]:
    """Run the whole battery; ``quick`` trims the statistical sample sizes."""
    checks = [
        check_boresight(realizations=3 if quick else 5),
        check_oracle_equivalence(cases=21 if quick else 100),
        check_variance(
            samples=10**5 if quick else 10**6,
            tolerance=0.03 if quick else 0.01,
        ),
        check_similarity_bound(cases=20 if quick else 50),
    ]
    if not quick:
        checks.append(check_out_of_beam())
    return checks
