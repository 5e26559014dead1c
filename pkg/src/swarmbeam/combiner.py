"""Combined swarm pulse synthesis and the three directional gain estimators.

For one swarm realization and one observation angle the combined complex
pulse is

    g = sum_n  delay(pulse, delta_n * fs) * exp(-1j * psi_n)

placed in a zero-padded block of length L sized so no shifted pulse wraps
around the block edge.  A block of transmitted symbols then maps through
a circulant matrix Q whose first row is g, which reduces the two power
estimators to first-row computations:

* raw power:       trace(Q Q^H) / L  ==  sum_k |g_k|^2
* matched output:  zero-lag correlation of g with the ideal unit-energy
                   pulse, equal up to conjugation to trace((Q_i Q)^H) / L
                   when Q_i is the circulant matched filter.

``dense_oracle_prr`` and ``dense_oracle_pvr`` materialize the L x L
matrices and evaluate the traces literally; they exist purely to verify
the fast paths and are memory-guarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import DelayProfile
from .pulse import (
    _SPLINE_PAD,
    PulseSpec,
    SampledPulse,
    build_interpolant,
    spline_delay_weights,
    srrc_taps,
)

#: Delay spans (in samples) beyond this indicate a misconfigured geometry.
DEFAULT_DELAY_SPAN_CAP = 1.0e4

#: Extra zero samples beyond the worst-case shifted support of any node pulse.
_GUARD_SAMPLES = 8

#: Dense oracles refuse blocks longer than this (L^2 memory).
_ORACLE_MAX_LEN = 256


@dataclass(frozen=True)
class CombinedPulse:
    """Swarm-combined complex pulse in its length-L circulant block."""

    samples: np.ndarray
    sample_rate: float
    center_index: int

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.complex128)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        if not 0 <= self.center_index < samples.size:
            raise ValueError("center_index must index into samples")

    def __len__(self) -> int:
        return self.samples.size


@dataclass(frozen=True)
class GainSample:
    """The three estimators at one angle for one swarm realization."""

    real_pulse_gain: float
    prr: float
    pvr_abs_sq: float

    def __post_init__(self):
        for name, value in (
            ("real_pulse_gain", self.real_pulse_gain),
            ("prr", self.prr),
            ("pvr_abs_sq", self.pvr_abs_sq),
        ):
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and nonnegative")


@lru_cache(maxsize=64)
def base_pulse(spec: PulseSpec) -> SampledPulse:
    """Cached unit-energy SRRC for ``spec`` (immutable, safe to share)."""
    return srrc_taps(spec)


@lru_cache(maxsize=64)
def _base_interpolant(spec: PulseSpec) -> tuple[np.ndarray, np.ndarray]:
    """Cached spline knots and second derivatives of the real SRRC taps."""
    knots, derivs = build_interpolant(base_pulse(spec).samples.real)
    knots.setflags(write=False)
    derivs.setflags(write=False)
    return knots, derivs


def _delays_in_samples(profile: DelayProfile, spec: PulseSpec, cap: float) -> np.ndarray:
    if abs(profile.carrier_frequency - spec.carrier_frequency) > 1e-6:
        raise ValueError("profile and spec disagree on the carrier frequency")
    d = profile.delays * spec.sample_rate
    span = float(np.max(np.abs(d))) if d.size else 0.0
    if span > cap:
        raise ValueError(
            f"delay span {span:.1f} samples exceeds the cap of {cap:.0f}; "
            "the geometry is misconfigured for this sample rate"
        )
    return d


def _block_length(support_width: int, delay_span: float) -> int:
    needed = support_width + 2 * (math.ceil(delay_span) + 2) + _GUARD_SAMPLES
    return 1 << max(4, math.ceil(math.log2(needed)))


def _node_pulse_matrix(knots: np.ndarray, derivs: np.ndarray, frac: np.ndarray) -> np.ndarray:
    """Per-node fractionally delayed copies of the base pulse.

    Row n holds the pulse resampled at ``k - frac[n]`` with the same
    spline as :func:`swarmbeam.pulse.fractional_delay`; its first sample
    sits ``_SPLINE_PAD`` indices before the base pulse's first sample.
    """
    wx0, wx1, wm0, wm1 = spline_delay_weights(frac)
    n = knots.size - 2
    return (
        wx0[:, None] * knots[0 : n + 1]
        + wx1[:, None] * knots[1 : n + 2]
        + wm0[:, None] * derivs[0 : n + 1]
        + wm1[:, None] * derivs[1 : n + 2]
    )


def _scatter(matrix: np.ndarray, offsets: np.ndarray, length: int, node_weights=None):
    """Sum per-node rows into a length-``length`` buffer at ``offsets``."""
    n, width = matrix.shape
    idx = offsets[:, None] + np.arange(width)[None, :]
    if idx.min() < 0 or idx.max() >= length:
        raise ValueError("shifted pulse falls outside the block; L sizing is violated")
    flat = idx.ravel()
    if node_weights is None:
        return np.bincount(flat, weights=matrix.ravel(), minlength=length)[:length]
    re = np.bincount(
        flat, weights=(node_weights.real[:, None] * matrix).ravel(), minlength=length
    )[:length]
    im = np.bincount(
        flat, weights=(node_weights.imag[:, None] * matrix).ravel(), minlength=length
    )[:length]
    return re + 1j * im


def _layout(profile: DelayProfile, spec: PulseSpec, cap: float):
    """Shared geometry of one combination: node rows, block placement, base."""
    base = base_pulse(spec)
    knots, derivs = _base_interpolant(spec)
    d = _delays_in_samples(profile, spec, cap)
    n_int = np.floor(d).astype(int)
    frac = d - n_int
    span = float(np.max(np.abs(d)))
    length = _block_length(knots.size - 1, span)
    center = length // 2
    offsets = center - base.center_index - _SPLINE_PAD + n_int
    rows = _node_pulse_matrix(knots, derivs, frac)
    return base, rows, offsets, length, center


def _combine(profile: DelayProfile, spec: PulseSpec, cap: float, with_phase: bool):
    base, rows, offsets, length, center = _layout(profile, spec, cap)
    weights = np.exp(-1j * profile.phases) if with_phase else None
    combined = _scatter(rows, offsets, length, weights)
    return combined, center, base


def combined_pulse(
    profile: DelayProfile,
    spec: PulseSpec,
    max_delay_span: float = DEFAULT_DELAY_SPAN_CAP,
) -> CombinedPulse:
    """Sum of all per-node delayed, phase-rotated pulses in a length-L block.

    L is sized from the realization's actual delay span (taps plus twice
    the span plus guard samples) and rounded up to the next power of two,
    so no shifted pulse wraps across the block edge.
    """
    combined, center, base = _combine(profile, spec, max_delay_span, with_phase=True)
    return CombinedPulse(
        samples=combined.astype(np.complex128),
        sample_rate=base.sample_rate,
        center_index=center,
    )


def raw_power(g: CombinedPulse) -> float:
    """Total energy ``sum_k |g_k|^2`` of the combined pulse.

    Each of the L rows of the circulant Q contributes the same energy, so
    this equals ``trace(Q Q^H) / L``.
    """
    return float(np.vdot(g.samples, g.samples).real)


def _embed_at_center(g: CombinedPulse, ideal: SampledPulse) -> np.ndarray:
    start = g.center_index - ideal.center_index
    stop = start + ideal.samples.size
    if start < 0 or stop > g.samples.size:
        raise ValueError("ideal pulse does not fit inside the combined block")
    embedded = np.zeros(g.samples.size, dtype=np.complex128)
    embedded[start:stop] = ideal.samples
    return embedded


def matched_similarity(g: CombinedPulse, ideal: SampledPulse) -> complex:
    """Zero-lag matched-filter output ``sum_k g_k * conj(ideal_k)``.

    ``ideal`` is embedded at the combined pulse's center index, so the
    correlation is evaluated at the intended symbol instant.  The value
    equals ``trace((Q_i Q)^H) / L`` up to conjugation when Q_i is the
    circulant whose first row is the conjugated time-reversed ideal pulse
    (verified against :func:`dense_oracle_pvr`); only the squared
    magnitude is reported by the sweep estimators, where the conjugation
    is immaterial.
    """
    start = g.center_index - ideal.center_index
    stop = start + ideal.samples.size
    if start < 0 or stop > g.samples.size:
        raise ValueError("ideal pulse does not fit inside the combined block")
    window = g.samples[start:stop]
    return complex(np.sum(window * np.conj(ideal.samples)))


def real_pulse_gain(
    profile: DelayProfile,
    spec: PulseSpec,
    max_delay_span: float = DEFAULT_DELAY_SPAN_CAP,
) -> float:
    """Energy of the phase-free combination ``sum_n delay(pulse, d_n)``.

    Discards the carrier phases entirely, isolating what pulse alignment
    alone contributes to the combining gain.
    """
    combined, _, _ = _combine(profile, spec, max_delay_span, with_phase=False)
    return float(np.dot(combined, combined))


def gain_sample(
    profile: DelayProfile,
    spec: PulseSpec,
    max_delay_span: float = DEFAULT_DELAY_SPAN_CAP,
) -> GainSample:
    """All three estimators for one profile, sharing the delayed-pulse work.

    Produces exactly the same values as calling ``real_pulse_gain``,
    ``raw_power(combined_pulse(...))`` and ``matched_similarity`` with the
    matching unit-energy pulse, but interpolates each node pulse once.
    """
    base, rows, offsets, length, center = _layout(profile, spec, max_delay_span)
    x = base.samples.real

    real_sum = _scatter(rows, offsets, length)
    complex_sum = _scatter(rows, offsets, length, np.exp(-1j * profile.phases))

    start = center - base.center_index
    window = complex_sum[start : start + x.size]
    pvr = np.sum(window * x)

    return GainSample(
        real_pulse_gain=float(np.dot(real_sum, real_sum)),
        prr=float(np.vdot(complex_sum, complex_sum).real),
        pvr_abs_sq=float(abs(pvr) ** 2),
    )


def _circulant_from_first_row(row: np.ndarray) -> np.ndarray:
    n = row.size
    shift = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return row[shift]


def dense_oracle_prr(g: CombinedPulse) -> float:
    """Literal ``trace(Q Q^H) / L`` with Q materialized as a dense matrix."""
    length = g.samples.size
    if length > _ORACLE_MAX_LEN:
        raise ValueError(f"dense oracle limited to L <= {_ORACLE_MAX_LEN}")
    q = _circulant_from_first_row(g.samples)
    return float(np.trace(q @ q.conj().T).real / length)


def dense_oracle_pvr(g: CombinedPulse, ideal: SampledPulse) -> complex:
    """Literal ``trace((Q_i Q)^H) / L`` with both circulants materialized.

    Q_i's first row is the conjugated, time-reversed ideal pulse embedded
    at the combined pulse's center.  Equals the conjugate of
    :func:`matched_similarity`.
    """
    length = g.samples.size
    if length > _ORACLE_MAX_LEN:
        raise ValueError(f"dense oracle limited to L <= {_ORACLE_MAX_LEN}")
    embedded = _embed_at_center(g, ideal)
    matched_row = np.conj(embedded[(-np.arange(length)) % length])
    q = _circulant_from_first_row(g.samples)
    qi = _circulant_from_first_row(matched_row)
    return complex(np.trace((qi @ q).conj().T) / length)
