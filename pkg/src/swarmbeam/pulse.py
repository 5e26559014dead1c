"""Unit-energy SRRC pulse synthesis and time-domain fractional delays.

Delays are realized in the time domain: the integer part as an exact
index shift, the fractional part by natural cubic-spline interpolation
(the spline is built over the pulse extended with zero knots on both
sides, so tap values near the truncation edges are treated like any
others).  Wideband behavior depends on applying the full delay to the
baseband pulse in addition to the carrier-phase rotation, never as a
phase-only approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Grid points that land exactly on a removable singularity of the SRRC
# closed form are detected within this tolerance and filled with the
# analytic limit.
_SINGULARITY_TOL = 1e-8

# Zero knots added per side before building the interpolation spline; the
# natural boundary condition's influence decays by ~0.27 per knot, so 8
# knots make the spline independent of the buffer size around the pulse.
_SPLINE_PAD = 8


@dataclass(frozen=True)
class PulseSpec:
    """Parameters of a square-root raised-cosine shaping pulse.

    ``baud_rate`` is the symbol rate; occupied bandwidth is
    ``baud_rate * (1 + rolloff)``.  ``tap_count`` counts samples at the
    oversampled rate and must be odd so the pulse has a center tap.
    """

    baud_rate: float
    rolloff: float
    oversampling: int
    tap_count: int
    carrier_frequency: float

    def __post_init__(self):
        if not self.baud_rate > 0.0:
            raise ValueError("baud_rate must be > 0")
        if not 0.0 < self.rolloff <= 1.0:
            raise ValueError("rolloff must lie in (0, 1]")
        if self.oversampling < 2:
            raise ValueError("oversampling must be >= 2")
        if self.tap_count < 1 or self.tap_count % 2 == 0:
            raise ValueError("tap_count must be odd and positive")
        if not self.carrier_frequency > 0.0:
            raise ValueError("carrier_frequency must be > 0")

    @property
    def sample_rate(self) -> float:
        return self.baud_rate * self.oversampling


@dataclass(frozen=True)
class SampledPulse:
    """A discretized pulse: complex samples, their rate, and the t = 0 tap.

    Buffers are immutable once created (the sample array is marked
    read-only), so pulses can be shared freely across threads.
    """

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
        energy = float(np.vdot(samples, samples).real)
        if not (math.isfinite(energy) and energy > 0.0):
            raise ValueError("pulse energy must be finite and positive")

    @property
    def energy(self) -> float:
        return float(np.vdot(self.samples, self.samples).real)

    def __len__(self) -> int:
        return self.samples.size


def _srrc_amplitude(tau: np.ndarray, rolloff: float) -> np.ndarray:
    """SRRC impulse response at times ``tau`` (in symbol periods), unnormalized."""
    tau = np.asarray(tau, dtype=float)
    h = np.empty_like(tau)

    at_zero = np.abs(tau) < _SINGULARITY_TOL
    scaled = 4.0 * rolloff * tau
    at_quarter = np.abs(np.abs(scaled) - 1.0) < _SINGULARITY_TOL
    regular = ~(at_zero | at_quarter)

    h[at_zero] = 1.0 - rolloff + 4.0 * rolloff / math.pi

    q = math.pi / (4.0 * rolloff)
    h[at_quarter] = (rolloff / math.sqrt(2.0)) * (
        (1.0 + 2.0 / math.pi) * math.sin(q) + (1.0 - 2.0 / math.pi) * math.cos(q)
    )

    tr = tau[regular]
    num = np.sin(math.pi * tr * (1.0 - rolloff)) + 4.0 * rolloff * tr * np.cos(
        math.pi * tr * (1.0 + rolloff)
    )
    den = math.pi * tr * (1.0 - (4.0 * rolloff * tr) ** 2)
    h[regular] = num / den
    return h


def srrc_taps(spec: PulseSpec) -> SampledPulse:
    """Unit-energy SRRC pulse sampled at ``spec.sample_rate``.

    The response is truncated to ``tap_count`` taps centered on the peak
    and normalized so the sample energy is exactly 1.  The removable
    singularities of the closed form (t = 0 and |4*rolloff*t/T| = 1) are
    filled with their analytic limits.  The positive-time half is mirrored
    onto the negative half, so the result is symmetric to the bit.
    """
    half = spec.tap_count // 2
    tau_pos = np.arange(half + 1) / spec.oversampling
    h_pos = _srrc_amplitude(tau_pos, spec.rolloff)
    h = np.concatenate([h_pos[:0:-1], h_pos])
    h = h / math.sqrt(float(np.dot(h, h)))
    return SampledPulse(samples=h, sample_rate=spec.sample_rate, center_index=half)


def sinc_taps(spec: PulseSpec) -> SampledPulse:
    """Truncated unit-energy sinc pulse; debugging stand-in for the SRRC."""
    half = spec.tap_count // 2
    tau_pos = np.arange(half + 1) / spec.oversampling
    h_pos = np.sinc(tau_pos)
    h = np.concatenate([h_pos[:0:-1], h_pos])
    h = h / math.sqrt(float(np.dot(h, h)))
    return SampledPulse(samples=h, sample_rate=spec.sample_rate, center_index=half)


def spline_second_derivatives(values: np.ndarray) -> np.ndarray:
    """Natural-spline second derivatives of ``values`` on a unit-spaced grid.

    Solves the tridiagonal system ``m[i-1] + 4 m[i] + m[i+1] =
    6 (y[i-1] - 2 y[i] + y[i+1])`` with ``m[0] = m[-1] = 0`` by the Thomas
    algorithm.
    """
    n = values.size
    out = np.zeros(n, dtype=values.dtype)
    if n < 3:
        return out
    rhs = 6.0 * (values[:-2] - 2.0 * values[1:-1] + values[2:])
    k = rhs.size
    upper = np.empty(k)
    work = np.empty(k, dtype=rhs.dtype)
    upper[0] = 0.25
    work[0] = rhs[0] / 4.0
    for i in range(1, k):
        denom = 4.0 - upper[i - 1]
        upper[i] = 1.0 / denom
        work[i] = (rhs[i] - work[i - 1]) / denom
    for i in range(k - 2, -1, -1):
        work[i] = work[i] - upper[i] * work[i + 1]
    out[1:-1] = work
    return out


def spline_delay_weights(frac):
    """Spline evaluation weights for resampling at position ``index - frac``.

    ``frac`` may be a scalar or array in [0, 1).  Returns the four weights
    applied to ``x[k-1], x[k], m[k-1], m[k]`` where ``m`` holds the spline
    second derivatives; at ``frac == 0`` they reduce to ``(0, 1, 0, 0)``
    exactly, so integer delays pass samples through unchanged.
    """
    mu = np.asarray(frac, dtype=float)
    om = 1.0 - mu
    return mu, om, (mu * mu * mu - mu) / 6.0, (om * om * om - om) / 6.0


def build_interpolant(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Padded knot values and second derivatives for spline resampling.

    Both arrays carry one extra zero at each end so a resampled value at
    knot position ``k`` (original sample ``k`` at array index
    ``k + _SPLINE_PAD + 1``) can always read its left neighbor.
    """
    padding = np.zeros(_SPLINE_PAD, dtype=samples.dtype)
    knots = np.concatenate([padding, samples, padding])
    derivs = spline_second_derivatives(knots)
    edge = np.zeros(1, dtype=knots.dtype)
    return (
        np.concatenate([edge, knots, edge]),
        np.concatenate([edge, derivs, edge]),
    )


def fractional_delay(pulse: SampledPulse, delay_samples: float) -> SampledPulse:
    """Delay a pulse by a possibly fractional number of samples.

    The integer part is an exact index shift; the fractional part is
    evaluated from the natural cubic spline through the pulse samples.
    The output buffer gains ``ceil(|delay|) + 2`` guard samples plus room
    for the spline's zero-padding tails on each side, and ``center_index``
    moves with the padding, so the represented t = 0 instant is unchanged
    and delayed pulses remain alignable on a common time axis.  A delay of
    exactly 0 returns the input unchanged.
    """
    d = float(delay_samples)
    if d == 0.0:
        return pulse
    n_int = math.floor(d)
    mu = d - n_int
    size = pulse.samples.size
    pad = math.ceil(abs(d)) + 2 + _SPLINE_PAD
    out = np.zeros(size + 2 * pad, dtype=np.complex128)

    if mu == 0.0:
        out[pad + n_int : pad + n_int + size] = pulse.samples
    else:
        knots, derivs = build_interpolant(pulse.samples)
        wx0, wx1, wm0, wm1 = spline_delay_weights(mu)
        n = knots.size - 2
        resampled = (
            wx0 * knots[0 : n + 1]
            + wx1 * knots[1 : n + 2]
            + wm0 * derivs[0 : n + 1]
            + wm1 * derivs[1 : n + 2]
        )
        start = pad - _SPLINE_PAD + n_int
        out[start : start + n + 1] = resampled

    return SampledPulse(
        samples=out,
        sample_rate=pulse.sample_rate,
        center_index=pulse.center_index + pad,
    )


def apply_phase(pulse: SampledPulse, phase: float) -> SampledPulse:
    """Rotate every sample by ``exp(-1j * phase)`` (received-signal sign)."""
    return SampledPulse(
        samples=pulse.samples * np.exp(-1j * phase),
        sample_rate=pulse.sample_rate,
        center_index=pulse.center_index,
    )
