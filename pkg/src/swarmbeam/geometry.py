"""Swarm geometry: random node positions and pointing-delay calculations.

Conventions used throughout the package:

* ``position_stddev`` is the standard deviation of each Cartesian
  component of a node position (not the radial distance).  A radial
  interpretation would rescale every gain curve, so the per-component
  convention is fixed here and documented prominently.
* The reference transmit direction is the +y axis.  A pointing angle
  ``(theta, phi)`` rotates that reference; ``theta = phi = 0`` is
  boresight.
* Residual delays follow ``delta_n = <p_n, u_obs - u_steer> / c``.  The
  sign is the negative of the plane-to-plane range difference, but node
  positions are zero-mean symmetric, so every statistic computed from the
  delays is unaffected.  The bulk propagation delay ``d / c`` common to
  all nodes is dropped from the combining model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Exact speed of light, m/s.
SPEED_OF_LIGHT = 299_792_458.0

_DISTRIBUTIONS = ("gaussian", "truncated_gaussian")


@dataclass(frozen=True)
class SwarmConfig:
    """Statistical description of an N-node swarm.

    Parameters
    ----------
    node_count : int
        Number of nodes N, at least 1.
    position_stddev : float
        Per-component position standard deviation in meters.
    distribution : str
        ``"gaussian"`` (unbounded, the default) or ``"truncated_gaussian"``
        (rejection-resampled to ``|p| <= bound_radius``).
    bound_radius : float, optional
        Spherical bound in meters; required for ``truncated_gaussian``.
    seed : int
        Seed for the position RNG (PCG64).
    """

    node_count: int
    position_stddev: float
    distribution: str = "gaussian"
    bound_radius: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.node_count < 1:
            raise ValueError("node_count must be >= 1")
        if not self.position_stddev > 0.0:
            raise ValueError("position_stddev must be > 0")
        if self.distribution not in _DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {_DISTRIBUTIONS}")
        if self.distribution == "truncated_gaussian":
            if self.bound_radius is None or not self.bound_radius > 0.0:
                raise ValueError("truncated_gaussian requires bound_radius > 0")


@dataclass(frozen=True)
class PointingAngle:
    """Steering or observation direction, both angles in radians."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        for name, value in (("theta", self.theta), ("phi", self.phi)):
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            if abs(value) > math.pi:
                raise ValueError(f"{name} must lie in [-pi, pi]")


@dataclass(frozen=True)
class DelayProfile:
    """Per-node residual delays and the carrier phases they induce.

    ``phases[n]`` is always ``2*pi*carrier_frequency*delays[n]``; the
    constructor rejects profiles where the two disagree, so phases can
    never drift from the delays that caused them.
    """

    delays: np.ndarray
    phases: np.ndarray
    carrier_frequency: float

    def __post_init__(self):
        delays = _frozen_array(self.delays)
        phases = _frozen_array(self.phases)
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "phases", phases)
        if delays.shape != phases.shape or delays.ndim != 1:
            raise ValueError("delays and phases must be 1-D arrays of equal length")
        if not self.carrier_frequency > 0.0:
            raise ValueError("carrier_frequency must be > 0")
        mismatch = np.abs(phases - 2.0 * np.pi * self.carrier_frequency * delays)
        if mismatch.size and mismatch.max() > 1e-9:
            raise ValueError("phases must equal 2*pi*carrier_frequency*delays")

    @property
    def node_count(self) -> int:
        return self.delays.size


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def sample_positions(config: SwarmConfig) -> np.ndarray:
    """Draw one swarm realization as an (N, 3) array of positions in meters.

    Components are iid zero-mean Gaussian with standard deviation
    ``config.position_stddev``.  For ``truncated_gaussian``, vectors whose
    norm exceeds ``bound_radius`` are rejection-resampled.  The generator
    is numpy's PCG64 seeded with ``config.seed``, so repeated calls with
    the same config are bit-identical.
    """
    rng = np.random.default_rng(config.seed)
    positions = rng.normal(0.0, config.position_stddev, size=(config.node_count, 3))
    if config.distribution == "truncated_gaussian":
        outside = np.linalg.norm(positions, axis=1) > config.bound_radius
        while np.any(outside):
            count = int(outside.sum())
            positions[outside] = rng.normal(
                0.0, config.position_stddev, size=(count, 3)
            )
            outside = np.linalg.norm(positions, axis=1) > config.bound_radius
    return positions


def rotation_matrix(angle: PointingAngle) -> np.ndarray:
    """3x3 rotation taking the reference +y direction to ``(theta, phi)``."""
    st, ct = math.sin(angle.theta), math.cos(angle.theta)
    sp, cp = math.sin(angle.phi), math.cos(angle.phi)
    return np.array(
        [
            [ct, -cp * st, sp * st],
            [st, cp * ct, -ct * sp],
            [0.0, sp, cp],
        ]
    )


def pointing_vector(angle: PointingAngle) -> np.ndarray:
    """Unit vector of the ``(theta, phi)`` direction.

    Equals ``rotation_matrix(angle) @ [0, 1, 0]``, written in closed form.
    """
    st, ct = math.sin(angle.theta), math.cos(angle.theta)
    sp, cp = math.sin(angle.phi), math.cos(angle.phi)
    return np.array([-cp * st, cp * ct, sp])


def plane_distance(position, distance: float, angle: PointingAngle) -> float:
    """Distance from ``position`` to the plane normal to ``angle`` at ``distance``.

    Provided for completeness and testing; the combining model itself works
    with range *differences* only.
    """
    if not distance > 0.0:
        raise ValueError("distance must be > 0")
    position = np.asarray(position, dtype=float)
    return float(distance - position @ pointing_vector(angle))


def delay_profile(
    positions,
    steer: PointingAngle,
    observe: PointingAngle,
    carrier_frequency: float,
) -> DelayProfile:
    """Residual per-node delays seen at ``observe`` after precompensating for ``steer``.

    ``delta_n = <p_n, u_observe - u_steer> / c`` and
    ``psi_n = 2*pi*carrier_frequency*delta_n``.  When the two directions
    coincide the precompensation is perfect and the profile is exactly zero.
    """
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 2 or positions.shape[1] != 3 or positions.shape[0] < 1:
        raise ValueError("positions must be a nonempty (N, 3) array")
    if not carrier_frequency > 0.0:
        raise ValueError("carrier_frequency must be > 0")
    direction_diff = pointing_vector(observe) - pointing_vector(steer)
    delays = positions @ direction_diff / SPEED_OF_LIGHT
    phases = 2.0 * np.pi * carrier_frequency * delays
    return DelayProfile(delays=delays, phases=phases, carrier_frequency=carrier_frequency)


def analytic_delay_std(angle: PointingAngle, position_stddev: float) -> float:
    """Closed-form standard deviation of the per-node path-length difference.

    For iid per-component position noise the path difference between the
    steered and observed planes has variance
    ``2 * (1 - cos(phi)*cos(theta)) * position_stddev**2``; the square root
    is returned in meters.
    """
    if not position_stddev > 0.0:
        raise ValueError("position_stddev must be > 0")
    spread = 2.0 * (1.0 - math.cos(angle.phi) * math.cos(angle.theta))
    return position_stddev * math.sqrt(spread)
