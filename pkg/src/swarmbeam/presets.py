"""Canned experiment configurations for the six reference gain sweeps.

All presets share the SRRC shaping parameters (roll-off 0.2, oversampling
4, 41 taps, 20 GHz carrier), 200 averaging repetitions, phi = 0 and the
default log-spaced angle grid; they differ in baud rate, node count and
position spread:

==========  ==========  ======  =================
preset      baud rate   nodes   position std-dev
==========  ==========  ======  =================
fig3        500 MHz     8       500 m
fig4        500 MHz     16      500 m
fig5        500 MHz     8       1000 m
fig6        500 MHz     16      1000 m
fig7        50 MHz      16      500 m
fig8        500 MHz     256     500 m
==========  ==========  ======  =================
"""

from __future__ import annotations

import numpy as np

from .experiment import ExperimentConfig, default_theta_grid
from .geometry import SwarmConfig
from .pulse import PulseSpec

DEFAULT_SEED = 42

#: (baud_rate_hz, node_count, position_stddev_m) per preset.
PRESET_PARAMS: dict[str, tuple[float, int, float]] = {
    "fig3": (500e6, 8, 500.0),
    "fig4": (500e6, 16, 500.0),
    "fig5": (500e6, 8, 1000.0),
    "fig6": (500e6, 16, 1000.0),
    "fig7": (50e6, 16, 500.0),
    "fig8": (500e6, 256, 500.0),
}

PRESET_ROLLOFF = 0.2
PRESET_OVERSAMPLING = 4
PRESET_TAP_COUNT = 41
PRESET_CARRIER_HZ = 20e9
PRESET_REALIZATIONS = 200


def preset_config(
    name: str,
    master_seed: int = DEFAULT_SEED,
    realizations: int = PRESET_REALIZATIONS,
    theta_grid: np.ndarray | None = None,
) -> ExperimentConfig:
    """Build the full experiment config for one preset name."""
    if name not in PRESET_PARAMS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESET_PARAMS)}")
    baud, nodes, stddev = PRESET_PARAMS[name]
    if theta_grid is None:
        theta_grid = default_theta_grid()
    return ExperimentConfig(
        swarm=SwarmConfig(node_count=nodes, position_stddev=stddev),
        pulse=PulseSpec(
            baud_rate=baud,
            rolloff=PRESET_ROLLOFF,
            oversampling=PRESET_OVERSAMPLING,
            tap_count=PRESET_TAP_COUNT,
            carrier_frequency=PRESET_CARRIER_HZ,
        ),
        theta_grid=theta_grid,
        phi=0.0,
        realizations=realizations,
        master_seed=master_seed,
    )
