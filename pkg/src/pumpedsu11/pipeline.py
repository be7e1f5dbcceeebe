"""Composition of the full interferometer and undepleted-pump bookkeeping.

The instrument is source squeezer -> tritter -> probed channel -> reverse
tritter -> reverse squeezer.  Between the source squeezer and the tritter the
pump amplitude is rescaled from sqrt(nbar) to sqrt(n0) with
n0 = nbar - 2 sinh^2 r, so that total particle number is conserved.  That
replacement is a modeling step, not a symplectic map, which is why it lives
here and not in :mod:`channels`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelSpec, pumped_two_mode_squeezer, tritter
from .states import GaussianState, SymplecticOp, apply_symplectic, pumped_input_state

__all__ = [
    "InterferometerConfig",
    "PumpDepletedError",
    "pump_depletion",
    "build_half_pipelines",
    "pre_measurement_state",
    "run_interferometer",
    "particle_numbers_after_tritter",
    "max_tritter_angle",
]


class PumpDepletedError(ValueError):
    """The source squeezer would use more particles than the pump carries."""


@dataclass(frozen=True)
class InterferometerConfig:
    """All physical parameters of one interferometer instance.

    Attributes:
        nbar: total input particle number.
        pump_phase: phase of the pump coherent amplitude.
        r: source two-mode squeezing parameter.
        squeeze_phase: source squeezing phase.
        theta: tritter angle, in [0, pi/2].
        tritter_phase: tritter phase.
        channel: the probed Gaussian channel.
    """

    nbar: float
    r: float
    theta: float
    channel: ChannelSpec
    pump_phase: float = 0.0
    squeeze_phase: float = 0.0
    tritter_phase: float = 0.0

    def __post_init__(self):
        pump_depletion(self.nbar, self.r)  # raises if the pump cannot dominate
        if not 0.0 <= self.theta <= np.pi / 2:
            raise ValueError(f"tritter angle must lie in [0, pi/2], got {self.theta}")


def pump_depletion(nbar: float, r: float) -> tuple[float, float]:
    """Split the input number into pump and side-mode populations.

    Returns (n0, n_side) with n_side = 2 sinh^2 r and n0 = nbar - n_side, so
    that n0 + n_side = nbar exactly.
    """
    n_side = 2.0 * np.sinh(r) ** 2
    n0 = nbar - n_side
    if n0 <= 0:
        raise PumpDepletedError(
            f"pump depleted: source squeezing needs {n_side:.6g} particles "
            f"but only {nbar:.6g} are available")
    return n0, n_side


def build_half_pipelines(config: InterferometerConfig) -> tuple[SymplecticOp, SymplecticOp]:
    """The forward and reverse halves (S_plus, S_minus), with S_minus S_plus = I."""
    sq = pumped_two_mode_squeezer(config.r, config.squeeze_phase)
    tr = tritter(config.theta, config.tritter_phase)
    s_plus = tr @ sq
    s_minus = pumped_two_mode_squeezer(-config.r, config.squeeze_phase) \
        @ tritter(-config.theta, config.tritter_phase)
    return s_plus, s_minus


def _input_after_source(config: InterferometerConfig) -> GaussianState:
    # sigma carries the source squeezer; d carries the depleted amplitude sqrt(n0)
    n0, _ = pump_depletion(config.nbar, config.r)
    seeded = pumped_input_state(n0, config.pump_phase)
    sq = pumped_two_mode_squeezer(config.r, config.squeeze_phase)
    sigma = sq.matrix @ seeded.sigma @ sq.matrix.T
    return GaussianState(3, seeded.d, 0.5 * (sigma + sigma.T))


def pre_measurement_state(config: InterferometerConfig,
                          epsilon: float | None = None) -> GaussianState:
    """State after source, tritter and probed channel (no return path).

    This is the family whose quantum Fisher information bounds the estimation
    of the channel strain.
    """
    state = _input_after_source(config)
    state = apply_symplectic(state, tritter(config.theta, config.tritter_phase))
    return apply_symplectic(state, config.channel.three_mode(epsilon))


def run_interferometer(config: InterferometerConfig,
                       epsilon: float | None = None) -> GaussianState:
    """Full three-mode output state, including the reverse tritter and squeezer."""
    state = pre_measurement_state(config, epsilon)
    state = apply_symplectic(state, tritter(-config.theta, config.tritter_phase))
    return apply_symplectic(
        state, pumped_two_mode_squeezer(-config.r, config.squeeze_phase))


def particle_numbers_after_tritter(n0: float, n_side: float,
                                   theta: float) -> tuple[float, float]:
    """Pump and side-mode populations after the tritter stage.

    n0(theta) = n0 cos^2(theta) + n/2 sin^2(theta);
    n(theta)  = n0 sin^2(theta) + n/2 (1 + cos^2(theta)).  The sum is conserved.
    """
    if n0 < 0 or n_side < 0:
        raise ValueError("populations must be nonnegative")
    c2, s2 = np.cos(theta) ** 2, np.sin(theta) ** 2
    pump = n0 * c2 + 0.5 * n_side * s2
    side = n0 * s2 + 0.5 * n_side * (1.0 + c2)
    return pump, side


def max_tritter_angle(gamma: float, delta: float) -> float:
    """Largest tritter angle keeping the pump relatively undepleted.

    ``gamma`` is the initial side/pump population ratio and ``delta`` the
    largest ratio tolerated after the tritter.  At the returned angle the
    post-tritter ratio equals delta exactly.
    """
    if not 0.0 <= gamma <= delta:
        raise ValueError(f"need 0 <= gamma <= delta, got gamma={gamma}, delta={delta}")
    if delta >= 1.0:
        raise ValueError(f"delta must be small compared to 1, got {delta}")
    z = (delta * gamma + 2.0 * delta - 3.0 * gamma - 2.0) \
        / (delta * gamma - 2.0 * delta + gamma - 2.0)
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"angle bound undefined: arccos argument {z} outside [-1, 1]")
    return 0.5 * np.arccos(z)
