"""Quantum and classical Fisher information for the probed Gaussian channel.

``qfi_numeric`` evaluates the Gaussian-state quantum Fisher information

    H = (1/2) Tr[(sigma^-1 sigma')^2] / (1 + mu^2)
        + d'^T sigma^-1 d' + 2 mu'^2 / (1 - mu^4)

on the pre-measurement family (state after source, tritter and channel) with
central finite differences plus one Richardson refinement.  The primes are
derivatives with respect to the channel strain.  ``qfi_closed_form`` evaluates
the matching scalar expressions, either exactly or in a named asymptotic
regime; regimes are never auto-detected.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pipeline import (InterferometerConfig, max_tritter_angle, pre_measurement_state,
                       pump_depletion, run_interferometer)
from .states import GaussianState, purity, reduce_to_modes

__all__ = [
    "RegimeError",
    "IllConditionedError",
    "MetrologyReport",
    "SQUEEZING_REGIMES",
    "MODE_MIXING_REGIMES",
    "qfi_numeric",
    "qfi_closed_form",
    "optimal_tritter_angle",
    "optimal_phases",
    "number_sum_moments",
    "heterodyne_moments",
    "number_sum_quadratic_response",
    "sensitivity_number_sum",
    "f0_closed_form",
    "fisher_from_moments",
    "metrology_report",
]

CONDITION_LIMIT = 1e12
PURE_STATE_TOL = 1e-9
LARGE_NBAR_FLOOR = 1e4
UNDEPLETED_DELTA = 0.1


class RegimeError(ValueError):
    """An asymptotic formula was requested outside its regime of validity."""


class IllConditionedError(RuntimeError):
    """The covariance matrix is too ill-conditioned to invert reliably."""


# ----------------------------------------------------------------------------
# numeric QFI
# ----------------------------------------------------------------------------

def _richardson(f, x0: float, h: float):
    """Central difference with one Richardson extrapolation level."""
    coarse = (f(x0 + h) - f(x0 - h)) / (2.0 * h)
    fine = (f(x0 + h / 2.0) - f(x0 - h / 2.0)) / h
    return (4.0 * fine - coarse) / 3.0


def qfi_numeric(config: InterferometerConfig, eps0: float = 0.0, h: float = 1e-4) -> float:
    """Quantum Fisher information of the strain, by finite differences.

    The QFI of this family is independent of the evaluation point ``eps0``
    (the channel generator is fixed), so the default evaluates at zero strain.
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    if eps0 < 0:
        raise ValueError(f"evaluation point must be nonnegative, got {eps0}")

    def d_of(e):
        return pre_measurement_state(config, e).d

    def sigma_of(e):
        return pre_measurement_state(config, e).sigma

    state = pre_measurement_state(config, eps0)
    sigma = state.sigma
    cond = np.linalg.cond(sigma)
    if cond > CONDITION_LIMIT:
        raise IllConditionedError(f"covariance condition number {cond:.3e} exceeds 1e12")
    inv = np.linalg.solve(sigma, np.eye(sigma.shape[0]))

    d_dot = _richardson(d_of, eps0, h)
    sigma_dot = _richardson(sigma_of, eps0, h)
    if not (np.all(np.isfinite(d_dot)) and np.all(np.isfinite(sigma_dot))):
        raise FloatingPointError("non-finite derivative in QFI evaluation")

    mu = purity(state)
    ratio = inv @ sigma_dot
    value = 0.5 * np.trace(ratio @ ratio) / (1.0 + mu ** 2) + d_dot @ inv @ d_dot
    if abs(1.0 - mu) >= PURE_STATE_TOL:
        # mixed family: purity varies with the strain
        mu_dot = _richardson(lambda e: purity(pre_measurement_state(config, e)), eps0, h)
        value += 2.0 * mu_dot ** 2 / (1.0 - mu ** 4)
    if not np.isfinite(value):
        raise FloatingPointError(f"QFI evaluated to {value!r}")
    return float(value)


# ----------------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------------

def _phase_args(config: InterferometerConfig):
    ch = config.channel
    if ch.kind == "squeezing":
        eta1 = np.sinh(2 * config.r) * np.cos(
            2 * config.tritter_phase - 2 * config.pump_phase
            - config.squeeze_phase + 2 * ch.phase) + np.cosh(2 * config.r)
        eta2 = np.sin(config.squeeze_phase - ch.phase) ** 2
        return eta1, eta2
    eta3 = np.sinh(2 * config.r) * np.cos(
        2 * config.tritter_phase - 2 * config.pump_phase
        + config.squeeze_phase) - np.cosh(2 * config.r)
    phi1 = np.sin(config.theta) ** 2 * np.sin(ch.phase) ** 2 - 1.0
    return eta3, phi1


def _require(cond: bool, message: str):
    if not cond:
        raise RegimeError(message)


def _check_angle(config, angle: float, name: str):
    _require(abs(config.theta - angle) < 1e-9,
             f"regime {name!r} holds at theta = {angle:.6f}, config has theta = {config.theta}")


def _check_large_nbar(config, name: str):
    _require(config.nbar >= LARGE_NBAR_FLOOR,
             f"regime {name!r} assumes nbar >= {LARGE_NBAR_FLOOR:.0e}, got {config.nbar}")


def _check_undepleted(config, name: str):
    n0, n_side = pump_depletion(config.nbar, config.r)
    gamma = n_side / n0
    if gamma > UNDEPLETED_DELTA:
        raise RegimeError(f"regime {name!r} needs an undepleted pump; side/pump ratio "
                          f"{gamma:.3g} exceeds {UNDEPLETED_DELTA}")
    # 1% headroom accepts bounds quoted at two significant digits
    theta_max = max_tritter_angle(gamma, UNDEPLETED_DELTA)
    _require(config.theta <= theta_max * 1.01,
             f"regime {name!r} holds for theta <= {theta_max:.4f}, got {config.theta}")


def _check_optimal_phases(config, name: str):
    ch = config.channel
    if ch.kind == "squeezing":
        arg = (2 * config.tritter_phase - 2 * config.pump_phase
               - config.squeeze_phase + 2 * ch.phase)
        _require(abs(1.0 - np.cos(arg)) < 1e-9 and
                 abs(1.0 - np.sin(config.squeeze_phase - ch.phase) ** 2) < 1e-9,
                 f"regime {name!r} assumes the optimal phase relations")
    else:
        arg = 2 * config.tritter_phase - 2 * config.pump_phase + config.squeeze_phase
        _require(abs(1.0 + np.cos(arg)) < 1e-9,
                 f"regime {name!r} assumes the optimal phase relation")


def _qfi_squeezing(config: InterferometerConfig, regime: str) -> float:
    b = config.channel.strength
    r, theta = config.r, config.theta
    n0, n_side = pump_depletion(config.nbar, config.r)
    eta1, eta2 = _phase_args(config)
    sh2r = np.sinh(2 * r)

    if regime == "exact":
        return (b ** 2 / 16.0) * (
            4.0 + np.sin(2 * theta) ** 2 * np.sinh(r) ** 2
            + 2.0 * (1.0 + np.cos(theta) ** 4) * eta2 * sh2r ** 2
            + n0 * (4.0 * np.sin(theta) ** 4 + eta1 * np.sin(2 * theta) ** 2))
    if regime == "theta_zero":
        _check_angle(config, 0.0, regime)
        return 0.25 * b ** 2 * (1.0 + eta2 * sh2r ** 2)
    if regime == "theta_half_pi":
        _check_angle(config, np.pi / 2, regime)
        return 0.25 * b ** 2 * (1.0 + n0 + 0.5 * eta2 * sh2r ** 2)
    if regime in ("turning_point", "turning_point_limit"):
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        _require(r > 0, f"regime {regime!r} needs r > 0")
        theta_t = optimal_tritter_angle(config.nbar, n_side)
        _require(abs(theta - theta_t) < 1e-6,
                 f"regime {regime!r} holds at theta_t = {theta_t:.6f}, got {theta}")
        if regime == "turning_point":
            return (b ** 2 / 32.0) * config.nbar * np.exp(2 * r) * (1.0 + 1.0 / np.tanh(r))
        return (b ** 2 / 8.0) * config.nbar * n_side
    if regime == "large_nbar":
        _check_large_nbar(config, regime)
        return 0.25 * b ** 2 * config.nbar * (
            np.sin(theta) ** 4 + 0.25 * np.sin(2 * theta) ** 2 * eta1)
    if regime == "large_nbar_limit":
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        _require(n_side >= 20, f"regime {regime!r} assumes n_side >> 2, got {n_side:.3g}")
        return (b ** 2 / 8.0) * np.sin(2 * theta) ** 2 * n_side * config.nbar
    if regime in ("pumped", "pumped_limit"):
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        _check_undepleted(config, regime)
        if regime == "pumped":
            return 0.25 * b ** 2 * (1.0 + n_side ** 2 + theta ** 2 * (
                n0 * np.exp(2 * r) + 0.5 * n_side - n_side ** 2))
        _require(r >= 1.0, f"regime {regime!r} assumes r >> 1, got r = {r}")
        return 0.5 * b ** 2 * theta ** 2 * n0 * n_side
    raise ValueError(f"unknown squeezing regime {regime!r}; "
                     f"choose one of {sorted(SQUEEZING_REGIMES)}")


def _qfi_mode_mixing(config: InterferometerConfig, regime: str) -> float:
    a = config.channel.strength
    r, theta = config.r, config.theta
    n0, n_side = pump_depletion(config.nbar, config.r)
    eta3, phi1 = _phase_args(config)
    sh2r = np.sinh(2 * r)
    sin2_phi = np.sin(config.channel.phase) ** 2

    if regime == "exact":
        return (a ** 2 / 8.0) * (
            (1.0 + np.cos(theta) ** 2) * sh2r ** 2
            + np.sin(theta) ** 2 * phi1 * (sh2r ** 2 - 2.0 * np.sinh(r) ** 2)
            + 2.0 * n0 * np.sin(theta) ** 2 * (
                np.sin(theta) ** 2 * sin2_phi + phi1 * eta3))
    if regime == "theta_zero":
        # printed large-N shorthand: n^2 in place of sinh^2(2r) = n(n+2)
        _check_angle(config, 0.0, regime)
        return 0.25 * a ** 2 * n_side ** 2
    if regime == "theta_half_pi_phi_half_pi":
        _check_angle(config, np.pi / 2, regime)
        _require(abs(np.sin(config.channel.phase) ** 2 - 1.0) < 1e-9,
                 f"regime {regime!r} holds at channel phase pi/2")
        return 0.25 * a ** 2 * (n0 + 0.5 * n_side ** 2)
    if regime in ("theta_half_pi_phi_zero", "theta_half_pi_phi_zero_limit"):
        _check_angle(config, np.pi / 2, regime)
        _require(abs(np.sin(config.channel.phase)) < 1e-9,
                 f"regime {regime!r} holds at channel phase 0")
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        if regime == "theta_half_pi_phi_zero":
            return 0.25 * a ** 2 * (config.nbar * np.exp(2 * r) + n_side)
        _require(r >= 1.0, f"regime {regime!r} assumes r >> 1, got r = {r}")
        return 0.5 * a ** 2 * config.nbar * n_side
    if regime == "large_nbar":
        _check_large_nbar(config, regime)
        return 0.25 * a ** 2 * config.nbar * np.sin(theta) ** 2 * (
            np.sin(theta) ** 2 * sin2_phi + phi1 * eta3)
    if regime == "large_nbar_limit":
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        _require(n_side >= 20, f"regime {regime!r} assumes n_side >> 1/2, got {n_side:.3g}")
        return 0.5 * a ** 2 * np.sin(theta) ** 2 * (
            1.0 - np.sin(theta) ** 2 * sin2_phi) * config.nbar * n_side
    if regime in ("pumped", "pumped_limit"):
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        _check_undepleted(config, regime)
        if regime == "pumped":
            return 0.25 * a ** 2 * (n_side ** 2 + theta ** 2 * (
                n0 * np.exp(2 * r) + 0.5 * n_side - n_side ** 2))
        _require(r >= 1.0, f"regime {regime!r} assumes r >> 1, got r = {r}")
        return 0.5 * a ** 2 * theta ** 2 * n0 * n_side
    raise ValueError(f"unknown mode-mixing regime {regime!r}; "
                     f"choose one of {sorted(MODE_MIXING_REGIMES)}")


SQUEEZING_REGIMES = frozenset({
    "exact", "theta_zero", "theta_half_pi", "turning_point", "turning_point_limit",
    "large_nbar", "large_nbar_limit", "pumped", "pumped_limit"})
MODE_MIXING_REGIMES = frozenset({
    "exact", "theta_zero", "theta_half_pi_phi_half_pi", "theta_half_pi_phi_zero",
    "theta_half_pi_phi_zero_limit", "large_nbar", "large_nbar_limit",
    "pumped", "pumped_limit"})


def qfi_closed_form(config: InterferometerConfig, regime: str = "exact") -> float:
    """Closed-form QFI, exact or in an explicitly named asymptotic regime.

    Raises RegimeError when the config violates the regime's assumptions
    (angle, phase relations, particle numbers); asymptotic formulas are never
    applied silently.
    """
    kind = config.channel.kind
    if kind == "squeezing":
        return _qfi_squeezing(config, regime)
    if kind == "mode_mixing":
        return _qfi_mode_mixing(config, regime)
    raise ValueError(f"no closed-form QFI for channel kind {kind!r}")


def optimal_tritter_angle(nbar: float, n_side: float, mode: str = "exact") -> float:
    """The interior turning point of the QFI over the tritter angle.

    Valid at the optimal phase relations of the squeezing channel; the
    mode-mixing information shares this turning point at channel phase pi/2
    (at other phases its maximum sits at the pi/2 boundary).  ``mode="approx"``
    uses the large-nbar form pi/4 + arcsin(1/(n + sqrt(n(n+2))))/2.
    """
    if not n_side > 0:
        raise ValueError(f"need n_side > 0, got {n_side}")
    if nbar <= n_side:
        raise ValueError(f"need nbar > n_side, got nbar={nbar}, n_side={n_side}")
    if mode == "approx":
        return np.pi / 4.0 + 0.5 * np.arcsin(1.0 / (n_side + np.sqrt(n_side * (n_side + 2.0))))
    if mode != "exact":
        raise ValueError(f"mode must be 'exact' or 'approx', got {mode!r}")
    n = n_side
    num = n * (n + 4.0) - 2.0 * nbar
    den = n * (2.0 * nbar - 3.0 * n - 1.0) + 2.0 * (nbar - n) * np.sqrt(n * (n + 2.0))
    z = num / den
    if not -1.0 <= z <= 1.0:
        raise ValueError(f"turning point undefined: arccos argument {z} outside [-1, 1]")
    return 0.5 * np.arccos(z)


def optimal_phases(kind: str, pump_phase: float = 0.0, channel_phase: float = 0.0,
                   squeeze_phase: float | None = None) -> tuple[float, float]:
    """Phase relations maximizing the QFI; returns (squeeze_phase, tritter_phase)."""
    if kind == "squeezing":
        sq = channel_phase + np.pi / 2.0
        return sq, pump_phase + sq / 2.0 - channel_phase
    if kind == "mode_mixing":
        sq = 0.0 if squeeze_phase is None else squeeze_phase
        return sq, pump_phase - sq / 2.0 + np.pi / 2.0
    raise ValueError(f"no optimal phase relation for channel kind {kind!r}")


# ----------------------------------------------------------------------------
# number-sum measurement
# ----------------------------------------------------------------------------

def number_sum_moments(state: GaussianState) -> tuple[float, float]:
    """Mean and variance of the total particle number of a Gaussian state.

    <S>   = [Tr(sigma) + d^T d - 2n] / 4
    Var S = [Tr(sigma^2) + 2 d^T sigma d - 2n] / 8
    """
    n2 = 2 * state.n_modes
    d, sigma = state.d, state.sigma
    mean = 0.25 * (np.trace(sigma) + d @ d - n2)
    var = 0.125 * (np.trace(sigma @ sigma) + 2.0 * d @ sigma @ d - n2)
    return float(mean), float(var)


def heterodyne_moments(state: GaussianState) -> tuple[float, float]:
    """Mean and variance of the particle-number difference of a two-mode state."""
    if state.n_modes != 2:
        raise ValueError(f"heterodyne signal is defined on two modes, got {state.n_modes}")
    jz = np.diag([1.0, 1.0, -1.0, -1.0])
    d, sigma = state.d, state.sigma
    sj = sigma @ jz
    mean = 0.25 * (np.trace(sj) + d @ jz @ d)
    var = 0.125 * (np.trace(sj @ sj) + 2.0 * d @ jz @ sigma @ jz @ d - 4.0)
    return float(mean), float(var)


def _side_moments(config: InterferometerConfig, eps: float) -> tuple[float, float]:
    out = run_interferometer(config, eps)
    return number_sum_moments(reduce_to_modes(out, (1, 2)))


def number_sum_quadratic_response(config: InterferometerConfig) -> tuple[float, float]:
    """Leading coefficients of the number-sum signal: <S> ~ c_mean eps^2, Var ~ c_var eps^2.

    Scalar closed forms of the small-strain side-mode moments at the
    interferometer output.  (The mode-mixing mean carries -Phi1 sinh^2 r where
    the corresponding large-print expression shows -Phi2; the Phi1 form is the
    one that matches the pipeline exactly, see the regression tests.)
    """
    ch = config.channel
    r, theta = config.r, config.theta
    n0, _ = pump_depletion(config.nbar, config.r)
    arg_sq = (0.25 * ch.strength) ** 2
    sh2r = np.sinh(2 * r)
    if ch.kind == "squeezing":
        eta1, eta2 = _phase_args(config)
        common = (n0 * eta1 + np.cosh(r) ** 2) * np.sin(2 * theta) ** 2
        burst = (1.0 + np.cos(theta) ** 4) * (sh2r ** 2 * eta2 + 1.0)
        mean_c = 0.25 * (common + 4.0 * burst)
        var_c = 0.25 * (common + 8.0 * burst)
    elif ch.kind == "mode_mixing":
        eta3, phi1 = _phase_args(config)
        s2 = np.sin(theta) ** 2
        mean_c = (s2 * (phi1 * n0 * eta3 - phi1 * np.sinh(r) ** 2
                        + (phi1 - 1.0) * sh2r ** 2) + 2.0 * sh2r ** 2)
        var_c = (phi1 * s2 * (n0 * eta3 - np.sinh(r) ** 2 + 2.0 * sh2r ** 2)
                 + 2.0 * (1.0 + np.cos(theta) ** 2) * sh2r ** 2)
    else:
        raise ValueError(f"no closed-form response for channel kind {ch.kind!r}")
    return arg_sq * mean_c, arg_sq * var_c


def sensitivity_number_sum(config: InterferometerConfig, eps0: float = 1e-3,
                           h: float = 1e-4) -> tuple[float, float]:
    """Squared sensitivity Var(S)/(d<S>/d eps)^2 and its inverse F0.

    The number-sum signal is quadratic in the strain, so its derivative
    vanishes at zero strain; evaluate at a small nonzero ``eps0`` (the F0
    ratio is strain-independent at leading order).
    """
    if eps0 == 0:
        raise ValueError("number-sum signal is stationary at zero strain; use eps0 > 0")
    d_mean = _richardson(lambda e: _side_moments(config, e)[0], eps0, h)
    var = _side_moments(config, eps0)[1]
    if not np.isfinite(d_mean) or d_mean == 0:
        raise FloatingPointError(
            "vanishing signal derivative: measurement is insensitive at this point")
    if var <= 0:
        raise FloatingPointError(f"non-positive signal variance {var!r}")
    delta_sq = var / d_mean ** 2
    return float(delta_sq), float(1.0 / delta_sq)


def f0_closed_form(config: InterferometerConfig, regime: str = "exact") -> float:
    """Closed-form F0 of the number-sum measurement.

    "exact" is the small-strain ratio (d<S>)^2/Var built from the quadratic
    response coefficients; "large_nbar" and "pumped_limit" are the printed
    asymptotic forms.
    """
    ch = config.channel
    if regime == "exact":
        mean_c, var_c = number_sum_quadratic_response(config)
        if var_c <= 0:
            raise FloatingPointError(f"non-positive variance coefficient {var_c!r}")
        return float(4.0 * mean_c ** 2 / var_c)
    n0, n_side = pump_depletion(config.nbar, config.r)
    if regime == "large_nbar":
        _check_large_nbar(config, regime)
        if ch.kind == "squeezing":
            eta1, _ = _phase_args(config)
            return (ch.strength ** 2 / 16.0) * np.sin(2 * config.theta) ** 2 \
                * eta1 * config.nbar
        if ch.kind == "mode_mixing":
            eta3, phi1 = _phase_args(config)
            return 0.25 * ch.strength ** 2 * np.sin(config.theta) ** 2 \
                * phi1 * eta3 * config.nbar
        raise ValueError(f"no closed-form F0 for channel kind {ch.kind!r}")
    if regime == "pumped_limit":
        _check_large_nbar(config, regime)
        _check_optimal_phases(config, regime)
        _check_undepleted(config, regime)
        _require(config.r >= 1.0, f"regime {regime!r} assumes r >> 1, got r = {config.r}")
        return 0.5 * ch.strength ** 2 * config.theta ** 2 * n0 * n_side
    raise ValueError(f"unknown F0 regime {regime!r}")


def fisher_from_moments(config: InterferometerConfig, eps0: float = 1e-3,
                        h: float = 1e-4) -> float:
    """Fisher information of Gaussian-distributed number-sum data:
    F = F0 + 2 (d sqrt(Var))^2 / Var.

    Valid where the signal statistics are actually Gaussian (mean signal well
    above a single particle).  Near zero strain the variance itself scales as
    eps^2, making the second term 2/eps0^2 regardless of the configuration;
    there the Gaussian model, and with it the bound F <= H, breaks down.
    """
    _, f0 = sensitivity_number_sum(config, eps0, h)
    var = _side_moments(config, eps0)[1]
    if var <= 0:
        raise FloatingPointError(f"non-positive signal variance {var!r}")
    d_sigma = _richardson(lambda e: np.sqrt(max(_side_moments(config, e)[1], 0.0)), eps0, h)
    return float(f0 + 2.0 * d_sigma ** 2 / var)


# ----------------------------------------------------------------------------
# bundled report
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class MetrologyReport:
    """One interferometer's figures of merit at a common configuration."""

    h_numeric: float
    h_closed_form: float
    f0: float
    mean_s: float
    var_s: float
    theta_t: float | None = None
    regime_labels: frozenset = frozenset()


def metrology_report(config: InterferometerConfig, eps0: float = 1e-3, h: float = 1e-4,
                     include_turning_point: bool = False,
                     regimes: tuple = ()) -> MetrologyReport:
    """Evaluate the standard set of metrology quantities for one configuration."""
    h_num = qfi_numeric(config, 0.0, h)
    h_closed = qfi_closed_form(config, "exact")
    _, f0 = sensitivity_number_sum(config, eps0, h)
    mean_s, var_s = _side_moments(config, eps0)
    theta_t = None
    if include_turning_point:
        _, n_side = pump_depletion(config.nbar, config.r)
        theta_t = optimal_tritter_angle(config.nbar, n_side)
    values = [h_num, h_closed, f0, mean_s, var_s]
    if not all(np.isfinite(v) for v in values):
        raise FloatingPointError(f"non-finite metrology output: {values!r}")
    if f0 > h_num * (1.0 + 1e-9):
        raise FloatingPointError(
            f"moment sensitivity F0 = {f0!r} exceeds the QFI {h_num!r}: numerics corrupted")
    return MetrologyReport(h_num, h_closed, f0, mean_s, var_s, theta_t,
                           frozenset(regimes))
