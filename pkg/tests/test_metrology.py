import numpy as np
import pytest

from pumpedsu11 import (ChannelSpec, GaussianState, InterferometerConfig, RegimeError,
                        apply_symplectic, f0_closed_form, fisher_from_moments,
                        heterodyne_moments, metrology_report, number_sum_moments,
                        number_sum_quadratic_response, optimal_phases,
                        optimal_tritter_angle, qfi_closed_form, qfi_numeric,
                        reduce_to_modes, run_interferometer, sensitivity_number_sum,
                        squeezing_channel, vacuum_state)
from pumpedsu11 import fock
from conftest import random_config


def _config(kind, nbar, r, theta, channel_phase=0.0, optimal=True, strength=1.0, **kw):
    if optimal:
        sq, tp = optimal_phases(kind, kw.get("pump_phase", 0.0), channel_phase)
        kw.setdefault("squeeze_phase", sq)
        kw.setdefault("tritter_phase", tp)
    return InterferometerConfig(nbar=nbar, r=r, theta=theta,
                                channel=ChannelSpec(kind, strength, channel_phase), **kw)


# ---------------------------------------------------------------------------
# numeric QFI
# ---------------------------------------------------------------------------

def test_qfi_vacuum_probe_squeezing_channel():
    cfg = _config("squeezing", nbar=1e-12, r=0.0, theta=0.0, optimal=False)
    assert qfi_numeric(cfg) == pytest.approx(0.25, rel=1e-9)


def test_qfi_bare_su11_squeezing_channel():
    # theta = 0, r = 1, optimal phases: H = (1 + sinh^2 2)/4
    cfg = _config("squeezing", nbar=100.0, r=1.0, theta=0.0)
    assert qfi_numeric(cfg) == pytest.approx(3.5385291045020604, rel=1e-9)
    assert qfi_closed_form(cfg, "theta_zero") == pytest.approx(3.5385291045020604, rel=1e-12)


def test_qfi_matches_fock_generator_variance():
    cfg = _config("squeezing", nbar=4.0, r=0.5, theta=0.4, channel_phase=0.6,
                  optimal=False, squeeze_phase=1.1, tritter_phase=0.8, pump_phase=0.2)
    psi, _ = fock.pipeline_state_fock(4.0, 0.2, 0.5, 1.1, 0.4, 0.8, 25)
    gen = fock.channel_generator(fock.FockSpace(3, 25), "squeezing", 1.0, 0.6, (1, 2))
    oracle = fock.generator_variance(psi, gen)
    assert qfi_numeric(cfg) == pytest.approx(oracle, rel=1e-3)


def test_phase_channel_qfi_matches_fock_oracle():
    cfg = InterferometerConfig(nbar=3.0, r=0.4, theta=0.5,
                               channel=ChannelSpec("phase", 1.0),
                               pump_phase=0.2, squeeze_phase=1.1, tritter_phase=0.8)
    psi, leak = fock.pipeline_state_fock(3.0, 0.2, 0.4, 1.1, 0.5, 0.8, 25)
    gen = fock.channel_generator(fock.FockSpace(3, 25), "phase", 1.0, 0.0, (1, 2))
    assert leak < 1e-6
    assert qfi_numeric(cfg) == pytest.approx(fock.generator_variance(psi, gen), rel=1e-6)


def test_mode_mixing_shares_turning_point_at_phase_half_pi():
    nbar, r = 1e6, 2.0
    theta_t = optimal_tritter_angle(nbar, 2.0 * np.sinh(r) ** 2)

    def h_of(theta):
        return qfi_closed_form(_config("mode_mixing", nbar=nbar, r=r,
                                       theta=theta, channel_phase=np.pi / 2))

    step = 1e-5
    slope = (h_of(theta_t + step) - h_of(theta_t - step)) / (2 * step)
    assert abs(slope) < 1e-6 * h_of(theta_t)


def test_qfi_independent_of_evaluation_point(rng):
    cfg = random_config(rng)
    values = [qfi_numeric(cfg, eps0=e) for e in (0.0, 0.01, 0.1)]
    assert max(values) - min(values) < 1e-6 * values[0]


def test_qfi_rejects_bad_step():
    cfg = _config("squeezing", nbar=100.0, r=0.5, theta=0.2)
    with pytest.raises(ValueError):
        qfi_numeric(cfg, h=0.0)
    with pytest.raises(ValueError):
        qfi_numeric(cfg, eps0=-0.1)


# ---------------------------------------------------------------------------
# closed forms and regimes
# ---------------------------------------------------------------------------

def test_exact_closed_form_matches_numeric(rng):
    for _ in range(40):
        cfg = random_config(rng)
        assert qfi_closed_form(cfg) == pytest.approx(qfi_numeric(cfg), rel=1e-6)


def test_theta_zero_regime_is_algebraic_limit(rng):
    for _ in range(50):
        cfg = random_config(rng)
        at_zero = InterferometerConfig(
            nbar=cfg.nbar, r=cfg.r, theta=0.0, channel=cfg.channel,
            pump_phase=cfg.pump_phase, squeeze_phase=cfg.squeeze_phase,
            tritter_phase=cfg.tritter_phase)
        regime = "theta_zero"
        exact = qfi_closed_form(at_zero, "exact")
        if cfg.channel.kind == "squeezing":
            assert qfi_closed_form(at_zero, regime) == pytest.approx(exact, rel=1e-12)
        else:
            # printed shorthand uses n^2 in place of sinh^2(2r) = n(n + 2)
            n = 2.0 * np.sinh(cfg.r) ** 2
            assert qfi_closed_form(at_zero, regime) == pytest.approx(
                0.25 * cfg.channel.strength ** 2 * n ** 2, rel=1e-12)
            assert exact == pytest.approx(
                0.25 * cfg.channel.strength ** 2 * np.sinh(2 * cfg.r) ** 2, rel=1e-12)


def test_mode_mixing_theta_zero_printed_value():
    cfg = _config("mode_mixing", nbar=100.0, r=1.0, theta=0.0)
    assert qfi_closed_form(cfg, "theta_zero") == pytest.approx(1.9074312589602445, rel=1e-12)


def test_pumped_limit_reference_value():
    # B = 1, theta^2 = 0.094, pump 1e6, r = 2: H ~ theta^2 n0 n / 2 = 1.2365e6
    n = 2.0 * np.sinh(2.0) ** 2
    cfg = _config("squeezing", nbar=1e6 + n, r=2.0, theta=np.sqrt(0.094))
    value = qfi_closed_form(cfg, "pumped_limit")
    assert value == pytest.approx(0.5 * 0.094 * 1e6 * n, rel=1e-12)
    assert value == pytest.approx(1.2365e6, rel=1e-3)


def test_regime_misuse_raises():
    cfg = _config("squeezing", nbar=100.0, r=1.0, theta=0.3)
    with pytest.raises(RegimeError):
        qfi_closed_form(cfg, "theta_zero")        # wrong angle
    with pytest.raises(RegimeError):
        qfi_closed_form(cfg, "large_nbar")        # nbar too small
    big = _config("squeezing", nbar=1e6, r=1.0, theta=1.2)
    with pytest.raises(RegimeError):
        qfi_closed_form(big, "pumped")            # beyond the undepleted bound
    skewed = _config("squeezing", nbar=1e6, r=1.0, theta=0.1, optimal=False,
                     squeeze_phase=0.3, tritter_phase=2.0)
    with pytest.raises(RegimeError):
        qfi_closed_form(skewed, "pumped")         # non-optimal phases
    with pytest.raises(ValueError):
        qfi_closed_form(cfg, "no_such_regime")
    phase_cfg = InterferometerConfig(nbar=100.0, r=0.5, theta=0.2,
                                     channel=ChannelSpec("phase", 1.0))
    with pytest.raises(ValueError):
        qfi_closed_form(phase_cfg)


def test_pumped_beats_bare_su11(rng):
    # with a dominant pump, opening the tritter can only help
    for kind in ("squeezing", "mode_mixing"):
        for _ in range(10):
            r = rng.uniform(0.5, 2.0)
            nbar = np.exp(rng.uniform(np.log(1e4), np.log(1e6)))
            theta = rng.uniform(0.02, 0.3)
            opened = _config(kind, nbar=nbar, r=r, theta=theta)
            closed = _config(kind, nbar=nbar, r=r, theta=0.0)
            assert qfi_closed_form(opened) >= qfi_closed_form(closed) * (1 - 1e-9)


# ---------------------------------------------------------------------------
# turning points
# ---------------------------------------------------------------------------

def test_turning_point_against_numeric_maximization():
    # frozen argmax of the exact closed form over theta (scipy bounded search)
    assert optimal_tritter_angle(1e6, 26.308232836016483) == pytest.approx(
        0.7947239697900003, abs=1e-5)
    assert optimal_tritter_angle(1e6, 26.308232836016483, mode="approx") == pytest.approx(
        0.7947, abs=1e-4)


@pytest.mark.parametrize("n_side", [20.0, 26.308232836016483, 100.0])
def test_turning_point_exact_vs_approx(n_side):
    exact = optimal_tritter_angle(1e6, n_side)
    approx = optimal_tritter_angle(1e6, n_side, mode="approx")
    assert abs(exact - approx) < 1e-4


def test_turning_point_derivative_vanishes():
    nbar, r = 1e6, 2.0
    n_side = 2.0 * np.sinh(r) ** 2
    theta_t = optimal_tritter_angle(nbar, n_side)

    def h_of(theta):
        return qfi_closed_form(_config("squeezing", nbar=nbar, r=r, theta=theta))

    step = 1e-5
    slope = (h_of(theta_t + step) - h_of(theta_t - step)) / (2 * step)
    assert abs(slope) < 1e-6 * h_of(theta_t)


def test_turning_point_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        optimal_tritter_angle(10.0, 0.0)
    with pytest.raises(ValueError):
        optimal_tritter_angle(10.0, 20.0)


# ---------------------------------------------------------------------------
# number-sum and heterodyne moments
# ---------------------------------------------------------------------------

def test_number_sum_moments_vacuum():
    assert number_sum_moments(vacuum_state(2)) == (0.0, 0.0)


def test_number_sum_moments_match_fock_oracle():
    psi, leak = fock.prepare_state_fock([fock.TwoModeSqueeze((0, 1), 1.0, 0.0)], 30)
    oracle_mean, oracle_var = fock.number_moments_fock(psi, 30, 2)
    assert leak < 1e-6
    state = apply_symplectic(vacuum_state(2), squeezing_channel(1.0, 0.0))
    mean, var = number_sum_moments(state)
    assert mean == pytest.approx(oracle_mean, rel=1e-6)
    # the n^2 weighting amplifies the truncated tail; variance agrees less tightly
    assert var == pytest.approx(oracle_var, rel=1e-4)
    assert mean == pytest.approx(2.0 * np.sinh(1.0) ** 2, rel=1e-12)
    assert var == pytest.approx(np.sinh(2.0) ** 2, rel=1e-12)


def test_number_sum_moments_coherent_side_mode():
    d = np.array([4.0, 0.0, 0.0, 0.0])
    state = GaussianState(2, d, np.eye(4))
    mean, var = number_sum_moments(state)
    assert mean == pytest.approx(4.0, rel=1e-14)
    assert var == pytest.approx(4.0, rel=1e-14)  # Poissonian


def test_heterodyne_moments_basics():
    assert heterodyne_moments(vacuum_state(2)) == (0.0, 0.0)
    coherent = GaussianState(2, np.array([4.0, 0.0, 0.0, 0.0]), np.eye(4))
    assert heterodyne_moments(coherent)[0] == pytest.approx(4.0, rel=1e-14)
    squeezed = apply_symplectic(vacuum_state(2), squeezing_channel(0.8, 0.4))
    mean, _ = heterodyne_moments(squeezed)
    assert mean == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        heterodyne_moments(vacuum_state(3))


def test_heterodyne_moments_match_fock_oracle():
    ops = [fock.TwoModeSqueeze((0, 1), 0.4, 0.0), fock.Displace(0, 1.0 + 0.5j)]
    psi, _ = fock.prepare_state_fock(ops, 30)
    oracle = fock.number_diff_moments_fock(psi, 30, 2, (0, 1))
    state = apply_symplectic(vacuum_state(2), squeezing_channel(0.4, 0.0))
    d = state.d.copy()
    d[0] += 2.0
    d[1] += 1.0
    mean, var = heterodyne_moments(GaussianState(2, d, state.sigma))
    assert mean == pytest.approx(oracle[0], rel=1e-6)
    assert var == pytest.approx(oracle[1], rel=1e-6)


# ---------------------------------------------------------------------------
# sensitivity and classical Fisher information
# ---------------------------------------------------------------------------

def test_number_sum_is_near_optimal_in_pumped_regime():
    cfg = _config("squeezing", nbar=1e8, r=3.0, theta=0.3)
    h = qfi_numeric(cfg)
    _, f0 = sensitivity_number_sum(cfg)
    assert 0.95 <= f0 / h <= 1.0


def test_sensitivity_matches_closed_fraction():
    # F0(eps0) approaches the closed-form ratio linearly in eps0; one
    # two-point extrapolation reaches the stated 1e-6 agreement
    for kind in ("squeezing", "mode_mixing"):
        cfg = InterferometerConfig(
            nbar=100.0, r=1.0, theta=0.5, channel=ChannelSpec(kind, 1.0, 0.8),
            pump_phase=0.2, squeeze_phase=1.1, tritter_phase=0.5)
        reference = f0_closed_form(cfg)
        coarse = sensitivity_number_sum(cfg, eps0=1e-3)[1]
        fine = sensitivity_number_sum(cfg, eps0=5e-4)[1]
        assert 2 * fine - coarse == pytest.approx(reference, rel=2e-6)
        assert coarse == pytest.approx(reference, rel=1e-3)


def test_sensitivity_mode_mixing_pumped_limit():
    cfg = _config("mode_mixing", nbar=1e8, r=3.0, theta=0.05)
    _, f0 = sensitivity_number_sum(cfg, eps0=1e-4)
    assert f0 == pytest.approx(f0_closed_form(cfg, "pumped_limit"), rel=0.02)


def test_sensitivity_rejects_stationary_point():
    cfg = _config("squeezing", nbar=100.0, r=1.0, theta=0.3)
    with pytest.raises(ValueError):
        sensitivity_number_sum(cfg, eps0=0.0)


def test_sensitivity_bounded_by_qfi(rng):
    for _ in range(15):
        cfg = random_config(rng)
        if cfg.theta < 0.05:  # keep a working margin from the saturation point
            continue
        delta_sq, f0 = sensitivity_number_sum(cfg)
        assert delta_sq > 0
        assert f0 <= qfi_numeric(cfg) * (1 + 1e-9)


def test_f0_closed_form_saturates_at_theta_zero(rng):
    for kind in ("squeezing", "mode_mixing"):
        cfg = InterferometerConfig(
            nbar=150.0, r=0.9, theta=0.0, channel=ChannelSpec(kind, 1.0, 0.7),
            squeeze_phase=rng.uniform(0, 2 * np.pi))
        f0 = f0_closed_form(cfg)
        h = qfi_closed_form(cfg)
        assert f0 <= h * (1 + 1e-9)
        assert f0 == pytest.approx(h, rel=1e-9)  # number-sum saturates the bound here


def test_f0_closed_form_pumped_limit_value():
    n = 2.0 * np.sinh(2.0) ** 2
    cfg = _config("squeezing", nbar=1e6 + n, r=2.0, theta=np.sqrt(0.094))
    f0 = f0_closed_form(cfg, "pumped_limit")
    assert f0 == pytest.approx(1.2365e6, rel=1e-3)
    assert f0 == pytest.approx(qfi_closed_form(cfg, "pumped_limit"), rel=1e-12)


def test_f0_large_nbar_matches_numeric():
    cfg = InterferometerConfig(
        nbar=1e6, r=1.0, theta=0.5, channel=ChannelSpec("squeezing", 1.0, 0.8),
        pump_phase=0.2, squeeze_phase=1.1, tritter_phase=0.5)
    approx = f0_closed_form(cfg, "large_nbar")
    _, numeric = sensitivity_number_sum(cfg)
    assert approx == pytest.approx(numeric, rel=0.01)


def test_quadratic_response_matches_pipeline_limit(rng):
    # regression for the mode-mixing mean coefficient (the Phi1 form)
    for _ in range(8):
        cfg = random_config(rng, kind="mode_mixing", nbar_range=(10.0, 1e3))
        mean_c, var_c = number_sum_quadratic_response(cfg)
        eps = 1e-4
        side = reduce_to_modes(run_interferometer(cfg, eps), (1, 2))
        mean, var = number_sum_moments(side)
        assert mean == pytest.approx(mean_c * eps ** 2, rel=1e-3)
        assert var == pytest.approx(var_c * eps ** 2, rel=1e-3)


def test_fisher_exceeds_f0(rng):
    for _ in range(5):
        cfg = random_config(rng)
        eps0 = 0.01
        f = fisher_from_moments(cfg, eps0=eps0)
        _, f0 = sensitivity_number_sum(cfg, eps0=eps0)
        assert f >= f0


def test_fisher_bounded_by_qfi_in_gaussian_regime():
    # strong signal, eps0 large enough that the variance term is subdominant
    cfg = _config("squeezing", nbar=1e8, r=1.0, theta=0.5)
    f = fisher_from_moments(cfg, eps0=0.01)
    assert f <= qfi_numeric(cfg) * (1 + 1e-6)


def test_fisher_variance_term_is_kinematic_at_small_strain():
    # Var ~ eps^2 makes the second term 2/eps0^2 for any configuration; this
    # pins the known breakdown of the Gaussian model at the dark point
    cfg = _config("squeezing", nbar=1e4, r=1.0, theta=0.4)
    eps0 = 1e-3
    f = fisher_from_moments(cfg, eps0=eps0)
    _, f0 = sensitivity_number_sum(cfg, eps0=eps0)
    assert f - f0 == pytest.approx(2.0 / eps0 ** 2, rel=1e-3)


def test_metrology_report_bundle():
    cfg = _config("squeezing", nbar=1e4, r=1.0, theta=0.5)
    report = metrology_report(cfg, include_turning_point=True, regimes=("exact",))
    assert report.h_numeric == pytest.approx(report.h_closed_form, rel=1e-9)
    assert report.f0 <= report.h_numeric * (1 + 1e-9)
    assert report.theta_t is not None
    assert report.regime_labels == frozenset({"exact"})
    assert np.isfinite([report.mean_s, report.var_s]).all()
