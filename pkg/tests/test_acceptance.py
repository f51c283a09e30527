"""Acceptance suite: one test per numbered criterion.

Each test prints a single "[criterion N] PASS/FAIL" line with the measured
quantities, then asserts the criterion at its stated tolerance.  Measured
maxima are additionally pinned by frozen regression constants so silent
numerical drift fails loudly.  Shape snapshots of the bundled figure
presets (byte determinism, resolved config headers) live with the CLI
tests in test_config_cli.py.
"""

import time

import numpy as np
import pytest
from scipy import optimize

from gravqkd import (
    EARTH,
    EARTH_RADIUS,
    GEO_HEIGHT,
    ProtocolParams,
    SweepSpec,
    WavePacket,
    apply_overlap_beamsplitter,
    apply_thermal_loss,
    conditional_after_homodyne,
    db_to_transmissivity,
    delta_exact,
    delta_perturbative,
    entropy_g,
    key_rate,
    key_rate_via_covariance,
    make_tmsv,
    overlap_closed_form,
    overlap_quadrature_oracle,
    run_sweep,
    symplectic_spectrum,
)

DEFAULT_PACKET = WavePacket(5e14, 1e6)
# Fixed operating point of the height sweeps: V = 10, eps = 0.001, 1 dB
# fixed loss, unmeasured-quadrature (diagonal) lambda3 convention as used
# by the bundled figure presets.
SWEEP_PROTOCOL = ProtocolParams(
    modulation_variance=10.0, excess_noise=0.001, lambda3_convention="diagonal")
SWEEP_HEIGHTS = np.linspace(0.0, GEO_HEIGHT, 1001)[1:]

RNG_SEED = 20260816


def _report(criterion, passed, detail):
    print(f"[criterion {criterion}] {'PASS' if passed else 'FAIL'}: {detail}")
    assert passed, f"criterion {criterion}: {detail}"


def _height_sweep(packet=DEFAULT_PACKET, heights=SWEEP_HEIGHTS):
    spec = SweepSpec(parameter="height", grid=tuple(heights),
                     mode="gravity_only", protocol=SWEEP_PROTOCOL, packet=packet)
    points = run_sweep(spec)
    assert all(p.error is None for p in points)
    return points


def test_criterion_1_shift_changes_key_rate_below_one_percent():
    start = time.perf_counter()
    points = _height_sweep()
    elapsed = time.perf_counter() - start
    max_mu = max(abs(p.mu) for p in points)
    _report(1, max_mu < 0.01 and elapsed < 1.0,
            f"max|mu| = {max_mu:.4%} over {len(points)} heights up to GEO "
            f"in {elapsed:.3f} s")
    # frozen measured maximum, attained at the GEO end of the grid
    assert max_mu == pytest.approx(0.0085480453041069, rel=1e-9)


def test_criterion_2_peak_height_tracks_zero_shift():
    points = _height_sweep()
    rates = np.array([p.result.key_rate for p in points])
    idx = int(np.argmax(rates))
    assert 0 < idx < len(points) - 1, "maximum must be interior to the grid"
    argmax_h = points[idx].height

    f = lambda h: delta_perturbative(EARTH, h).delta_total
    root = optimize.brentq(f, 1.0, EARTH_RADIUS, xtol=1e-6)
    sch_at_half = delta_perturbative(EARTH, EARTH_RADIUS / 2.0).delta_schwarzschild

    ok = (abs(argmax_h - root) < 100e3
          and abs(root - EARTH_RADIUS / 2.0) < 50e3
          and sch_at_half == 0.0)
    _report(2, ok,
            f"argmax h = {argmax_h / 1e3:.0f} km, delta root = {root / 1e3:.1f} km, "
            f"|argmax - root| = {abs(argmax_h - root) / 1e3:.1f} km, "
            f"|root - r_A/2| = {abs(root - EARTH_RADIUS / 2.0) / 1e3:.1f} km, "
            f"delta_sch(r_A/2) = {sch_at_half!r}")
    assert root == pytest.approx(3169044.9659427297, abs=1.0)
    assert argmax_h == pytest.approx(3184954.0, abs=1e-6)


def test_criterion_3_pure_channel_limit():
    result = key_rate(ProtocolParams(
        modulation_variance=2.0, excess_noise=0.0, transmissivity=1.0,
        overlap=1.0, noise_convention="chi", lambda3_convention="det"))
    ok = (abs(result.mutual_information - 1.0) < 1e-10
          and abs(result.holevo) < 1e-10
          and abs(result.key_rate - 1.0) < 1e-10)
    _report(3, ok,
            f"V=2 lossless noiseless: I = {result.mutual_information!r}, "
            f"S = {result.holevo!r}, K = {result.key_rate!r}")


# Grid for the closed-form-vs-quadrature check: shift values spanning the
# physically reachable 1e-10 scale up to the exaggerated 0.1 case, crossed
# with peak-to-bandwidth ratios from 10 to 1e9 (20 x 20).
OVERLAP_DELTAS = (0.0, 1e-10, -1e-10, 3e-10, -3e-10, 1e-8, -1e-8, 1e-6, -1e-6,
                  1e-4, -1e-4, 1e-3, -1e-3, 1e-2, -1e-2, 0.05, -0.05, 0.1, -0.1,
                  0.07)
OVERLAP_RATIOS = tuple(np.geomspace(10.0, 1e9, 20))


def test_criterion_4_closed_form_overlap_matches_quadrature():
    start = time.perf_counter()
    worst = 0.0
    compared = 0
    for ratio in OVERLAP_RATIOS:
        packet = WavePacket(5e14, 5e14 / ratio, strict=False)
        for delta in OVERLAP_DELTAS:
            closed = overlap_closed_form(delta, packet)
            oracle = overlap_quadrature_oracle(delta, packet)
            if closed == 0.0 and oracle == 0.0:
                # both underflow at extreme delta * ratio; exact agreement
                continue
            worst = max(worst, abs(closed - oracle) / max(abs(oracle), 1e-300))
            compared += 1
    elapsed = time.perf_counter() - start
    _report(4, worst < 1e-9 and elapsed < 10.0,
            f"worst relative gap {worst:.3e} over {compared} live grid points "
            f"in {elapsed:.2f} s")
    assert worst < 1e-12  # frozen regression band, measured 1.55e-13


def test_criterion_5_perturbative_shift_tracks_exact():
    heights = np.linspace(0.0, GEO_HEIGHT, 1001)
    worst = max(abs(delta_exact(EARTH, h).delta_total
                    - delta_perturbative(EARTH, h).delta_total) for h in heights)
    bound = 0.01 * abs(delta_perturbative(EARTH, 0.0).delta_schwarzschild)
    _report(5, worst <= bound,
            f"max |exact - perturbative| = {worst:.4e} against bound {bound:.4e}")
    # recorded regression constant for the measured maximum
    assert worst == pytest.approx(1.20083451705607e-12, rel=1e-6)


def test_criterion_6_monotonicity_suite():
    # key rate vs channel loss for three excess-noise levels, det convention
    losses = np.linspace(0.0, 30.0, 31)
    curves = {}
    for eps in (0.001, 0.005, 0.010):
        curves[eps] = np.array([
            key_rate(ProtocolParams(
                modulation_variance=10.0, excess_noise=eps,
                transmissivity=db_to_transmissivity(db))).key_rate
            for db in losses])
    loss_monotone = all((np.diff(k) <= 0.0).all() for k in curves.values())
    noise_monotone = ((curves[0.001] >= curves[0.005]).all()
                      and (curves[0.005] >= curves[0.010]).all())

    # bandwidth ordering of the height sweeps: wider packets lose less overlap
    rates = {}
    for sigma in (0.8e6, 1.0e6, 1.2e6):
        points = _height_sweep(packet=WavePacket(5e14, sigma),
                               heights=np.linspace(0.0, GEO_HEIGHT, 61)[1:])
        rates[sigma] = np.array([p.result.key_rate for p in points])
    sigma_ordered = ((rates[1.2e6] >= rates[1.0e6]).all()
                     and (rates[1.0e6] >= rates[0.8e6]).all())

    _report(6, loss_monotone and noise_monotone and sigma_ordered,
            f"K non-increasing in dB loss: {loss_monotone}, "
            f"non-increasing in excess noise: {noise_monotone}, "
            f"bandwidth ordering 1.2 >= 1.0 >= 0.8 MHz pointwise: {sigma_ordered}")


def test_criterion_7_scalar_and_covariance_pipelines_agree():
    rng = np.random.default_rng(RNG_SEED)
    worst = 0.0
    draws = 0
    for lam3 in ("det", "diagonal"):
        for _ in range(400):
            p = ProtocolParams(
                modulation_variance=rng.uniform(1.0, 20.0),
                excess_noise=rng.uniform(1e-4, 0.2),
                transmissivity=rng.uniform(0.05, 0.999),
                overlap=rng.uniform(0.01, 1.0),
                noise_convention="chi", lambda3_convention=lam3)
            direct = key_rate(p)
            matrix = key_rate_via_covariance(p)
            worst = max(worst,
                        abs(direct.mutual_information - matrix.mutual_information),
                        abs(direct.holevo - matrix.holevo),
                        abs(direct.key_rate - matrix.key_rate))
            draws += 1
    # epsilon_only bookkeeping is only physical for T >= 1/(1 + eps)
    for lam3 in ("det", "diagonal"):
        for _ in range(100):
            p = ProtocolParams(
                modulation_variance=rng.uniform(1.0, 20.0),
                excess_noise=rng.uniform(0.15, 0.5),
                transmissivity=rng.uniform(0.9, 0.999),
                overlap=rng.uniform(0.01, 1.0),
                noise_convention="epsilon_only", lambda3_convention=lam3)
            direct = key_rate(p)
            matrix = key_rate_via_covariance(p)
            worst = max(worst,
                        abs(direct.mutual_information - matrix.mutual_information),
                        abs(direct.holevo - matrix.holevo),
                        abs(direct.key_rate - matrix.key_rate))
            draws += 1
    _report(7, worst < 1e-10 and draws == 1000,
            f"worst |direct - covariance| over I, S, K = {worst:.3e} "
            f"on {draws} draws")
    assert worst < 1e-12  # frozen regression band, measured 6.7e-14


def test_criterion_8_physicality_suite():
    worst_tmsv = 0.0
    for v in (1.0, 1.5, 2.0, 5.0, 10.0, 20.0, 50.0):
        spectrum = symplectic_spectrum(make_tmsv(v))
        worst_tmsv = max(worst_tmsv, abs(spectrum.lambda1 - 1.0),
                         abs(spectrum.lambda2 - 1.0))

    rng = np.random.default_rng(RNG_SEED)
    min_lambda = np.inf
    min_det = np.inf
    min_conditional = np.inf
    for _ in range(300):
        v = rng.uniform(1.0, 50.0)
        t = rng.uniform(0.05, 1.0)
        # vacuum share of a physical thermal-loss channel bounds chi below
        chi = (1.0 - t) / t + rng.uniform(0.0, 0.5)
        theta = rng.uniform(0.0, 1.0)
        state = apply_overlap_beamsplitter(
            apply_thermal_loss(make_tmsv(v), t, chi), theta)
        spectrum = symplectic_spectrum(state)
        min_lambda = min(min_lambda, spectrum.lambda2)
        min_det = min(min_det, spectrum.det_invariant)
        _, eig = conditional_after_homodyne(state)
        min_conditional = min(min_conditional, eig)

    g_at_one = entropy_g(1.0)
    ok = (worst_tmsv <= 1e-9
          and min_lambda >= 1.0 - 1e-9
          and min_det >= 1.0 - 1e-9
          and min_conditional >= 1.0 - 1e-9
          and g_at_one == 0.0)
    _report(8, ok,
            f"TMSV spectrum off (1,1) by {worst_tmsv:.2e} up to V=50, "
            f"min symplectic eigenvalue {min_lambda:.12f}, "
            f"min det invariant {min_det:.12f}, "
            f"min conditional eigenvalue {min_conditional:.12f}, "
            f"g(1) = {g_at_one!r}")
    assert worst_tmsv < 1e-12  # frozen regression band, measured 2.9e-14
