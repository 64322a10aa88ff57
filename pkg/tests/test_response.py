import numpy as np
import pytest

import resonet as rn
from resonet.errors import (
    InvalidSpecError,
    NoPassbandError,
    SingularFrequencyError,
)

EDGE_S11 = 0.09949943695193105  # equiripple reflection for 0.04321 dB ripple


@pytest.fixture(scope="module")
def cm4(xband4):
    return rn.from_couplings(rn.spec_to_couplings(xband4), xband4.fbw)


def critically_coupled_pair():
    return rn.CouplingMatrix(m=np.array([[0.0, 1.0], [1.0, 0.0]]), qe1=1.0, qen=1.0)


def test_full_transmission_at_resonance():
    s11, s21 = rn.s_parameters(critically_coupled_pair(), 0.0)
    assert abs(s11) < 1e-15
    assert s21 == pytest.approx(1j, abs=1e-15)


def test_uncoupled_resonators_reflect_everything():
    cm = rn.CouplingMatrix(m=np.zeros((2, 2)), qe1=1.0, qen=1.0)
    s11, s21 = rn.s_parameters(cm, 0.0)
    assert s11 == pytest.approx(-1.0, abs=1e-15)
    assert s21 == 0.0


def test_band_center_and_edges(cm4):
    for omega in (0.0, 1.0, -1.0):
        s11, s21 = rn.s_parameters(cm4, 1j * omega)
        assert abs(s11) == pytest.approx(EDGE_S11, abs=5e-4)
        assert abs(s11) <= 0.0995 + 1e-6
        assert abs(s21) ** 2 == pytest.approx(1 - abs(s11) ** 2, abs=1e-12)


def test_asymptotic_total_reflection(cm4):
    s11, s21 = rn.s_parameters(cm4, 1e6j)
    assert abs(s11) == pytest.approx(1.0, abs=1e-9)
    assert abs(s21) < 1e-5


def test_energy_conservation_random(random_lossless):
    rng = np.random.default_rng(11)
    for _ in range(300):
        cm = random_lossless(rng)
        s11, s21 = rn.s_parameters(cm, 1j * rng.uniform(-5, 5))
        assert abs(abs(s11) ** 2 + abs(s21) ** 2 - 1.0) < 1e-10


def test_cramer_agrees_with_inverse(random_lossless):
    rng = np.random.default_rng(12)
    for _ in range(200):
        cm = random_lossless(rng)
        s = 1j * rng.uniform(-5, 5)
        a11, a21 = rn.s_parameters(cm, s)
        b11, b21 = rn.s_parameters_cramer(cm, s)
        assert abs(a11 - b11) <= 1e-9 * max(abs(a11), abs(b11), 1e-6)
        assert abs(a21 - b21) <= 1e-9 * max(abs(a21), abs(b21), 1e-6)


def test_cramer_hand_case():
    # 2x2 critically coupled pair at resonance: det A = 2, S21 = j
    cm = critically_coupled_pair()
    a = rn.system_matrix(cm, 0.0)
    assert np.linalg.det(a) == pytest.approx(2.0, rel=1e-14)
    s11, s21 = rn.s_parameters_cramer(cm, 0.0)
    assert abs(s11) < 1e-14
    assert s21 == pytest.approx(1j, abs=1e-14)


def test_reciprocity(cm4, random_lossless):
    rng = np.random.default_rng(13)
    for cm in [cm4] + [random_lossless(rng) for _ in range(20)]:
        sm = rn.s_matrix(cm, 1j * rng.uniform(-2, 2))
        assert abs(sm[0, 1] - sm[1, 0]) < 1e-12


def test_singular_frequency_raises(cm4):
    pole = np.linalg.eigvals(rn.pole_matrix(cm4))[0]
    with pytest.raises(SingularFrequencyError):
        rn.s_parameters(cm4, pole)
    with pytest.raises(SingularFrequencyError):
        rn.s_parameters_cramer(cm4, pole)


def test_mapping_fixed_point_and_monotonicity(xband4):
    assert rn.normalized_frequency(xband4.f0_hz, xband4) == 0.0
    f = np.linspace(1e9, 20e9, 200)
    omega = rn.normalized_frequency(f, xband4)
    assert np.all(np.diff(omega) > 0)


def test_band_edges_map_to_unit_omega(xband4):
    f_lo, f_hi = rn.band_edge_frequencies(xband4)
    assert rn.normalized_frequency(f_lo, xband4) == pytest.approx(-1.0, abs=1e-12)
    assert rn.normalized_frequency(f_hi, xband4) == pytest.approx(1.0, abs=1e-12)
    assert f_hi - f_lo == pytest.approx(xband4.bandwidth_hz, rel=1e-12)


def test_sweep_shape_and_passivity(cm4, xband4):
    resp = rn.sweep(cm4, xband4, 9e9, 11e9, 501)
    assert len(resp) == 501
    assert resp.grid[0] == 9e9 and resp.grid[-1] == 11e9
    assert np.max(np.abs(resp.s11)) <= 1 + 1e-9
    assert np.max(np.abs(resp.s21)) <= 1 + 1e-9
    assert resp.spec is xband4


def test_sweep_reflection_zero_locations(cm4, xband4):
    resp = rn.sweep(cm4, xband4, 9e9, 11e9, 1001)
    mag = np.abs(resp.s11)
    minima = [
        resp.grid[i]
        for i in range(1, 1000)
        if mag[i] < mag[i - 1] and mag[i] < mag[i + 1] and 20 * np.log10(mag[i]) < -40
    ]
    assert len(minima) == 4
    assert all(9.75e9 < f < 10.25e9 for f in minima)


@pytest.mark.parametrize(
    "f_start,f_stop,points",
    [(9e9, 11e9, 1), (0.0, 11e9, 101), (-1e9, 11e9, 101), (11e9, 9e9, 101)],
)
def test_sweep_validation(cm4, xband4, f_start, f_stop, points):
    with pytest.raises(InvalidSpecError):
        rn.sweep(cm4, xband4, f_start, f_stop, points)


def test_sweep_two_port_consistency(cm4, xband4):
    resp, s12, s22 = rn.sweep_two_port(cm4, xband4, 9.5e9, 10.5e9, 101)
    assert np.max(np.abs(s12 - resp.s21)) < 1e-12
    assert np.max(np.abs(s22)) <= 1 + 1e-9
    # lossless two-port: each column of S has unit norm
    assert np.max(np.abs(np.abs(s22) ** 2 + np.abs(s12) ** 2 - 1)) < 1e-10


def test_response_validation_rejects_bad_grids():
    with pytest.raises(InvalidSpecError):
        rn.FrequencyResponse(grid=[2e9, 1e9], s11=[0, 0], s21=[0, 0])
    with pytest.raises(InvalidSpecError):
        rn.FrequencyResponse(grid=[1e9, 2e9], s11=[0.0], s21=[0.0, 0.0])
    with pytest.raises(InvalidSpecError):
        rn.FrequencyResponse(grid=[1e9], s11=[1.0 + 1e-8], s21=[0.0])
    with pytest.raises(InvalidSpecError):
        rn.FrequencyResponse(grid=[1e9], s11=[0.5], s21=[0.0], domain="octave")


def test_analyze_ideal_four_pole(cm4, xband4):
    resp = rn.sweep(cm4, xband4, 9e9, 11e9, 2001)
    metrics = rn.analyze_response(resp, -20.0)
    assert metrics.reflection_zero_count == 4
    assert metrics.bandwidth_at_level == pytest.approx(0.5e9, rel=0.05)
    assert metrics.f_center == pytest.approx(10.003e9, rel=1e-3)
    assert metrics.max_inband_s11_db <= -20.0


def test_analyze_no_passband():
    grid = np.linspace(1e9, 2e9, 51)
    resp = rn.FrequencyResponse(grid=grid, s11=np.ones(51), s21=np.zeros(51))
    with pytest.raises(NoPassbandError):
        rn.analyze_response(resp, -20.0)


def test_analyze_rejects_positive_level(cm4, xband4):
    resp = rn.sweep(cm4, xband4, 9e9, 11e9, 101)
    with pytest.raises(InvalidSpecError):
        rn.analyze_response(resp, 3.0)
