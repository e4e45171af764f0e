import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from innerfourier.coeffs import CoefficientSequence, catalog_series, fourier_coefficients, synthetic
from innerfourier.core import catalog
from innerfourier.disk import (DiskPoint, LadderConfig, compare_to_oracle, conjugate_reconstruct,
                               evaluate_series, horner, neville, reconstruct, theta_grid)
from innerfourier.errors import DomainError, ExclusionError, GrowthGateError, TruncationError

PI = math.pi
GRID = theta_grid(256)


def test_single_term():
    ev = evaluate_series(CoefficientSequence("cosine", [1.0], finite=True), DiskPoint(0.5, 0.0))
    assert ev.real_part == pytest.approx(0.5, abs=1e-15)
    assert ev.imag_part == 0.0


def test_geometric_closed_form():
    ev = evaluate_series(synthetic("delta-taylor", K=64), DiskPoint(0.5, 0.0))
    assert ev.real_part == pytest.approx(1 / PI, abs=1e-12)


def test_squarewave_spot_value():
    seq = fourier_coefficients(catalog("squarewave"), "sine", 256)
    ev = evaluate_series(seq, DiskPoint(0.9, PI / 2))
    assert ev.imag_part == pytest.approx((2 / PI) * math.atan(1.8 / 0.19), abs=1e-10)
    assert round(ev.imag_part, 4) == 0.9330


def test_open_disk_only():
    with pytest.raises(DomainError, match="open disk only"):
        DiskPoint(1.0, 0.0)


def test_truncation_error_carries_bound():
    seq = CoefficientSequence("cosine", np.ones(8))
    with pytest.raises(TruncationError) as info:
        evaluate_series(seq, DiskPoint(0.9, 0.0))
    assert info.value.bound > 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 512), st.floats(0.0, 0.99), st.floats(-PI, PI), st.integers(0, 2**31))
def test_horner_matches_naive_sum(K, rho, theta, seed):
    a = np.random.default_rng(seed).standard_normal(K)
    z = rho * np.exp(1j * theta)
    naive = sum(a[k] * z ** (k + 1) for k in range(K))
    scale = max(1.0, float(np.sum(np.abs(a) * rho ** np.arange(1, K + 1))))
    assert abs(complex(horner(a, z)) - naive) <= 1e-12 * scale


def test_neville_exact_on_polynomials():
    h = np.array([0.5, 0.25, 0.125, 0.0625])
    best, _ = neville(h, 3.0 - 2.0 * h + h**3)
    assert best == pytest.approx(3.0, abs=1e-12)


def test_cos_reconstructs_exactly():
    seq = CoefficientSequence("cosine", [1.0], finite=True)
    r = reconstruct(seq, GRID)
    np.testing.assert_allclose(r.values, np.cos(GRID), atol=1e-12)
    assert compare_to_oracle(r, catalog("cos"), 0.0).max_error < 1e-10


def test_conjugate_pairs():
    cos_seq = CoefficientSequence("cosine", [1.0], finite=True)
    sin_seq = CoefficientSequence("sine", [1.0], finite=True)
    np.testing.assert_allclose(conjugate_reconstruct(cos_seq, GRID).values, np.sin(GRID), atol=1e-12)
    np.testing.assert_allclose(conjugate_reconstruct(sin_seq, GRID).values, np.cos(GRID), atol=1e-12)


def test_logkernel_point_values():
    seq = catalog_series("logkernel")
    assert reconstruct(seq, [PI]).values[0] == pytest.approx(-math.log(2), abs=1e-6)
    assert conjugate_reconstruct(seq, [PI / 2]).values[0] == pytest.approx(PI / 4, abs=1e-6)


def test_squarewave_reconstruction():
    r = reconstruct(catalog_series("squarewave"), GRID)
    assert r.values[np.argmin(np.abs(GRID - PI / 2))] == pytest.approx(1.0, abs=1e-3)
    assert compare_to_oracle(r, catalog("squarewave"), 0.2).max_error < 1e-3


def test_logkernel_reconstruction():
    r = reconstruct(catalog_series("logkernel"), GRID)
    assert compare_to_oracle(r, catalog("logkernel"), 0.2).max_error < 1e-3


def test_exclusion_too_aggressive():
    r = reconstruct(catalog_series("squarewave"), GRID[:8])
    with pytest.raises(ExclusionError, match="exclusion too aggressive"):
        compare_to_oracle(r, catalog("squarewave"), 4.0)


def test_gate_refuses_exponential_growth():
    seq = synthetic("geometric", 2.0, K=64)
    with pytest.raises(GrowthGateError) as info:
        reconstruct(seq, GRID)
    assert info.value.rate == pytest.approx(math.log(2), abs=1e-3)


def test_non_convergence_is_flagged_not_raised():
    r = reconstruct(synthetic("delta-taylor", K=64), [0.0, 1.0])
    assert not r.converged[0]
    assert r.converged[1]


@pytest.mark.parametrize("seq", [catalog_series("logkernel"), catalog_series("parabola"),
                                 synthetic("geometric", 0.7)])
def test_cosine_output_is_even(seq):
    r = reconstruct(seq, GRID)
    np.testing.assert_allclose(r.values, r.values[::-1], atol=1e-12)


@pytest.mark.parametrize("seq", [catalog_series("squarewave"), catalog_series("sawtooth")])
def test_sine_output_is_odd(seq):
    r = reconstruct(seq, GRID)
    np.testing.assert_allclose(r.values, -r.values[::-1], atol=1e-12)


@pytest.mark.parametrize("seq", [CoefficientSequence("cosine", [1.0], finite=True),
                                 synthetic("geometric", float(np.exp(-1)))])
def test_monotone_ladder_for_smooth_targets(seq):
    r = reconstruct(seq, [0.3, 1.7, -2.5])
    gaps = np.abs(r.rung_values - r.values)
    assert np.all(np.diff(gaps, axis=0) <= 1e-15)


@pytest.mark.parametrize("seq", [catalog_series("parabola"), synthetic("inv-power", 3.0),
                                 synthetic("geometric", 0.9)])
def test_abel_consistency_for_absolutely_convergent_series(seq):
    thetas = np.array([-2.0, -0.5, 0.4, 2.2])
    n = 200_000
    k = np.arange(1, n + 1)
    direct = np.cos(np.outer(thetas, k)) @ seq.extended(n)
    r = reconstruct(seq, thetas)
    np.testing.assert_allclose(r.values, direct, atol=1e-8)


def test_result_serialisation():
    r = reconstruct(catalog_series("squarewave"), GRID[:4])
    lines = r.to_csv().splitlines()
    assert lines[0] == "theta,value,residual,converged"
    assert len(lines) == 5
    d = r.to_dict()
    assert len(d["value"]) == 4 and len(d["ladder"]) == 10


def test_ladder_config():
    assert LadderConfig().rungs[-1] == pytest.approx(1 - 2**-10)
    with pytest.raises(ValueError):
        LadderConfig(tol=0)
