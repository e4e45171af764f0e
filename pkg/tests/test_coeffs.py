import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from innerfourier.coeffs import (CoefficientSequence, absolute_mean, catalog_series,
                                 fourier_coefficients, parse_sequence, synthetic, verify_zero_average)
from innerfourier.core import catalog, combine, remove_mean, sample_table
from innerfourier.errors import QuadratureError
from innerfourier.quadrature import QuadratureConfig, integrate

PI = math.pi


def test_sawtooth_first_coefficients():
    b = fourier_coefficients(catalog("sawtooth"), "sine", 3).values
    np.testing.assert_allclose(b, [2.0, -1.0, 2.0 / 3.0], atol=1e-10)


def test_squarewave_first_coefficients():
    b = fourier_coefficients(catalog("squarewave"), "sine", 4).values
    np.testing.assert_allclose(b, [4 / PI, 0.0, 4 / (3 * PI), 0.0], atol=1e-10)


def test_logkernel_first_coefficients_through_singularity():
    a = fourier_coefficients(catalog("logkernel"), "cosine", 3).values
    np.testing.assert_allclose(a, [1.0, 0.5, 1.0 / 3.0], atol=1e-8)


@pytest.mark.parametrize("name", ["sawtooth", "squarewave"])
def test_odd_functions_average_zero(name):
    assert abs(verify_zero_average(catalog(name))) < 1e-12


def test_parabola_after_mean_removal_averages_zero():
    assert abs(verify_zero_average(remove_mean(catalog("parabola")))) < 1e-10


@pytest.mark.parametrize("name,other", [("sawtooth", "cosine"), ("squarewave", "cosine"),
                                        ("sin", "cosine"), ("cos", "sine"),
                                        ("parabola", "sine"), ("logkernel", "sine")])
def test_parity_orthogonality(name, other):
    vals = fourier_coefficients(catalog(name), other, 32).values
    assert np.max(np.abs(vals)) < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(c1, c2):
    f, g = catalog("sawtooth"), catalog("squarewave")
    lhs = fourier_coefficients(combine((c1, f), (c2, g)), "sine", 16).values
    rhs = (c1 * fourier_coefficients(f, "sine", 16).values
           + c2 * fourier_coefficients(g, "sine", 16).values)
    tol = 2 * 1e-10 * max(1.0, abs(c1) + abs(c2))
    assert np.max(np.abs(lhs - rhs)) <= tol


@pytest.mark.parametrize("name,kind", [("sawtooth", "sine"), ("squarewave", "sine"),
                                       ("logkernel", "cosine"), ("parabola", "cosine"),
                                       ("cos", "cosine")])
def test_coefficients_bounded_by_absolute_mean(name, kind):
    f = catalog(name)
    F = absolute_mean(f)
    assert np.max(np.abs(fourier_coefficients(f, kind, 64).values)) <= F + 1e-10


def _oracle_errors(tol):
    cfg = QuadratureConfig(tol=tol)
    k = np.arange(1, 33, dtype=float)
    return [
        np.max(np.abs(fourier_coefficients(catalog("sawtooth"), "sine", 32, cfg).values
                      - 2 * (-1) ** (k + 1) / k)),
        np.max(np.abs(fourier_coefficients(catalog("squarewave"), "sine", 32, cfg).values
                      - (2 / (PI * k)) * (1 - np.cos(k * PI)))),
        np.max(np.abs(fourier_coefficients(catalog("logkernel"), "cosine", 32, cfg).values - 1 / k)),
    ]


def test_halving_tolerance_never_increases_error():
    errs = [_oracle_errors(tol) for tol in (1e-4, 5e-5, 1e-6, 5e-7, 1e-8, 5e-9)]
    for coarse, fine in zip(errs, errs[1:]):
        for e_coarse, e_fine in zip(coarse, fine):
            # rounding-level differences (~1e-15) are not an increase
            assert e_fine <= e_coarse + 1e-14


def test_table_coefficients_match_interpolant():
    nodes = np.linspace(-PI, PI, 33)
    f = sample_table(nodes, np.sin(nodes), declared_parity="odd")
    b = fourier_coefficients(f, "sine", 4).values
    assert b[0] == pytest.approx(1.0, abs=5e-3)


def test_non_integrable_singularity_reported():
    with pytest.raises(QuadratureError, match="improper integral did not converge"):
        integrate(lambda t: 1.0 / np.abs(t), singular=[0.0])


def test_integrable_inverse_sqrt_singularity():
    val = integrate(lambda t: 1.0 / np.sqrt(np.abs(t)), singular=[0.0])
    assert val == pytest.approx(4 * math.sqrt(PI), rel=1e-9)


def test_json_round_trip(tmp_path):
    seq = fourier_coefficients(catalog("squarewave"), "sine", 8)
    path = tmp_path / "c.json"
    path.write_text(seq.to_json())
    back = parse_sequence(f"file:{path}")
    assert back.kind == "sine"
    np.testing.assert_array_equal(back.values, seq.values)
    d = json.loads(path.read_text())
    assert set(d) >= {"kind", "values", "provenance"}


def test_values_are_read_only():
    seq = synthetic("const", 1.0, K=4)
    with pytest.raises(ValueError):
        seq.values[0] = 2.0


def test_synthetic_grammar():
    k = np.arange(1, 9, dtype=float)
    np.testing.assert_allclose(parse_sequence("const:2", 8).values, 2.0)
    np.testing.assert_allclose(parse_sequence("power:3", 8).values, k**3)
    np.testing.assert_allclose(parse_sequence("inv-power:2", 8).values, k**-2)
    np.testing.assert_allclose(parse_sequence("geometric:0.5", 8).values, 0.5**k)
    np.testing.assert_allclose(parse_sequence("delta-taylor", 8).values, 1 / PI)
    np.testing.assert_allclose(parse_sequence("series:logkernel", 8).values, 1 / k)
    with pytest.raises(ValueError):
        parse_sequence("bogus:1", 8)


def test_generator_extension():
    seq = synthetic("inv-power", 1.0, K=4)
    np.testing.assert_allclose(seq.extended(8), 1 / np.arange(1, 9))
    finite = catalog_series("cos", 2)
    np.testing.assert_array_equal(finite.extended(5), [0, 1, 0, 0, 0])
    with pytest.raises(ValueError):
        CoefficientSequence("cosine", [1.0, 2.0]).extended(5)


def test_closed_forms_agree_with_quadrature():
    for name, kind in (("sawtooth", "sine"), ("squarewave", "sine"), ("parabola", "cosine")):
        exact = catalog_series(name, K=32).values
        computed = fourier_coefficients(catalog(name), kind, 32).values
        np.testing.assert_allclose(computed, exact, atol=1e-10)
