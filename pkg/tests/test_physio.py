import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aspir8 import (
    CatheterConfig,
    Side,
    VesselParams,
    inverse_pressure,
    pressure,
    wave_speed,
)

from conftest import A0

BETA = 338513.7501286537
PARAMS = VesselParams.from_elasticity(A0=A0, E=3e6, h0=0.05, rho=1.0)
CATH = CatheterConfig(A_c=math.pi * 0.01)


def test_beta_from_elasticity(params):
    assert params.beta == pytest.approx(BETA, rel=1e-12)
    assert params.beta == pytest.approx(
        params.E * params.h0 * math.sqrt(math.pi) / params.A0, rel=1e-15)


def test_inconsistent_beta_rejected():
    with pytest.raises(ValueError, match="beta"):
        VesselParams(A0=A0, beta=1e5, rho=1.0, E=3e6, h0=0.05)


@pytest.mark.parametrize("field", ["A0", "beta", "rho", "E", "h0"])
def test_nonpositive_params_rejected(field, params):
    kwargs = dict(A0=params.A0, beta=params.beta, rho=params.rho,
                  E=params.E, h0=params.h0)
    kwargs[field] = 0.0
    with pytest.raises(ValueError, match=field):
        VesselParams(**kwargs)


def test_catheter_validation(params):
    with pytest.raises(ValueError):
        CatheterConfig(A_c=-0.1)
    CatheterConfig(A_c=0.0).check_fits(params)
    with pytest.raises(ValueError):
        CatheterConfig(A_c=params.A0).check_fits(params)


def test_free_pressure_zero_at_reference(params, cath):
    assert pressure(A0, Side.FREE, params, cath) == 0.0


def test_catheterized_pressure_at_reference(params, cath):
    # high-precision independent evaluation of beta*(sqrt(A0+A_c)-sqrt(A0))
    assert pressure(A0, Side.CATHETERIZED, params, cath) == pytest.approx(
        5941.170815567090, rel=1e-12)


def test_catheterized_reduces_to_free_without_device(params, no_cath):
    A = np.linspace(0.1 * A0, 10 * A0, 57)
    p_c = pressure(A, Side.CATHETERIZED, params, no_cath)
    p_f = pressure(A, Side.FREE, params, no_cath)
    assert np.array_equal(p_c, p_f)


def test_pressure_rejects_nonpositive_area(params, cath):
    with pytest.raises(ValueError, match="-1.5"):
        pressure(-1.5, Side.FREE, params, cath)
    with pytest.raises(ValueError):
        wave_speed(0.0, Side.CATHETERIZED, params, cath)


def test_inverse_pressure_trivial(params, cath):
    assert inverse_pressure(0.0, Side.FREE, params, cath) == pytest.approx(
        A0, rel=1e-14)
    assert inverse_pressure(0.0, Side.CATHETERIZED, params, cath) == pytest.approx(
        A0 - cath.A_c, rel=1e-14)


def test_inverse_pressure_round_trip_example(params, cath):
    p = pressure(A0, Side.CATHETERIZED, params, cath)
    assert inverse_pressure(p, Side.CATHETERIZED, params, cath) == pytest.approx(
        A0, rel=1e-12)


def test_inverse_pressure_domain(params, cath):
    with pytest.raises(ValueError, match="range"):
        inverse_pressure(-params.beta * math.sqrt(A0), Side.FREE, params, cath)
    with pytest.raises(ValueError, match="range"):
        inverse_pressure(-1e9, Side.CATHETERIZED, params, cath)


def test_wave_speed_free_value(params, cath):
    assert wave_speed(A0, Side.FREE, params, cath) == pytest.approx(
        387.2983346207417, rel=1e-12)


def test_wave_speeds_coincide_without_device(params, no_cath):
    A = np.linspace(0.2, 5.0, 33)
    np.testing.assert_allclose(
        wave_speed(A, Side.CATHETERIZED, params, no_cath),
        wave_speed(A, Side.FREE, params, no_cath), rtol=1e-14)


def test_catheterized_speed_below_free(params):
    for A_c in np.linspace(1e-4, 0.5 * A0, 20):
        cath = CatheterConfig(A_c=float(A_c))
        c1 = wave_speed(A0, Side.CATHETERIZED, params, cath)
        c2 = wave_speed(A0, Side.FREE, params, cath)
        assert c1 < c2


@pytest.mark.parametrize("side", [Side.CATHETERIZED, Side.FREE])
@settings(max_examples=200, deadline=None)
@given(A1=st.floats(1e-3, 10 * A0), A2=st.floats(1e-3, 10 * A0))
def test_pressure_monotone(side, A1, A2):
    if A1 == A2:
        return
    lo, hi = sorted((A1, A2))
    assert pressure(hi, side, PARAMS, CATH) > pressure(lo, side, PARAMS, CATH)


@pytest.mark.parametrize("side", [Side.CATHETERIZED, Side.FREE])
@settings(max_examples=200, deadline=None)
@given(A=st.floats(1e-6, 10 * A0))
def test_inverse_round_trip(side, A):
    p = pressure(A, side, PARAMS, CATH)
    assert inverse_pressure(p, side, PARAMS, CATH) == pytest.approx(A, rel=1e-10)


@pytest.mark.parametrize("side", [Side.CATHETERIZED, Side.FREE])
def test_wave_speed_positive_increasing(side, params, cath):
    A = np.linspace(1e-3, 10 * A0, 500)
    c = wave_speed(A, side, params, cath)
    assert np.all(c > 0)
    assert np.all(np.diff(c) > 0)
