import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nadsdipole.quantities import (
    CONSTANTS,
    DomainError,
    MediumParams,
    PulseShape,
    debye_to_si,
    field_to_intensity,
    fs_to_s,
    fwhm_to_tau,
    intensity_to_field,
    parse_quantity,
    rabi_frequency,
    s_to_fs,
    si_to_debye,
    tau_to_fwhm,
)

# CODATA 2022, typed in by hand
EPS0 = 8.8541878188e-12
C = 299792458.0
HBAR = 1.054571817646e-34


def test_constants_match_codata():
    assert CONSTANTS.vacuum_permittivity == pytest.approx(EPS0, rel=1e-9)
    assert CONSTANTS.speed_of_light == C
    assert CONSTANTS.hbar == pytest.approx(HBAR, rel=1e-9)
    assert CONSTANTS.debye_in_si == pytest.approx(3.33564e-30, rel=1e-5)


def test_intensity_to_field_zero():
    assert intensity_to_field(0.0) == 0.0


def test_intensity_to_field_1e14():
    expected = math.sqrt(2 * 1e14 * 1e4 / (EPS0 * C))
    assert intensity_to_field(1e14) == pytest.approx(expected, rel=1e-12)
    assert intensity_to_field(1e14) == pytest.approx(2.744e10, rel=1e-3)


def test_field_scales_as_sqrt_intensity():
    assert intensity_to_field(4e13) / intensity_to_field(1e13) == pytest.approx(2.0, rel=1e-15)


def test_negative_intensity_rejected():
    with pytest.raises(DomainError):
        intensity_to_field(-1.0)


@given(st.floats(1e6, 1e20))
def test_field_intensity_round_trip(i):
    assert field_to_intensity(intensity_to_field(i)) == pytest.approx(i, rel=1e-13)


def test_rabi_anchor():
    medium = MediumParams.from_debye(0.01, 1e16)
    w = rabi_frequency(medium, intensity_to_field(1e14))
    assert abs(w / 8.7e12 - 1) < 0.02


def test_rabi_zero_field_and_linearity():
    m1 = MediumParams.from_debye(0.01, 1e16)
    m2 = MediumParams.from_debye(1.0, 1e16)
    e = intensity_to_field(1e14)
    assert rabi_frequency(m1, 0.0) == 0.0
    assert rabi_frequency(m2, e) / rabi_frequency(m1, e) == pytest.approx(100.0, rel=1e-13)


@given(st.floats(1e-6, 1e6))
def test_unit_round_trips(x):
    assert abs(si_to_debye(debye_to_si(x)) / x - 1) < 1e-14
    assert abs(s_to_fs(fs_to_s(x)) / x - 1) < 1e-14


def test_sech2_fwhm_to_tau():
    # 2 arccosh(sqrt 2) = 2 ln(1 + sqrt 2)
    assert fwhm_to_tau("sech2", 100e-15) == pytest.approx(100e-15 / (2 * math.log(1 + math.sqrt(2))), rel=1e-14)
    assert fwhm_to_tau(PulseShape.SECH2, 100e-15) == pytest.approx(56.73e-15, rel=1e-3)


def test_gaussian_fwhm_round_trip():
    tau = 37e-15
    assert fwhm_to_tau("gaussian", tau * math.sqrt(2 * math.log(2))) == pytest.approx(tau, rel=1e-15)
    assert fwhm_to_tau("gaussian", tau_to_fwhm("gaussian", tau)) == pytest.approx(tau, rel=1e-15)


@pytest.mark.parametrize("bad", [0.0, -1e-15])
def test_fwhm_must_be_positive(bad):
    with pytest.raises(DomainError):
        fwhm_to_tau("sech2", bad)


def test_unknown_shape():
    with pytest.raises(DomainError):
        fwhm_to_tau("lorentzian", 1e-15)


@pytest.mark.parametrize(
    "text,dim,expected",
    [
        ("0.01 D", "dipole", 0.01 * 1e-21 / C),
        ("5e13 W/cm2", "intensity", 5e13),
        ("5e17 W/m2", "intensity", 5e13),
        ("100 fs", "time", 1e-13),
        ("1 ps", "time", 1e-12),
        ("1e16 1/s", "rate", 1e16),
        (2.5, None, 2.5),
        ("3.0", None, 3.0),
    ],
)
def test_parse_quantity(text, dim, expected):
    assert parse_quantity(text, dim) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("text,dim", [("1 furlong", None), ("abc", None), ("1 fs", "dipole"), (True, None)])
def test_parse_quantity_errors(text, dim):
    with pytest.raises(DomainError):
        parse_quantity(text, dim)


@pytest.mark.parametrize("mu,dw", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -1e16)])
def test_medium_validation(mu, dw):
    with pytest.raises(DomainError):
        MediumParams(mu, dw)
