import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaussres.errors import NonFinite, PoleProximity
from gaussres.stable_eval import (
    EvalPolicy,
    arc_integrand,
    damped_integrand,
    fermi_integrand,
    fermi_of_square,
    pole_distance,
    unit_arc_term,
)


def mp_fermi(z):
    with mpmath.workdps(40):
        return complex(1 / (mpmath.exp(mpmath.mpc(z) ** 2) + 1))


def test_fermi_at_zero_is_half():
    assert fermi_integrand(0) == 0.5 + 0j


@pytest.mark.parametrize("z, expected", [
    (2, 0.017986209962091558),
    (1 + 1j, 0.5 - 0.7787038623274511j),
])
def test_fermi_known_values(z, expected):
    assert fermi_integrand(z) == pytest.approx(expected, rel=1e-14)
    assert fermi_integrand(z) == pytest.approx(mp_fermi(z), rel=1e-14)


def test_fermi_on_first_diagonal_has_exact_half_real_part():
    # z**2 = 2i is purely imaginary
    assert fermi_integrand(1 + 1j).real == 0.5


def test_fermi_far_real_axis_underflows_cleanly():
    with np.errstate(over="raise", invalid="raise"):
        val = fermi_integrand(30)
    assert abs(val) <= 1e-300


def test_fermi_rejects_non_finite():
    with pytest.raises(NonFinite):
        fermi_integrand(complex(math.nan, 0))
    with pytest.raises(NonFinite):
        fermi_integrand(math.inf)


def test_fermi_rejects_points_on_a_pole():
    c = (1 + 1j) * math.sqrt(math.pi / 2)
    with pytest.raises(PoleProximity):
        fermi_integrand(c)
    with pytest.raises(PoleProximity):
        fermi_integrand(c + 1e-9)
    # just outside the guard it evaluates
    assert np.isfinite(fermi_integrand(c + 1e-6))


def test_custom_policy_guard():
    c = (1 + 1j) * math.sqrt(math.pi / 2)
    with pytest.raises(PoleProximity):
        fermi_integrand(c + 1e-3, EvalPolicy(pole_guard=1e-2))


@pytest.mark.parametrize("kw", [{"overflow_threshold": 0}, {"pole_guard": -1}])
def test_policy_validation(kw):
    with pytest.raises(ValueError):
        EvalPolicy(**kw)


def test_pole_distance_matches_brute_force():
    rng = np.random.default_rng(0)
    z = rng.uniform(-12, 12, 500) + 1j * rng.uniform(-12, 12, 500)
    k = np.arange(0, 200)
    r = np.sqrt((2 * k + 1) * np.pi)
    lattice = np.concatenate([r * np.exp(1j * np.pi * q) for q in (0.25, 0.75, 1.25, 1.75)])
    brute = np.abs(z[:, None] - lattice[None, :]).min(axis=1)
    np.testing.assert_allclose(pole_distance(z), brute, rtol=1e-12)


@pytest.mark.parametrize("x, n, expected", [
    (0.0, 1, 0.5),
    (0.0, 1000, 0.5),
    (1.0, 2, 0.036397263435165491),  # e^-2/(e+1)
])
def test_damped_integrand(x, n, expected):
    assert damped_integrand(x, n) == pytest.approx(expected, rel=1e-14)


def test_damped_integrand_range_and_large_x():
    x = np.linspace(-50, 50, 2001)
    vals = damped_integrand(x, 3)
    assert np.all((vals >= 0) & (vals <= 0.5))


def test_arc_integrand_at_top_of_first_contour():
    # z = i sqrt(2 pi), z^2 = -2 pi
    expected = -math.sqrt(2 * math.pi) / (math.exp(-2 * math.pi) + 1)
    assert arc_integrand(math.pi / 2, 1) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(-2.501956015055632, rel=1e-15)


def test_arc_integrand_at_start_is_tiny():
    bound = math.sqrt(2 * math.pi) * math.exp(-2 * math.pi) * (1 + 1e-12)
    assert abs(arc_integrand(0.0, 1)) <= bound


def test_arc_integrand_near_pole_spike():
    v = math.pi / 4 - 1e-3
    val = arc_integrand(v, 4)
    assert np.isfinite(val)
    assert val == pytest.approx(-1.7262324162490618 + 1.7295992120188691j, rel=1e-11)


def test_arc_integrand_rejects_out_of_range_angle():
    with pytest.raises(ValueError):
        arc_integrand(-0.1, 1)


def test_unit_arc_term_at_zero_scale():
    assert unit_arc_term(0.3, 0.0) == pytest.approx(np.exp(0.3j) / 2, rel=1e-15)


# -- invariants ---------------------------------------------------------------

def _off_lattice(z, margin):
    return pole_distance(z) > margin


def test_conjugate_symmetry_bulk():
    rng = np.random.default_rng(1)
    r = 50 * np.sqrt(rng.uniform(0, 1, 10_000))
    z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, 10_000))
    z = z[_off_lattice(z, 1e-6)]
    a = fermi_integrand(np.conj(z))
    b = np.conj(fermi_integrand(z))
    np.testing.assert_allclose(a, b, rtol=1e-14, atol=0)


@settings(max_examples=300, deadline=None)
@given(st.floats(-8, 8), st.floats(-8, 8))
def test_conjugate_symmetry_property(x, y):
    z = complex(x, y)
    if pole_distance(z) < 1e-6:
        return
    assert fermi_integrand(z.conjugate()) == pytest.approx(fermi_integrand(z).conjugate(),
                                                           rel=1e-14, abs=0)


@settings(max_examples=300, deadline=None)
@given(st.floats(-40, 40))
def test_real_axis_range(x):
    val = fermi_integrand(x)
    assert val.imag == 0
    assert 0 <= val.real <= 0.5
    # strictness is only visible in double once x^2/4 exceeds the rounding unit
    if 1e-7 < abs(x) < 5:
        assert 0 < val.real < 0.5


@settings(max_examples=300, deadline=None)
@given(st.floats(-30, 30))
def test_imaginary_axis_range(t):
    val = fermi_integrand(1j * t)
    assert val.real == pytest.approx(1 / (math.exp(-t * t) + 1), rel=1e-15)
    assert abs(val.imag) < 1e-15
    assert 0.5 <= val.real <= 1


def test_no_non_finite_output_up_to_1e6():
    rng = np.random.default_rng(2)
    r = 10 ** rng.uniform(-3, 6, 20_000)
    z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, 20_000))
    z = z[_off_lattice(z, 1e-8)]
    with np.errstate(over="raise", invalid="raise", divide="raise"):
        vals = fermi_integrand(z)
    assert np.all(np.isfinite(vals))


def test_branch_formulas_agree_on_overlap_strip():
    rng = np.random.default_rng(3)
    z = rng.uniform(-8, 8, 50_000) + 1j * rng.uniform(-8, 8, 50_000)
    w = z * z
    keep = (np.abs(w.real) <= 30) & _off_lattice(z, 0.05)
    w = w[keep]
    with np.errstate(over="ignore"):
        a = np.exp(-w) / (1 + np.exp(-w))
        b = 1 / (np.exp(w) + 1)
    np.testing.assert_allclose(a, b, rtol=1e-13)
    np.testing.assert_allclose(fermi_of_square(w), b, rtol=1e-13)


def test_against_high_precision_sample():
    rng = np.random.default_rng(4)
    for _ in range(200):
        z = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        if pole_distance(z) < 0.05:
            continue
        assert fermi_integrand(z) == pytest.approx(mp_fermi(z), rel=1e-11)
