import math

import mpmath
import numpy as np
import pytest

from gaussres.contour import (
    arc_integral,
    arc_limit_pointwise,
    arc_limit_scan,
    build_contour,
    decomposition_check,
    realpart_zero_check,
    residue_theorem_check,
    segment_bound,
    segment_integral,
    small_radius_check,
)
from gaussres.errors import BalanceFailed, RadiusOutOfRange
from gaussres.poles import residue_sum_rhs

SQRT2 = math.sqrt(2)
# sqrt(pi) * eta(1/2), from mpmath.altzeta at 40 digits
FERMI_LINE = 1.0721549299401913


def mp_segment(H):
    with mpmath.workdps(30):
        return float(mpmath.quad(lambda x: 1 / (mpmath.exp(x * x) + 1), [-H, 0, H]))


def mp_arc_limit(n):
    with mpmath.workdps(30):
        f = lambda v: mpmath.exp(1j * v) / (mpmath.exp(2 * n * mpmath.pi * mpmath.exp(2j * v)) + 1)
        pi = mpmath.pi
        return complex(mpmath.quad(f, [0, pi / 4, pi / 2, 3 * pi / 4, pi]))


@pytest.mark.parametrize("n, radius", [(1, 2.5066282746310002), (2, 3.5449077018110318)])
def test_build_contour_radius(n, radius):
    spec = build_contour(n)
    assert spec.radius == pytest.approx(radius, rel=1e-15)
    lo, hi = spec.enclosed_band
    assert lo < spec.radius < hi
    assert spec.segment == (-spec.radius, spec.radius)
    assert spec.arc_range == (0.0, math.pi)


def test_build_contour_interleaving_n1():
    lo, hi = build_contour(1).enclosed_band
    assert lo == pytest.approx(1.7724538509055159)
    assert hi == pytest.approx(3.0699801238394655)


def test_alternate_radius_inside_band():
    spec = build_contour(3, radius=4.4)
    assert spec.radius == 4.4
    with pytest.raises(RadiusOutOfRange):
        build_contour(3, radius=5.0)
    with pytest.raises(ValueError):
        build_contour(0)


def test_segment_first_contour():
    oracle = mp_segment(math.sqrt(2 * math.pi))
    assert oracle == pytest.approx(1.0714594675334872, rel=1e-15)
    assert segment_integral(1).value == pytest.approx(oracle, abs=1e-10)


def test_segment_approaches_line_integral_from_below():
    vals = [segment_integral(n, 1e-13).value for n in range(1, 6)]
    # the increments shrink like exp(-2 n pi) and vanish in double after n ~ 5
    assert all(b > a for a, b in zip(vals[:4], vals[1:5]))
    assert segment_integral(50, 1e-13).value == pytest.approx(FERMI_LINE, abs=1e-12)
    assert max(vals) <= FERMI_LINE + 1e-14


@pytest.mark.parametrize("n", [1, 2, 5, 20, 200])
def test_segment_bounded(n):
    seg = segment_integral(n).value
    assert 0 < seg < segment_bound(n) < math.pi / math.sqrt(2)


def test_arc_first_contour_closes_balance():
    arc = arc_integral(1, 1e-11)
    seg = segment_integral(1, 1e-11)
    assert arc.value.real == pytest.approx(residue_sum_rhs(1) - seg.value, abs=1e-10)
    assert abs(arc.value.imag) < 1e-10


def test_arc_first_contour_cost():
    arc = arc_integral(1, 1e-8)
    assert arc.converged
    assert arc.evaluations < 10**5


@pytest.mark.parametrize("n", [1, 5])
def test_residue_theorem_small_n(n):
    bal = residue_theorem_check(n, 1e-8)
    assert bal.discrepancy < 1e-8
    assert bal.discrepancy == pytest.approx(abs(bal.segment_value + bal.arc_value - bal.rhs))


def test_residue_theorem_n20_default_schedule():
    bal = residue_theorem_check(20)
    assert bal.discrepancy < 1e-6


@pytest.mark.parametrize("n", range(1, 21))
def test_full_contour_is_real(n):
    bal = residue_theorem_check(n)
    assert abs((bal.segment_value + bal.arc_value).imag) < 1e-8


def test_radius_outside_band_is_rejected():
    # a radius outside the pole-free band would enclose the wrong residue count
    with pytest.raises(RadiusOutOfRange):
        residue_theorem_check(2, 1e-8, radius=2.0)


def test_balance_failure_is_reported(monkeypatch):
    import gaussres.contour as contour

    monkeypatch.setattr(contour, "residue_sum_rhs", lambda n: residue_sum_rhs(n) + 1e-6)
    with pytest.raises(BalanceFailed) as info:
        contour.residue_theorem_check(2, 1e-8)
    assert info.value.discrepancy == pytest.approx(1e-6, rel=1e-3)


def test_arc_limit_scan_values():
    pts = arc_limit_scan([1, 4, 16, 64])
    for pt in pts:
        oracle = mp_arc_limit(pt.n)
        assert pt.value == pytest.approx(oracle.imag, abs=1e-10)
        assert abs(pt.real_part) < 1e-10
    gaps = [abs(pt.value - SQRT2) for pt in pts]
    assert gaps[0] < 0.2
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 5e-2


def test_arc_limit_scan_requires_points():
    with pytest.raises(ValueError):
        arc_limit_scan([])


def test_pointwise_arc_limit_shape():
    v = np.linspace(0, math.pi, 4001)
    c = np.cos(2 * v)
    term = arc_limit_pointwise(v[np.abs(c) >= 0.06], 64)
    vv = v[np.abs(c) >= 0.06]
    cc = c[np.abs(c) >= 0.06]
    assert np.all(np.abs(term[cc > 0]) < 1e-10)
    assert np.all(np.abs(term[cc < 0] - np.exp(1j * vv[cc < 0])) < 1e-10)


def test_pointwise_limit_at_the_diagonal_is_half():
    # at v = pi/4 the exponent is 2 n pi i, so the term is e^{iv}/2 for every n
    assert arc_limit_pointwise(math.pi / 4, 64) == pytest.approx(np.exp(1j * math.pi / 4) / 2)


def test_small_radius_zero():
    assert small_radius_check(0.0) == 0.0


@pytest.mark.parametrize("H", [0.5, 1.0, 1.7])
def test_small_radius(H):
    assert small_radius_check(H, 1e-9) < 1e-9


def test_small_radius_segment_value():
    assert mp_segment(1.0) == pytest.approx(0.8389329600133814, rel=1e-15)
    assert segment_integral(1, radius=None).value > mp_segment(1.0)


def test_small_radius_rejects_enclosing_radius():
    with pytest.raises(RadiusOutOfRange):
        small_radius_check(1.8)
    with pytest.raises(RadiusOutOfRange):
        small_radius_check(-0.1)


@pytest.mark.parametrize("H", [-3.0, 0.0, 1.0, 2 * math.pi, 10.5])
def test_realpart_zero(H):
    assert realpart_zero_check(H, 1e-10) < 1e-10


def test_realpart_zero_H0_integral_is_i():
    from gaussres.contour import arc_limit_value

    assert arc_limit_value(0.0).value == pytest.approx(1j, abs=1e-14)


@pytest.mark.parametrize("n, tol", [(1, 1e-8), (3, 1e-8), (10, 1e-7)])
def test_decomposition(n, tol):
    assert decomposition_check(n, tol) < tol
