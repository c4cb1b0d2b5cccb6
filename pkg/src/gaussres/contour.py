"""Finite-n contour identities for 1/(exp(z**2) + 1) on the semicircle G_n.

G_n is the segment [-H, H] closed by the upper semicircle of radius
H = sqrt(2 n pi), which sits strictly between the pole moduli
sqrt((2n-1) pi) and sqrt((2n+1) pi).
"""

from dataclasses import dataclass
import math

from .errors import BalanceFailed, RadiusOutOfRange
from .poles import residue_sum_rhs
from .quadrature import QuadResult, RefinementSeed, integrate_adaptive
from .stable_eval import DEFAULT_POLICY, SQRT_PI, fermi_real, semicircle_term, unit_arc_term

SQRT2 = math.sqrt(2.0)
ARC_SEEDS = RefinementSeed((math.pi / 4, 3 * math.pi / 4))


def default_tolerance(n):
    """Balance tolerance by contour index; spikes on the arc sharpen with n."""
    return 1e-8 if n <= 10 else 1e-6


@dataclass(frozen=True)
class ContourSpec:
    n: int
    radius: float

    @property
    def segment(self):
        return (-self.radius, self.radius)

    @property
    def arc_range(self):
        return (0.0, math.pi)

    @property
    def enclosed_band(self):
        return (math.sqrt((2 * self.n - 1) * math.pi), math.sqrt((2 * self.n + 1) * math.pi))


@dataclass(frozen=True)
class ContourBalance:
    n: int
    segment_value: float
    arc_value: complex
    rhs: float
    discrepancy: float
    evaluations: int = 0


def build_contour(n, radius=None):
    """Contour G_n; ``radius`` may move H inside the pole-free band."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = ContourSpec(n, math.sqrt(2 * n * math.pi) if radius is None else float(radius))
    lo, hi = spec.enclosed_band
    if not lo < spec.radius < hi:
        raise RadiusOutOfRange(f"radius {spec.radius} is outside ({lo}, {hi})")
    return spec


def _segment(radius, tol):
    # the integrand is even: integrate [0, H] and double
    half = integrate_adaptive(fermi_real, 0.0, radius, tol / 2)
    return QuadResult(2 * half.value, 2 * half.error_estimate, half.evaluations, half.converged)


def _arc(radius, tol, policy=DEFAULT_POLICY):
    return integrate_adaptive(
        lambda v: semicircle_term(v, radius, policy), 0.0, math.pi, tol, seeds=ARC_SEEDS
    )


def segment_integral(n, tol=1e-10, radius=None):
    """Integral of 1/(exp(x**2)+1) over [-H_n, H_n]."""
    return _segment(build_contour(n, radius).radius, tol)


def arc_integral(n, tol=1e-10, radius=None, policy=DEFAULT_POLICY):
    """Complex integral over the semicircle of G_n, parametrized by v in [0, pi]."""
    return _arc(build_contour(n, radius).radius, tol, policy)


def residue_theorem_check(n, tol=None, radius=None):
    """Segment + arc must equal 2 pi i times the enclosed residues.

    Raises BalanceFailed when the complex discrepancy exceeds ``tol``.
    """
    tol = default_tolerance(n) if tol is None else tol
    spec = build_contour(n, radius)
    seg = _segment(spec.radius, tol / 4)
    arc = _arc(spec.radius, tol / 4)
    rhs = residue_sum_rhs(n)
    discrepancy = abs(seg.value + arc.value - rhs)
    balance = ContourBalance(n, seg.value, arc.value, rhs, discrepancy,
                             seg.evaluations + arc.evaluations)
    if discrepancy > tol:
        raise BalanceFailed(f"residue theorem on G_{n}", discrepancy, tol)
    return balance


@dataclass(frozen=True)
class ArcLimitPoint:
    """s_n and its companion real part for one contour index."""

    n: int
    value: float
    real_part: float
    evaluations: int


def arc_limit_value(scale, tol=1e-10):
    """Integral over [0, pi] of e^{iv}/(exp(scale e^{2iv}) + 1), complex."""
    return integrate_adaptive(lambda v: unit_arc_term(v, scale), 0.0, math.pi, tol,
                              seeds=ARC_SEEDS)


def arc_limit_scan(n_list, tol=1e-10):
    """s_n = Im of the unit-arc integral at scale 2 n pi, for each n.

    s_n tends to sqrt(2) as n grows; the real part should vanish for every n.
    """
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list must be non-empty")
    points = []
    for n in n_list:
        if n < 1:
            raise ValueError("n must be >= 1")
        res = arc_limit_value(2 * n * math.pi, tol)
        points.append(ArcLimitPoint(n, res.value.imag, res.value.real, res.evaluations))
    return points


def arc_limit_pointwise(v, n):
    """The unit-arc term at scale 2 n pi (tends to e^{iv} or 0 pointwise)."""
    return unit_arc_term(v, 2 * n * math.pi)


def small_radius_check(H, tol=1e-9):
    """With H below the first pole modulus the closed contour integral is zero."""
    if not 0 <= H < SQRT_PI:
        raise RadiusOutOfRange(f"H = {H} must lie in [0, sqrt(pi))")
    if H == 0:
        return 0.0
    seg = _segment(H, tol / 4)
    arc = _arc(H, tol / 4)
    discrepancy = abs(seg.value + arc.value)
    if discrepancy > tol:
        raise BalanceFailed(f"pole-free contour of radius {H}", discrepancy, tol)
    return discrepancy


def realpart_zero_check(H, tol=1e-10):
    """|Re| of the unit-arc integral with H (not H**2) in the exponent."""
    H = float(H)
    if not math.isfinite(H):
        raise ValueError("H must be finite")
    res = arc_limit_value(H, tol / 2)
    discrepancy = abs(res.value.real)
    if discrepancy > tol:
        raise BalanceFailed(f"real part of unit-arc integral at H = {H}", discrepancy, tol)
    return discrepancy


def decomposition_check(n, tol=None):
    """segment + sqrt(2 pi) * sum_{k<n} (2k+1)^{-1/2} against sqrt(2 n pi) * s_n."""
    tol = default_tolerance(n) if tol is None else tol
    spec = build_contour(n)
    seg = _segment(spec.radius, tol / 4)
    s_n = arc_limit_value(2 * n * math.pi, tol / (4 * spec.radius)).value.imag
    lhs = seg.value - residue_sum_rhs(n)
    discrepancy = abs(lhs - spec.radius * s_n)
    if discrepancy > tol:
        raise BalanceFailed(f"segment/arc decomposition at n = {n}", discrepancy, tol)
    return discrepancy


def segment_bound(n):
    """Upper bound on the segment from 1/(e^{x^2}+1) <= 1/(x^2+2).

    Integrating the majorant over [-sqrt(2 n pi), sqrt(2 n pi)] gives
    sqrt(2) * arctan(sqrt(n pi)), itself below pi/sqrt(2).
    """
    return SQRT2 * math.atan(math.sqrt(n * math.pi))

