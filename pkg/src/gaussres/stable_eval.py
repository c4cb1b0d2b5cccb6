"""Overflow-free evaluation of 1/(exp(z**2) + 1) and the integrands built on it.

Every function accepts a scalar or a numpy array and returns the same
shape.  Scalars come back as plain ``complex`` / ``float``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import NonFinite, PoleProximity

SQRT_PI = math.sqrt(math.pi)

# unit vectors along the four rays that carry the zeros of exp(z**2) + 1
_RAYS = np.exp(1j * np.pi * np.array([0.25, 0.75, 1.25, 1.75]))


@dataclass(frozen=True)
class EvalPolicy:
    """Numerical guards for integrand evaluation.

    overflow_threshold: when |Re(z**2)| exceeds this, only the decaying
        exponential is formed and the ``1 +`` in the denominator is dropped.
    pole_guard: evaluation closer than this to a pole raises PoleProximity.
    """

    overflow_threshold: float = 700.0
    pole_guard: float = 1e-8

    def __post_init__(self):
        if not self.overflow_threshold > 0:
            raise ValueError("overflow_threshold must be positive")
        if not self.pole_guard > 0:
            raise ValueError("pole_guard must be positive")


DEFAULT_POLICY = EvalPolicy()


def as_point(z):
    """Coerce to complex, rejecting NaN and infinities."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFinite(f"non-finite point {z!r}")
    return z


def _check_finite(arr, what="argument"):
    if not np.all(np.isfinite(arr)):
        raise NonFinite(f"non-finite {what}")


def _unwrap(result, scalar):
    return result[()] if scalar else result


def pole_distance(z):
    """Distance from z to the nearest zero of exp(z**2) + 1.

    The zeros sit at sqrt((2k+1)*pi) along the four diagonal rays, so the
    nearest one is found by projecting onto each ray and rounding the
    projected radius to the two closest admissible odd multiples of pi.
    """
    z = np.asarray(z, dtype=complex)
    zz = z[..., None]
    t = np.maximum((zz * np.conj(_RAYS)).real, SQRT_PI)
    m = t * t / np.pi
    m_lo = np.maximum(2.0 * np.floor((m - 1.0) / 2.0) + 1.0, 1.0)
    d_lo = np.abs(zz - np.sqrt(np.pi * m_lo) * _RAYS)
    d_hi = np.abs(zz - np.sqrt(np.pi * (m_lo + 2.0)) * _RAYS)
    d = np.minimum(d_lo, d_hi).min(axis=-1)
    return d[()] if d.ndim == 0 else d


def square_pole_distance(w):
    """Distance from w to the nearest point i*pi*m with m odd."""
    w = np.asarray(w, dtype=complex)
    m = 2.0 * np.round((w.imag / np.pi - 1.0) / 2.0) + 1.0
    d = np.abs(w - 1j * np.pi * m)
    return d[()] if d.ndim == 0 else d


def _guard(points, distance, policy):
    bad = distance < policy.pole_guard
    if np.any(bad):
        idx = np.argmax(np.ravel(bad))
        raise PoleProximity(
            complex(np.ravel(points)[idx]), float(np.ravel(distance)[idx]), policy.pole_guard
        )


def fermi_of_square(w, policy=DEFAULT_POLICY):
    """1/(exp(w) + 1) using whichever exponential cannot overflow.

    No pole check is made here; callers guard in whatever coordinate they
    own (z or w).
    """
    w = np.asarray(w, dtype=complex)
    pos = w.real >= 0
    e = np.exp(np.where(pos, -w, w))  # Re <= 0, so |e| <= 1
    out = np.where(pos, e / (1.0 + e), 1.0 / (e + 1.0))
    far = np.abs(w.real) > policy.overflow_threshold
    if np.any(far):
        out = np.where(far & pos, e, out)
        out = np.where(far & ~pos, 1.0 - e, out)
    return out


def fermi_integrand(z, policy=DEFAULT_POLICY):
    """Evaluate 1/(exp(z**2) + 1).

    Raises NonFinite for NaN/inf input and PoleProximity within
    ``policy.pole_guard`` of a pole.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    _check_finite(z)
    _guard(z, pole_distance(z), policy)
    return _unwrap(fermi_of_square(z * z, policy), scalar)


def fermi_real(x):
    """1/(exp(x**2) + 1) for real x; never overflows."""
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    e = np.exp(-x * x)
    return _unwrap(e / (1.0 + e), scalar)


def damped_integrand(x, n):
    """exp(-n x**2) / (exp(x**2) + 1), written as exp(-(n+1)x**2)/(1+exp(-x**2))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    _check_finite(x)
    x2 = x * x
    return _unwrap(np.exp(-(n + 1) * x2) / (1.0 + np.exp(-x2)), scalar)


def semicircle_term(v, radius, policy=DEFAULT_POLICY):
    """i R e^{iv} / (exp(R^2 e^{2iv}) + 1): the arc integrand for radius R."""
    scalar = np.ndim(v) == 0
    v = np.asarray(v, dtype=float)
    _check_finite(v, "angle")
    rot = np.exp(1j * v)
    z = radius * rot
    _guard(z, pole_distance(z), policy)
    w = (radius * radius) * np.exp(2j * v)
    return _unwrap(1j * z * fermi_of_square(w, policy), scalar)


def arc_integrand(v, n, policy=DEFAULT_POLICY):
    """Arc integrand of the contour G_n at angle v, radius sqrt(2 n pi)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v_arr = np.asarray(v, dtype=float)
    if np.any((v_arr < 0) | (v_arr > np.pi)):
        raise ValueError("v must lie in [0, pi]")
    return semicircle_term(v, math.sqrt(2 * n * math.pi), policy)


def unit_arc_term(v, scale, policy=DEFAULT_POLICY):
    """e^{iv} / (exp(scale * e^{2iv}) + 1) for real ``scale`` of either sign."""
    scalar = np.ndim(v) == 0
    v = np.asarray(v, dtype=float)
    _check_finite(v, "angle")
    w = scale * np.exp(2j * v)
    _guard(w, square_pole_distance(w), policy)
    return _unwrap(np.exp(1j * v) * fermi_of_square(w, policy), scalar)
