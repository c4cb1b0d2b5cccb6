"""Upper-half-plane poles of 1/(exp(z**2) + 1) and their residues."""

from dataclasses import dataclass
import enum
import math

import numpy as np

from .errors import NotAPole, RadiusTooLarge
from .quadrature import integrate_adaptive
from .stable_eval import as_point, fermi_integrand

SQRT_2PI = math.sqrt(2 * math.pi)
LATTICE_TOL = 1e-10


class Family(enum.Enum):
    A = "A"  # first quadrant, (1 + i) sqrt((2k+1) pi / 2)
    B = "B"  # second quadrant, (i - 1) sqrt((2k+1) pi / 2)


@dataclass(frozen=True)
class Pole:
    family: Family
    k: int
    location: complex
    residue: complex

    @property
    def modulus(self):
        return math.sqrt((2 * self.k + 1) * math.pi)


def pole_location(family, k):
    if k < 0:
        raise ValueError("k must be non-negative")
    r = math.sqrt((2 * k + 1) * math.pi / 2)
    return complex(r, r) if Family(family) is Family.A else complex(-r, r)


def _lattice_index(c):
    """(family, k) of the upper-half-plane pole nearest c, and its distance."""
    family = Family.A if c.real >= 0 else Family.B
    k = max(0, round((abs(c) ** 2 / math.pi - 1) / 2))
    best = None
    for kk in (k - 1, k, k + 1):
        if kk < 0:
            continue
        d = abs(c - pole_location(family, kk))
        if best is None or d < best[2]:
            best = (family, kk, d)
    return best


def residue_closed_form(c):
    """Residue of 1/(exp(z**2) + 1) at the pole c, which is -1/(2c).

    Raises NotAPole unless c is within 1e-10 of an upper-half-plane pole.
    """
    c = as_point(c)
    if c.imag <= 0:
        raise NotAPole(f"{c!r} is not in the upper half plane")
    _, _, d = _lattice_index(c)
    if d > LATTICE_TOL:
        raise NotAPole(f"{c!r} is {d:.3e} from the nearest pole")
    return -1 / (2 * c)


def enumerate_poles(k_max):
    """A_0..A_{k_max} followed by B_0..B_{k_max}."""
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    poles = []
    for family in (Family.A, Family.B):
        for k in range(k_max + 1):
            c = pole_location(family, k)
            poles.append(Pole(family, k, c, -1 / (2 * c)))
    return poles


def neighbour_distance(pole):
    """Distance from a pole to the closest other zero of exp(z**2) + 1.

    On each ray the outward neighbour is nearer than the inward one; the
    zeros on the adjacent rays are |c| * sqrt(2) away.
    """
    r = pole.modulus
    outward = math.sqrt((2 * pole.k + 3) * math.pi) - r
    return min(outward, r * math.sqrt(2))


def residue_numeric_oracle(pole, radius, tol=1e-12):
    """Residue by quadrature of the integrand around a small circle.

    (1/2 pi i) * integral of f(c + r e^{it}) i r e^{it} dt over [0, 2 pi]
    reduces to (r/2pi) * integral of f(c + r e^{it}) e^{it} dt.
    """
    limit = 0.5 * neighbour_distance(pole)
    if not 0 < radius < limit:
        raise RadiusTooLarge(f"radius {radius} must lie in (0, {limit:.6g})")
    c = pole.location

    def integrand(t):
        rot = np.exp(1j * t)
        return fermi_integrand(c + radius * rot) * rot

    # the integrand is O(1/r) so scale the tolerance to the returned value
    res = integrate_adaptive(integrand, 0.0, 2 * math.pi, tol * 2 * math.pi / radius)
    return complex(res.value * radius / (2 * math.pi))


def residue_sum_rhs(n):
    """2 pi i times the residues of A_0..A_{n-1}, B_0..B_{n-1}: a real number."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -SQRT_2PI * math.fsum(1 / math.sqrt(2 * k + 1) for k in range(n))


def residue_sum_complex(n):
    """The same sum formed directly from the complex residues."""
    total = complex(0.0)
    for p in enumerate_poles(n - 1):
        total += p.residue
    return 2j * math.pi * total
