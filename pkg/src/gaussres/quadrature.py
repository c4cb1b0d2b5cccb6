"""Adaptive Gauss-Kronrod quadrature.

The 7-point Gauss / 15-point Kronrod pair is applied to every panel at
once (the integrand is called on a 2-D array of nodes), and every panel
whose error estimate exceeds its share of the tolerance is bisected.  A
panel's share is proportional to its width, so the accepted errors sum to
at most ``tol``.

Integrands must accept a numpy array and return an array of the same
shape (real or complex).  Complex integrands share one panel schedule for
both components; the error of a panel is the modulus of the complex
Kronrod-minus-Gauss difference.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DecayAssumptionViolated, NonFiniteSample, QuadratureNotConverged

# Kronrod abscissae on [-1, 1]; odd indices are the Gauss nodes.
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # 15 ascending nodes
KRONROD_W = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_W = np.zeros(15)
GAUSS_W[1:7:2] = _WG[:3]
GAUSS_W[7] = _WG[3]
GAUSS_W[9:14:2] = _WG[2::-1]

_EPS = np.finfo(float).eps
DEFAULT_MAX_EVALS = 10**6


@dataclass
class QuadResult:
    """Outcome of one quadrature call."""

    value: complex | float
    error_estimate: float
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class RefinementSeed:
    """Parameter values forced to be panel boundaries at the first level."""

    locations: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "locations", tuple(float(x) for x in self.locations))

    def inside(self, a, b):
        return sorted({x for x in self.locations if a < x < b})


def _as_seed(seeds):
    if seeds is None:
        return RefinementSeed()
    if isinstance(seeds, RefinementSeed):
        return seeds
    return RefinementSeed(tuple(seeds))


def _rule(f, lo, hi):
    """Apply the Kronrod/Gauss pair to many panels at once."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * NODES[None, :]
    y = np.asarray(f(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise NonFiniteSample(f"integrand is not finite at {bad!r}")
    kron = half * (y @ KRONROD_W)
    gauss = half * (y @ GAUSS_W)
    resabs = half * (np.abs(y) @ KRONROD_W)
    diff = np.abs(kron - gauss)
    floor = 50.0 * _EPS * resabs
    return kron, np.maximum(diff, floor), diff <= floor


def _fsum(values):
    values = np.asarray(values)
    if np.iscomplexobj(values):
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def integrate_adaptive(f, a, b, tol=1e-10, seeds=None, max_evals=DEFAULT_MAX_EVALS,
                       raise_on_failure=True):
    """Integrate ``f`` over [a, b] to absolute tolerance ``tol``.

    Raises QuadratureNotConverged when the evaluation budget runs out
    (unless ``raise_on_failure`` is False, in which case the best estimate
    is returned with ``converged=False``).
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")
    length = b - a
    edges = np.array([a, *_as_seed(seeds).inside(a, b), b])
    lo, hi = edges[:-1], edges[1:]

    done_val, done_err, done_lo = [], [], []
    evaluations = 0
    converged = True
    while True:
        val, err, at_floor = _rule(f, lo, hi)
        evaluations += 15 * lo.size
        width = hi - lo
        # panels at rounding level or too narrow to split are accepted as
        # they stand; the total error still decides convergence
        tiny = width <= 64 * _EPS * max(abs(a), abs(b), length)
        ok = (err <= tol * width / length) | tiny | at_floor
        done_val.append(val[ok])
        done_err.append(err[ok])
        done_lo.append(lo[ok])
        if ok.all():
            break
        lo, hi = lo[~ok], hi[~ok]
        if evaluations + 30 * lo.size > max_evals:
            converged = False
            done_val.append(val[~ok])
            done_err.append(err[~ok])
            done_lo.append(lo)
            break
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])

    order = np.argsort(np.concatenate(done_lo), kind="stable")
    value = _fsum(np.concatenate(done_val)[order])
    error = math.fsum(np.concatenate(done_err)[order])
    converged = converged and error <= tol
    result = QuadResult(value, error, evaluations, converged)
    if not converged and raise_on_failure:
        raise QuadratureNotConverged(
            f"error estimate {error:.3e} > tol {tol:.1e} after {evaluations} evaluations",
            result,
        )
    return result


TAIL_PROBE = 1e3


def integrate_semi_infinite(f, tol=1e-10, max_evals=DEFAULT_MAX_EVALS):
    """Integrate ``f`` over [0, inf) via x = t/(1-t).

    The integrand must decay fast; a probe at x = 1000 checks that the
    neglected tail is below tolerance before integrating.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    probe = abs(complex(np.asarray(f(np.array([TAIL_PROBE])))[0]))
    if not math.isfinite(probe) or probe * TAIL_PROBE > tol:
        raise DecayAssumptionViolated(
            f"|f({TAIL_PROBE:g})| = {probe:.3e} is too large for a convergent tail"
        )

    def mapped(t):
        s = 1.0 - t
        return f(t / s) / (s * s)

    return integrate_adaptive(mapped, 0.0, 1.0, tol, max_evals=max_evals)


def integrate_whole_line(f, tol=1e-10, max_evals=DEFAULT_MAX_EVALS):
    """Integral over the real line of an even integrand: twice the half line."""
    half = integrate_semi_infinite(f, tol / 2, max_evals)
    return QuadResult(2 * half.value, 2 * half.error_estimate, half.evaluations, half.converged)
