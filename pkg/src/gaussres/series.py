"""Sequences, alternating series, eta/zeta/gamma, and the closing Gaussian identities.

Naming: ``seq_a`` is 2 sqrt(n) - sqrt(2) sum_{k<n} (2k+1)^{-1/2}, ``seq_t`` is
2 sqrt(n) - sum_{k<=n} k^{-1/2}, ``seq_alt`` is the alternating sum over
2n terms, and ``tail_b`` is the signed remainder integral.  All k-indexed
sums go through math.fsum (correctly rounded) or a Neumaier running sum.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import BalanceFailed, BoundViolated, DegenerateNodes, PoleAtOne
from .quadrature import integrate_semi_infinite, integrate_whole_line
from .stable_eval import damped_integrand, fermi_real

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)

DEFAULT_ETA_TERMS = 40


# -- summation -----------------------------------------------------------------

def neumaier_cumsum(terms):
    """Running sums with Neumaier compensation, one entry per prefix."""
    terms = np.asarray(terms, dtype=float)
    out = np.empty_like(terms)
    s = 0.0
    c = 0.0
    for i, t in enumerate(terms.tolist()):
        u = s + t
        if abs(s) >= abs(t):
            c += (s - u) + t
        else:
            c += (t - u) + s
        s = u
        out[i] = s + c
    return out


def _inv_sqrt(k):
    return 1.0 / np.sqrt(np.asarray(k, dtype=float))


def alt_sum(m):
    """sum_{k=1}^{m} (-1)^{k+1} / sqrt(k)."""
    k = np.arange(1, m + 1)
    return math.fsum(np.where(k % 2 == 1, 1.0, -1.0) * _inv_sqrt(k))


# -- sequences -----------------------------------------------------------------

def seq_a(n):
    return math.fsum([2 * math.sqrt(n), *(-SQRT2 * _inv_sqrt(2 * np.arange(n) + 1))])


def seq_t(n):
    return math.fsum([2 * math.sqrt(n), *(-_inv_sqrt(np.arange(1, n + 1)))])


def seq_alt(n):
    return alt_sum(2 * n)


@dataclass(frozen=True)
class SequenceRecord:
    n: int
    seq_a: float
    seq_t: float
    seq_alt: float
    residual_eq10: float
    residual_eq11: float
    residual_eq12: float


def identity_checks(n):
    """Residuals of the three algebraic identities linking seq_a, seq_t, seq_alt.

    eq10: T_n = A_n + sqrt(2) f_n
    eq11: A_n + T_n = sqrt(2) T_{2n}
    eq12: sqrt(2) A_{2n} - 2 A_n = sqrt(2) alt(2n) - 2 alt(4n)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a, t, f = seq_a(n), seq_t(n), seq_alt(n)
    r10 = abs(t - a - SQRT2 * f)
    r11 = abs(a + t - SQRT2 * seq_t(2 * n))
    r12 = abs(SQRT2 * seq_a(2 * n) - 2 * a - SQRT2 * alt_sum(2 * n) + 2 * alt_sum(4 * n))
    return r10, r11, r12


def seq_values(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    return SequenceRecord(n, seq_a(n), seq_t(n), seq_alt(n), *identity_checks(n))


@dataclass(frozen=True)
class SequenceTable:
    """seq_a, seq_t, seq_alt for n = 1..n_max, indexed by n (entry 0 unused)."""

    a: np.ndarray
    t: np.ndarray
    alt_prefix: np.ndarray  # alt_prefix[m] = alt_sum(m)

    def alt(self, n):
        return self.alt_prefix[2 * n]


def sequence_table(n_max):
    """All sequence values up to 2 n_max (so doubled indices are available)."""
    m = 4 * n_max
    k = np.arange(1, m + 1, dtype=float)
    inv = 1.0 / np.sqrt(k)
    sign = np.where(np.arange(1, m + 1) % 2 == 1, 1.0, -1.0)
    alt_prefix = np.concatenate([[0.0], neumaier_cumsum(sign * inv)])
    harmonic_half = np.concatenate([[0.0], neumaier_cumsum(inv[: 2 * n_max])])
    odd = np.concatenate([[0.0], neumaier_cumsum(1.0 / np.sqrt(2 * np.arange(2 * n_max) + 1.0))])
    idx = np.arange(2 * n_max + 1, dtype=float)
    a = 2 * np.sqrt(idx) - SQRT2 * odd
    t = 2 * np.sqrt(idx) - harmonic_half
    return SequenceTable(a, t, alt_prefix)


def identity_residuals(n_max):
    """Vectorized eq10/eq11/eq12 residuals for n = 1..n_max, shape (n_max, 3)."""
    tab = sequence_table(n_max)
    n = np.arange(1, n_max + 1)
    a, t = tab.a[n], tab.t[n]
    f2n, f4n = tab.alt_prefix[2 * n], tab.alt_prefix[4 * n]
    r10 = np.abs(t - a - SQRT2 * f2n)
    r11 = np.abs(a + t - SQRT2 * tab.t[2 * n])
    r12 = np.abs(SQRT2 * tab.a[2 * n] - 2 * a - SQRT2 * f2n + 2 * f4n)
    return np.column_stack([r10, r11, r12])


def seq_a_increment(n):
    """seq_a(n+1) - seq_a(n) = 2 sqrt(n+1) - 2 sqrt(n) - sqrt(2)/sqrt(2n+1).

    Written as 2/(sqrt(n+1) + sqrt(n)) - 1/sqrt(n + 1/2) so that both terms
    carry full relative precision; the increment is O(n^{-5/2}) and is lost
    entirely if the square roots are subtracted directly.
    """
    n = np.asarray(n, dtype=float)
    return 2 / (np.sqrt(n + 1) + np.sqrt(n)) - 1 / np.sqrt(n + 0.5)


def seq_alt_increment(n):
    """seq_alt(n+1) - seq_alt(n) = 1/sqrt(2n+1) - 1/sqrt(2n+2)."""
    n = np.asarray(n, dtype=float)
    return 1 / np.sqrt(2 * n + 1) - 1 / np.sqrt(2 * n + 2)


@dataclass(frozen=True)
class MonotonicityReport:
    n_max: int
    a_increasing: bool
    alt_increasing: bool
    a_bounded: bool
    alt_bounded: bool
    increment_consistency: float  # max |cumulative increments - summed seq_a|

    def __bool__(self):
        return self.a_increasing and self.alt_increasing and self.a_bounded and self.alt_bounded


def monotonicity_scan(n_max, consistency_tol=1e-11):
    """Check that seq_a and seq_alt increase strictly and stay bounded for n <= n_max.

    seq_a's one-step increments fall below the rounding noise of the summed
    sequence long before n = 10^5, so positivity is checked on the exact
    increments, and their running sum is compared against the directly
    summed seq_a to confirm they describe the same sequence.  The result is
    truthy iff every condition holds.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    n = np.arange(1, n_max)
    da = seq_a_increment(n)
    df = seq_alt_increment(n)

    m = 2 * n_max
    sign = np.where(np.arange(1, m + 1) % 2 == 1, 1.0, -1.0)
    alt = neumaier_cumsum(sign / np.sqrt(np.arange(1, m + 1, dtype=float)))[1::2]
    odd = neumaier_cumsum(1.0 / np.sqrt(2 * np.arange(n_max) + 1.0))
    a = 2 * np.sqrt(np.arange(1, n_max + 1, dtype=float)) - SQRT2 * odd
    a_from_steps = a[0] + np.concatenate([[0.0], neumaier_cumsum(da)])
    consistency = float(np.max(np.abs(a_from_steps - a)))

    return MonotonicityReport(
        n_max,
        a_increasing=bool(np.all(da > 0)) and consistency <= consistency_tol,
        alt_increasing=bool(np.all(df > 0) and np.all(np.diff(alt) > 0)),
        a_bounded=bool(np.all(a >= 0) and np.all(a < math.sqrt(math.pi / 2))),
        alt_bounded=bool(np.all(alt <= 1)),
        increment_consistency=consistency,
    )


def tail_b(n, tol=1e-12, gaussian_verified=True):
    """Signed remainder (-1)^n * integral of exp(-n x^2)/(exp(x^2)+1) over the line.

    The bound is (1/2) * G / sqrt(n), where G is the Gaussian integral:
    sqrt(pi) once that value has been confirmed, otherwise the cruder pi.
    Returns (value, bound); raises BoundViolated if |value| > bound.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    res = integrate_whole_line(lambda x: damped_integrand(x, n), tol)
    value = (-1) ** n * res.value
    gaussian = SQRT_PI if gaussian_verified else math.pi
    bound = gaussian / (2 * math.sqrt(n))
    if abs(value) > bound:
        raise BoundViolated(f"tail at n = {n}", abs(value) - bound, 0.0)
    return value, bound


def geometric_partial_check(x, n):
    """|sum_{w=1}^{n} (-1)^{w+1} x^w - (x - (-1)^n x^{n+1})/(1 + x)|."""
    if not -1 < x < 1:
        raise ValueError("x must lie in (-1, 1)")
    lhs = math.fsum((-1) ** (w + 1) * x**w for w in range(1, n + 1))
    rhs = (x - (-1) ** n * x ** (n + 1)) / (1 + x)
    return abs(lhs - rhs)


# -- eta, zeta, gamma -----------------------------------------------------------

def eta_accelerated(s, terms=DEFAULT_ETA_TERMS):
    """Dirichlet eta by Cohen-Villegas-Zagier acceleration (their Algorithm 1).

    Error is about 2 / (3 + sqrt 8)^terms, i.e. 5.8^-terms.
    """
    if not s > 0:
        raise ValueError("s must be positive")
    if terms < 4:
        raise ValueError("terms must be >= 4")
    d = (3 + math.sqrt(8)) ** terms
    d = (d + 1 / d) / 2
    b = -1.0
    c = -d
    total = 0.0
    for k in range(terms):
        c = b - c
        total += c / (k + 1) ** s
        b = (k + terms) * (k - terms) * b / ((k + 0.5) * (k + 1))
    return total / d


def eta_direct(s, terms=10**7):
    """Partial sum of the eta series with the last two partials averaged.

    Terms are paired as (2j-1)^{-s} - (2j)^{-s} so every summand is positive.
    Averaging consecutive partial sums cancels the leading term of the
    alternating remainder, leaving an O(terms^{-s-1}) error.
    """
    if terms % 2:
        terms += 1
    j = np.arange(1, terms // 2 + 1, dtype=float)
    total = float(np.sum((2 * j - 1) ** -s - (2 * j) ** -s))
    return total + float(terms) ** -s / 2


def zeta_from_eta(s, terms=DEFAULT_ETA_TERMS):
    denom = 1 - 2 ** (1 - s)
    if abs(denom) <= 1e-12:
        raise PoleAtOne(f"zeta has a pole at s = 1 (got s = {s})")
    return eta_accelerated(s, terms) / denom


def zeta_limit_partial(s, n):
    """sum_{k<=n} k^{-s} - n^{1-s}/(1-s); tends to zeta(s) for 0 < s < 1.

    The remainder is n^{-s}/2 + O(n^{-s-1}).
    """
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(1, n + 1, dtype=float)
    return math.fsum([*(k**-s), -(float(n) ** (1 - s)) / (1 - s)])


_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x):
    """Gamma function for x > 0 (Lanczos, g = 7, nine coefficients)."""
    if not x > 0:
        raise ValueError("x must be positive")
    if x < 0.5:
        return gamma_fn(x + 1) / x
    x -= 1
    acc = _LANCZOS[0]
    for i, coef in enumerate(_LANCZOS[1:], start=1):
        acc += coef / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


# -- extrapolation -------------------------------------------------------------

def extrapolate_sqrt(pairs, rate=0.5):
    """Eliminate c in value(n) = L + c * n^{-rate} from the two largest-n pairs."""
    pairs = sorted((float(n), float(v)) for n, v in pairs)
    if len(pairs) < 2:
        raise DegenerateNodes("need at least two (n, value) pairs")
    (n1, v1), (n2, v2) = pairs[-2], pairs[-1]
    if n1 == n2:
        raise DegenerateNodes("n values coincide")
    w1, w2 = n1**rate, n2**rate
    return (w2 * v2 - w1 * v1) / (w2 - w1)


def extrapolate_seq_a(n_pairs, rate=0.5):
    """Limit of seq_a from (n, seq_a(n)) pairs, assuming an n^{-rate} remainder."""
    return extrapolate_sqrt(n_pairs, rate)


def zeta_half_extrapolated(n=10**6):
    """zeta(1/2) from the truncated formula at n/4 and n, sqrt-n extrapolated."""
    return extrapolate_sqrt([(n // 4, zeta_limit_partial(0.5, n // 4)),
                             (n, zeta_limit_partial(0.5, n))])


# -- generalization and closing identities --------------------------------------

@dataclass(frozen=True)
class GeneralCheck:
    y: float
    lhs: float
    rhs: float
    discrepancy: float
    evaluations: int


def f_general(y, tol=1e-12):
    """Quadrature of 1/(exp(x^y) + 1) over [0, inf)."""
    if not y > 0:
        raise ValueError("y must be positive")

    def integrand(x):
        e = np.exp(-(x**y))
        return e / (1.0 + e)

    return integrate_semi_infinite(integrand, tol)


def f_general_series(y, terms=DEFAULT_ETA_TERMS):
    """(1/y) * Gamma(1/y) * eta(1/y)."""
    return gamma_fn(1 / y) * eta_accelerated(1 / y, terms) / y


def f_general_check(y, tol=1e-8):
    res = f_general(y, min(tol, 1e-12))
    rhs = f_general_series(y)
    discrepancy = abs(res.value - rhs)
    if discrepancy > tol:
        raise BalanceFailed(f"f({y}) against Gamma*eta", discrepancy, tol)
    return GeneralCheck(y, res.value, rhs, discrepancy, res.evaluations)


@dataclass(frozen=True)
class GaussianReport:
    fermi_integral: float
    gaussian_integral: float
    sqrt_pi_eta: float
    sqrt_pi_zeta: float
    fermi_vs_eta: float
    gaussian_vs_sqrt_pi: float
    zeta_vs_fermi: float
    evaluations: int


def final_gaussian_checks(tol=1e-10, terms=DEFAULT_ETA_TERMS):
    """The three closing identities, each checked against ``tol``.

    (a) integral of 1/(e^{x^2}+1) = sqrt(pi) eta(1/2)
    (b) integral of e^{-x^2} = sqrt(pi)
    (c) sqrt(pi) zeta(1/2) (1 - sqrt 2) = integral of 1/(e^{x^2}+1)
    """
    fermi = integrate_whole_line(fermi_real, 1e-13)
    gauss = integrate_whole_line(lambda x: np.exp(-x * x), 1e-13)
    sp_eta = SQRT_PI * eta_accelerated(0.5, terms)
    sp_zeta = SQRT_PI * zeta_from_eta(0.5, terms) * (1 - SQRT2)
    report = GaussianReport(
        fermi.value, gauss.value, sp_eta, sp_zeta,
        abs(fermi.value - sp_eta), abs(gauss.value - SQRT_PI), abs(sp_zeta - fermi.value),
        fermi.evaluations + gauss.evaluations,
    )
    for name, d in (("(a) fermi integral vs sqrt(pi) eta(1/2)", report.fermi_vs_eta),
                    ("(b) Gaussian integral vs sqrt(pi)", report.gaussian_vs_sqrt_pi),
                    ("(c) sqrt(pi) zeta(1/2)(1 - sqrt 2) vs fermi integral",
                     report.zeta_vs_fermi)):
        if d > tol:
            raise BalanceFailed(name, d, tol)
    return report
