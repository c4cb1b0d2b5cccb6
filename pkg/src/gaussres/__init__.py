"""Numerical verification of the residue-theorem proof of the Gaussian integral.

The library evaluates 1/(exp(z**2) + 1) stably, enumerates its poles and
residues, integrates it over the semicircular contours G_n, and checks the
sequence, series, and zeta identities that carry the finite-n balance to
the limit.
"""

from .contour import (
    ContourBalance,
    ContourSpec,
    arc_integral,
    arc_limit_scan,
    build_contour,
    decomposition_check,
    realpart_zero_check,
    residue_theorem_check,
    segment_integral,
    small_radius_check,
)
from .poles import (
    Family,
    Pole,
    enumerate_poles,
    residue_closed_form,
    residue_numeric_oracle,
    residue_sum_rhs,
)
from .quadrature import (
    QuadResult,
    RefinementSeed,
    integrate_adaptive,
    integrate_semi_infinite,
    integrate_whole_line,
)
from .report import VerificationReport, emit_series, run_suite
from .series import (
    SequenceRecord,
    eta_accelerated,
    extrapolate_seq_a,
    f_general_check,
    final_gaussian_checks,
    gamma_fn,
    geometric_partial_check,
    identity_checks,
    monotonicity_scan,
    seq_values,
    tail_b,
    zeta_from_eta,
    zeta_limit_partial,
)
from .stable_eval import (
    DEFAULT_POLICY,
    EvalPolicy,
    arc_integrand,
    damped_integrand,
    fermi_integrand,
)

__version__ = "0.1.0"
