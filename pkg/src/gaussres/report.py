"""Verification suites, JSON reports, and CSV convergence series."""

from dataclasses import asdict, dataclass, field
import csv
import io
import json
import math
import sys
import time

import numpy as np

from . import contour, series
from .errors import BalanceFailed, InvalidOverride, IoFailure, UnknownKind, UnknownSuite

SUITES = ("contour", "sequences", "series", "zeta", "gaussian")
ALL = "all"
KINDS = ("seq_a", "arc_limit", "zeta_partial", "tail_b")

ZETA_HALF_REF = -1.4603545088

DEFAULTS = {
    "n_max": 10,
    "tol": None,  # None keeps each check's own tolerance
    "terms": series.DEFAULT_ETA_TERMS,
    "y_list": (1.0, 1.5, 2.0, 3.0, 4.0),
}


@dataclass
class CheckResult:
    id: str
    equation_tag: str
    status: str
    discrepancy: float
    tolerance: float
    evaluations: int
    wall_time: float

    @property
    def passed(self):
        return self.status == "pass"


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def summary(self):
        passed = sum(c.passed for c in self.checks)
        return {"passed": passed, "failed": len(self.checks) - passed, "total": len(self.checks)}

    @property
    def exit_code(self):
        return 0 if self.summary["failed"] == 0 else 1

    def to_dict(self, timing=True):
        checks = [asdict(c) for c in self.checks]
        if not timing:
            for c in checks:
                c.pop("wall_time")
        return {"suite": self.suite, "checks": checks, "summary": self.summary}

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), indent=2) + "\n"


def validate_params(params):
    """Merge overrides onto the defaults, rejecting unknown keys and bad values."""
    params = dict(params or {})
    unknown = set(params) - set(DEFAULTS)
    if unknown:
        raise InvalidOverride(f"unknown override(s): {', '.join(sorted(unknown))}")
    merged = {**DEFAULTS, **{k: v for k, v in params.items() if v is not None}}
    n_max = merged["n_max"]
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
        raise InvalidOverride(f"n_max must be a positive integer, got {n_max!r}")
    tol = merged["tol"]
    if tol is not None and not (isinstance(tol, (int, float)) and math.isfinite(tol) and tol > 0):
        raise InvalidOverride(f"tol must be a positive number, got {tol!r}")
    terms = merged["terms"]
    if isinstance(terms, bool) or not isinstance(terms, int) or terms < 4:
        raise InvalidOverride(f"terms must be an integer >= 4, got {terms!r}")
    try:
        y_list = tuple(float(y) for y in merged["y_list"])
    except (TypeError, ValueError):
        raise InvalidOverride(f"y_list must be a list of numbers, got {merged['y_list']!r}")
    if not y_list or any(not y > 0 for y in y_list):
        raise InvalidOverride("y_list entries must be positive")
    merged["y_list"] = y_list
    return merged


class _Runner:
    """Collects check results; ``tol`` overrides every tolerance-based check."""

    def __init__(self, report, tol_override):
        self.report = report
        self.tol_override = tol_override

    def check(self, check_id, tag, tolerance, fn, fixed_tolerance=False):
        """Run ``fn() -> (discrepancy, evaluations)`` and record pass/fail.

        Checks with ``fixed_tolerance`` are bound or yes/no checks whose
        threshold is part of the statement and is not overridden.
        """
        if self.tol_override is not None and not fixed_tolerance:
            tolerance = self.tol_override
        start = time.perf_counter()
        try:
            discrepancy, evaluations = fn(tolerance)
        except BalanceFailed as exc:
            discrepancy, evaluations = exc.discrepancy, 0
        except ArithmeticError:
            discrepancy, evaluations = math.inf, 0
        elapsed = time.perf_counter() - start
        discrepancy = float(discrepancy)
        status = "pass" if discrepancy <= tolerance else "fail"
        self.report.checks.append(CheckResult(
            check_id, tag, status, discrepancy, float(tolerance), int(evaluations), elapsed))


def _flag(ok):
    return 0.0 if ok else 1.0


def _contour_suite(run, p):
    for n in range(1, p["n_max"] + 1):
        tol = contour.default_tolerance(n)

        def eq3(t, n=n):
            b = contour.residue_theorem_check(n, t)
            return b.discrepancy, b.evaluations

        def eq5(t, n=n):
            return contour.decomposition_check(n, t), 0

        def eq6(_, n=n):
            seg = contour.segment_integral(n, 1e-12).value
            bound = contour.segment_bound(n)
            return _flag(0 < seg < bound <= math.pi / math.sqrt(2)), 0

        run.check(f"contour.residue_balance.n{n}", "Eq3", tol, eq3)
        run.check(f"contour.decomposition.n{n}", "Eq5", tol, eq5)
        run.check(f"contour.segment_bound.n{n}", "Eq6", 0.0, eq6, fixed_tolerance=True)


def _sequences_suite(run, p):
    n_ident = 10**4
    cache = {}

    def residuals():
        if "r" not in cache:
            cache["r"] = series.identity_residuals(n_ident).max(axis=0)
        return cache["r"]

    for i, tag in enumerate(("Eq10", "Eq11", "Eq12")):
        run.check(f"sequences.identity.{tag.lower()}", tag, 1e-10,
                  lambda _, i=i: (residuals()[i], 0))

    run.check("sequences.monotonicity", "Eq8-mono", 0.0,
              lambda _: (_flag(series.monotonicity_scan(10**5)), 0), fixed_tolerance=True)

    def tails(_):
        ns = [2**j for j in range(9)]
        vals = [series.tail_b(n) for n in ns]
        mags = [abs(v) for v, _ in vals]
        ok = all(m <= b for m, (_, b) in zip(mags, vals)) and all(np.diff(mags) < 0)
        return _flag(ok), 0

    run.check("sequences.tail_decay", "S1-tail", 0.0, tails, fixed_tolerance=True)

    def geometric(_):
        cases = [(0.0, 5), (0.5, 5), (math.exp(-1), 10), (-0.5, 7), (0.9, 20)]
        return max(series.geometric_partial_check(x, n) for x, n in cases), 0

    run.check("sequences.geometric_sum", "S1-geom", 1e-15, geometric)

    def eq8_limit(_):
        pairs = [(n, series.seq_a(n)) for n in (10**4, 4 * 10**4)]
        return abs(series.extrapolate_seq_a(pairs) - series.eta_accelerated(0.5, p["terms"])), 0

    run.check("sequences.seq_a_limit", "Eq8", 1e-6, eq8_limit)


def _series_suite(run, p):
    terms = p["terms"]
    direct = {}

    def eta_vs_direct(s):
        if s not in direct:
            direct[s] = series.eta_direct(s)
        return abs(series.eta_accelerated(s, terms) - direct[s])

    run.check("series.eta.s0.5", "S2-eta", 1e-9, lambda _: (eta_vs_direct(0.5), 0))
    for s in (0.3, 1.0, 2.0):
        run.check(f"series.eta.s{s:g}", "S2-eta", 1e-8, lambda _, s=s: (eta_vs_direct(s), 0))

    n_list = (1, 4, 16, 64)
    scan = {}

    def arc_points():
        if "pts" not in scan:
            scan["pts"] = contour.arc_limit_scan(n_list, 1e-11)
        return scan["pts"]

    def arc_limit(_):
        pts = arc_points()
        gaps = [abs(pt.value - math.sqrt(2)) for pt in pts]
        ok = all(np.diff(gaps) < 0) and gaps[-1] < 5e-2
        return _flag(ok), sum(pt.evaluations for pt in pts)

    run.check("series.arc_limit", "Eq7", 0.0, arc_limit, fixed_tolerance=True)
    run.check("series.arc_limit_real_part", "S2-re", 1e-9,
              lambda _: (max(abs(pt.real_part) for pt in arc_points()), 0))

    for H in (0.5, 1.0, 1.7):
        run.check(f"series.small_radius.H{H:g}", "S2-small", 1e-9,
                  lambda t, H=H: (contour.small_radius_check(H, t), 0))
    for label, H in (("-3", -3.0), ("0", 0.0), ("1", 1.0), ("2pi", 2 * math.pi)):
        run.check(f"series.real_part_zero.H{label}", "S2-re", 1e-10,
                  lambda t, H=H: (contour.realpart_zero_check(H, t), 0))

    for y in p["y_list"]:
        def fy(t, y=y):
            c = series.f_general_check(y, t)
            return c.discrepancy, c.evaluations

        run.check(f"series.f_general.y{y:g}", "S2-fy", 1e-8, fy)
    run.check("series.f_general.ln2", "S2-fy", 1e-12,
              lambda _: (abs(series.f_general(1.0).value - math.log(2)), 0))


def _zeta_suite(run, p):
    terms = p["terms"]
    run.check("zeta.half.eta_route", "S2-zeta", 1e-8,
              lambda _: (abs(series.zeta_from_eta(0.5, terms) - ZETA_HALF_REF), 0))
    run.check("zeta.half.truncated_route", "S2-zeta", 1e-5,
              lambda _: (abs(series.zeta_half_extrapolated(10**6)
                             - series.zeta_from_eta(0.5, terms)), 0))

    def t_limit(_):
        n = 10**6
        pairs = [(m, series.seq_t(m)) for m in (n // 4, n)]
        return abs(series.extrapolate_sqrt(pairs) + series.zeta_from_eta(0.5, terms)), 0

    run.check("zeta.seq_t_limit", "Eq9", 1e-5, t_limit)
    run.check("zeta.gamma", "S2-gamma", 1e-12, lambda _: (max(
        abs(series.gamma_fn(0.5) / math.sqrt(math.pi) - 1),
        abs(series.gamma_fn(1.0) - 1),
        abs(series.gamma_fn(1 / 3) / 2.678938534707747633655692940974677644129 - 1),
    ), 0))


def _gaussian_suite(run, p):
    cache = {}

    def report():
        if "r" not in cache:
            cache["r"] = series.final_gaussian_checks(math.inf, p["terms"])
        return cache["r"]

    run.check("gaussian.fermi_vs_eta", "yessum", 1e-8,
              lambda _: (report().fermi_vs_eta, report().evaluations))
    run.check("gaussian.gaussian_integral", "Gauss", 1e-10,
              lambda _: (report().gaussian_vs_sqrt_pi, 0))
    run.check("gaussian.zeta_form", "S2-zeta", 1e-8,
              lambda _: (report().zeta_vs_fermi, 0))


_SUITE_FUNCS = {
    "contour": _contour_suite,
    "sequences": _sequences_suite,
    "series": _series_suite,
    "zeta": _zeta_suite,
    "gaussian": _gaussian_suite,
}


def run_suite(suite, params=None):
    """Run a named suite (or ``all``) and return its VerificationReport."""
    if suite != ALL and suite not in _SUITE_FUNCS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join((*SUITES, ALL))}")
    p = validate_params(params)
    report = VerificationReport(suite)
    run = _Runner(report, p["tol"])
    for name in (SUITES if suite == ALL else (suite,)):
        _SUITE_FUNCS[name](run, p)
    return report


# -- CSV series ---------------------------------------------------------------

def _series_rows(kind, n_list):
    if kind == "seq_a":
        ref = series.eta_accelerated(0.5)
        return [(n, series.seq_a(n), ref) for n in n_list]
    if kind == "arc_limit":
        ref = math.sqrt(2)
        return [(pt.n, pt.value, ref) for pt in contour.arc_limit_scan(n_list)]
    if kind == "zeta_partial":
        ref = series.zeta_from_eta(0.5)
        return [(n, series.zeta_limit_partial(0.5, n), ref) for n in n_list]
    if kind == "tail_b":
        return [(n, series.tail_b(n)[0], 0.0) for n in n_list]
    raise UnknownKind(f"unknown series kind {kind!r}; choose from {', '.join(KINDS)}")


def emit_series(kind, n_list, path=None):
    """Write ``n,value,reference,abs_error`` rows as CSV; return the row count.

    ``path`` of None or ``-`` writes to standard output.
    """
    if kind not in KINDS:
        raise UnknownKind(f"unknown series kind {kind!r}; choose from {', '.join(KINDS)}")
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list must be non-empty")
    if any(n < 1 for n in n_list) or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be positive and strictly ascending")
    rows = _series_rows(kind, n_list)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "value", "reference", "abs_error"])
    for n, value, ref in rows:
        writer.writerow([n, repr(float(value)), repr(float(ref)), repr(abs(value - ref))])
    text = buf.getvalue()

    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc
    return len(rows)

