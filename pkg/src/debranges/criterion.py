"""Decision procedure on spectra: conditions (C1), (C2), (C3).

Given the zero sets of two pencil members (the spectra of two
selfadjoint extensions), the three conditions decide whether the space
contains a zero-free entire function, i.e. whether the underlying
symmetric operator admits an entire gauge:

* (C1) the symmetric sum of reciprocal zeros converges;
* (C2) positive and negative zeros have equal, finite density;
* (C3) the series of |1 / (h_0(x_n) h_gamma'(x_n))| converges, built
  from canonical products over the two zero sets.

Finite zero sets satisfy everything trivially; truncated infinite data
yields holds / fails only on decisive evidence and is inconclusive
otherwise.  Every status carries the trace that justifies it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InconclusiveProductError, InvalidSpectraError
from .products import (
    DEFAULT_SCHEDULE,
    TruncationSchedule,
    canonical_product as _raw_product,
    product_derivative_at_zero as _raw_derivative,
    symmetric_partial_sums,
)
from .zeros import ZeroSequence, interlace_check

__all__ = [
    "Status",
    "Overall",
    "CriterionConfig",
    "CheckResult",
    "CriterionVerdict",
    "canonical_product",
    "product_derivative_at_zero",
    "check_c1",
    "check_c2",
    "check_c3",
    "entire_criterion",
]


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class Overall(str, enum.Enum):
    PRESENT = "entire-gauge-present"
    NOT_PRESENT = "not-present"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CriterionConfig:
    """Tolerances and truncation budget of the decision procedure."""

    tol_c1: float = 1e-6          # absolute spread of the last C1 estimates
    c1_window: int = 4            # how many trailing estimates must agree
    tol_c2: float = 1e-3          # relative gap between the two densities
    c2_min_tail: int = 16         # minimum per-side points for a C2 estimate
    tol_c3: float = 1e-8          # Cauchy window for the C3 partial sums
    c3_term_error_cap: float = 1e-7   # max relative product error per term
    c3_min_terms: int = 8         # minimum trusted terms for a C3 verdict
    schedule: TruncationSchedule = DEFAULT_SCHEDULE

    def __post_init__(self):
        if min(self.tol_c1, self.tol_c2, self.tol_c3, self.c3_term_error_cap) <= 0:
            raise ValueError("criterion tolerances must be positive")
        if self.c1_window < 2 or self.c2_min_tail < 4 or self.c3_min_terms < 2:
            raise ValueError("criterion windows are too small")


@dataclass(frozen=True)
class CheckResult:
    status: Status
    trace: dict

    def as_dict(self) -> dict:
        return {"status": self.status.value, "trace": self.trace}


@dataclass(frozen=True)
class CriterionVerdict:
    c1: CheckResult
    c2: CheckResult
    c3: CheckResult
    overall: Overall

    def as_dict(self) -> dict:
        return {
            "c1": self.c1.as_dict(),
            "c2": self.c2.as_dict(),
            "c3": self.c3.as_dict(),
            "overall": self.overall.value,
        }


def _listify(arr, cap: int = 64):
    vals = [float(v) for v in np.asarray(arr, dtype=float).ravel()[:cap]]
    return vals


def _untrustworthy(val, err, rel_cap: float) -> bool:
    vals = np.atleast_1d(val)
    errs = np.atleast_1d(err)
    if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(errs))):
        return True
    worst = np.max(errs - rel_cap * np.maximum(np.abs(vals), 1e-12))
    return bool(worst > 0.0)


def canonical_product(zeros: ZeroSequence, z,
                      schedule: TruncationSchedule = DEFAULT_SCHEDULE,
                      rel_cap: float = 0.05):
    """Canonical-product value with convergence enforcement.

    Same contract as the low-level product, but a non-finite result or a
    truncation error bound exceeding ``rel_cap`` relative to the value
    raises instead of returning an untrustworthy number.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        val, err = _raw_product(zeros, z, schedule)
    if _untrustworthy(val, err, rel_cap):
        raise InconclusiveProductError(
            "canonical product did not converge under its schedule",
            trace=[("value", val), ("error_bound", err)])
    return val, err


def product_derivative_at_zero(zeros: ZeroSequence, x,
                               schedule: TruncationSchedule = DEFAULT_SCHEDULE,
                               rel_cap: float = 0.05):
    """Product derivative at a zero, with convergence enforcement."""
    with np.errstate(over="ignore", invalid="ignore"):
        val, err = _raw_derivative(zeros, x, schedule)
    if _untrustworthy(val, err, rel_cap):
        raise InconclusiveProductError(
            "product derivative did not converge under its schedule",
            trace=[("value", val), ("error_bound", err)])
    return val, err


# ----------------------------------------------------------------------
# (C1): existence of the symmetric reciprocal-zero limit
# ----------------------------------------------------------------------

def check_c1(zeros: ZeroSequence, config: CriterionConfig = CriterionConfig()) -> CheckResult:
    radii, sums = symmetric_partial_sums(zeros, config.schedule)
    trace = {"radii": _listify(radii), "partial_sums": _listify(sums)}
    if not zeros.truncated:
        trace["value"] = float(sums[-1])
        trace["note"] = "finite zero set: the limit exists trivially"
        return CheckResult(Status.HOLDS, trace)
    if sums.size < config.c1_window + 1:
        trace["note"] = "too few truncation radii for a verdict"
        return CheckResult(Status.INCONCLUSIVE, trace)
    window = sums[-config.c1_window:]
    spread = float(np.max(window) - np.min(window))
    trace["spread"] = spread
    trace["value"] = float(np.mean(window))
    if spread <= config.tol_c1:
        return CheckResult(Status.HOLDS, trace)
    # Judge drift on increments per unit of log-radius, and only over
    # full doubling steps: the final data-limited checkpoint covers a
    # shorter log-step with a different truncation boundary, so its
    # increment is not comparable to the ladder's.
    incs = np.diff(sums)
    dlog = np.diff(np.log(np.asarray(radii)))
    full = dlog >= 0.5 * math.log(2.0)
    slopes = (incs[full] / dlog[full])[-config.c1_window:]
    if slopes.size < 2:
        trace["note"] = "too few full doubling steps for a drift verdict"
        return CheckResult(Status.INCONCLUSIVE, trace)
    same_sign = bool(np.all(slopes > 0) or np.all(slopes < 0))
    drifting = (same_sign
                and abs(slopes[-1]) >= 0.5 * abs(slopes[0])
                and abs(slopes[-1]) * math.log(2.0) > config.tol_c1)
    if drifting:
        trace["note"] = "monotone drift with non-vanishing increments"
        return CheckResult(Status.FAILS, trace)
    trace["note"] = "estimates neither settled nor provably drifting"
    return CheckResult(Status.INCONCLUSIVE, trace)


# ----------------------------------------------------------------------
# (C2): equal finite densities of positive and negative zeros
# ----------------------------------------------------------------------

def _density_limit(side_vals: np.ndarray, min_tail: int):
    """Estimate lim n / x_n for one modulus-ordered side.

    Fits r_n = L + c/n on the trailing half; the uncertainty is the
    shift when only the trailing quarter is used instead.
    """
    n = np.arange(1, side_vals.size + 1, dtype=float)
    r = n / side_vals
    if side_vals.size < min_tail:
        return None

    def fit(tail):
        nt = n[-tail:]
        design = np.column_stack([np.ones(tail), 1.0 / nt])
        sol, *_ = np.linalg.lstsq(design, r[-tail:], rcond=None)
        return float(sol[0])

    t_half = max(min_tail, side_vals.size // 2)
    t_quarter = max(min_tail // 2, side_vals.size // 4)
    lim = fit(t_half)
    unc = abs(lim - fit(t_quarter))
    spread_ratio = float(np.abs(r[-1]) / (np.median(np.abs(r)) + 1e-300))
    return lim, unc, spread_ratio


def check_c2(zeros: ZeroSequence, config: CriterionConfig = CriterionConfig()) -> CheckResult:
    if not zeros.truncated:
        trace = {"limit_pos": 0.0, "limit_neg": 0.0, "gap": 0.0,
                 "note": "finite zero set: both densities are zero"}
        return CheckResult(Status.HOLDS, trace)
    sides = []
    for vals in (zeros.positive(), zeros.negative_by_modulus()):
        est = _density_limit(np.asarray(vals, dtype=float), config.c2_min_tail) \
            if len(vals) else (0.0, 0.0, 1.0)
        if est is None:
            return CheckResult(Status.INCONCLUSIVE,
                               {"note": "tail too short for a density estimate",
                                "points": int(len(vals))})
        sides.append(est)
    (lp, up, sp), (ln_, un, sn) = sides
    gap = abs(lp + ln_)
    scale = config.tol_c2 * (abs(lp) + 1.0)
    unc = up + un
    trace = {"limit_pos": lp, "limit_neg": ln_, "gap": gap,
             "uncertainty": unc,
             "points": [len(zeros.positive()), len(zeros.negative_by_modulus())]}
    # A ratio n/x_n that keeps growing along the tail signals an
    # infinite density: the limit does not exist finitely.
    if max(sp, sn) > 2.0:
        trace["note"] = "n/x_n grows along the tail: density not finite"
        return CheckResult(Status.FAILS, trace)
    if gap <= scale:
        return CheckResult(Status.HOLDS, trace)
    if gap > 10.0 * scale and gap > 5.0 * unc:
        trace["note"] = "densities differ beyond estimation uncertainty"
        return CheckResult(Status.FAILS, trace)
    trace["note"] = "density gap within estimation noise but above tolerance"
    return CheckResult(Status.INCONCLUSIVE, trace)


# ----------------------------------------------------------------------
# (C3): convergence of sum |1/(h_0(x_n) h_gamma'(x_n))|
# ----------------------------------------------------------------------

def _c3_terms(zeros_gamma: ZeroSequence, zeros_zero: ZeroSequence,
              config: CriterionConfig):
    """Series terms over the gamma zeros, by increasing modulus, kept
    only while both canonical products are trustworthy at that point."""
    xs_all = zeros_gamma.by_modulus()
    cap = config.c3_term_error_cap
    xs_used, terms = [], []
    exhausted = False
    batch = 64
    start = 0
    while start < xs_all.size and not exhausted:
        xs = xs_all[start:start + batch]
        h0, h0_err = _raw_product(zeros_zero, xs, config.schedule)
        dg, dg_err = _raw_derivative(zeros_gamma, xs, config.schedule)
        prod = np.asarray(h0) * np.asarray(dg)
        perr = np.abs(h0) * np.asarray(dg_err) + np.abs(dg) * np.asarray(h0_err)
        ok = (np.isfinite(prod)
              & (np.abs(prod) > 1e-300)
              & (perr <= cap * np.abs(prod)))
        if zeros_gamma.truncated or zeros_zero.truncated:
            upto = int(np.argmin(ok)) if not bool(np.all(ok)) else xs.size
            exhausted = upto < xs.size
        else:
            if not bool(np.all(ok)):
                raise InconclusiveProductError(
                    "finite-product term failed the reliability cap")
            upto = xs.size
        xs_used.extend(float(v) for v in xs[:upto])
        terms.extend(float(t) for t in 1.0 / np.abs(prod[:upto]))
        start += batch
        batch = min(2 * batch, 512)
    return np.asarray(xs_used), np.asarray(terms)


def check_c3(zeros_gamma: ZeroSequence, zeros_zero: ZeroSequence,
             config: CriterionConfig = CriterionConfig()) -> CheckResult:
    if len(zeros_gamma) == 0:
        return CheckResult(Status.HOLDS, {"sum": 0.0, "terms": [],
                                          "note": "empty series"})
    xs, terms = _c3_terms(zeros_gamma, zeros_zero, config)
    truncated = zeros_gamma.truncated or zeros_zero.truncated
    trace = {"points": _listify(xs), "terms": _listify(terms),
             "trusted_terms": int(terms.size)}
    if not truncated:
        trace["sum"] = float(np.sum(terms))
        trace["note"] = "finite series"
        return CheckResult(Status.HOLDS, trace)
    if terms.size < config.c3_min_terms:
        trace["note"] = "too few trustworthy terms under the truncation budget"
        return CheckResult(Status.INCONCLUSIVE, trace)
    sums = np.cumsum(terms)
    tail_n = max(4, terms.size // 4)
    tail = terms[-tail_n:]
    mask = np.abs(xs) > 0.25
    exponent = float(np.polyfit(np.log(np.abs(xs[mask])),
                                np.log(terms[mask] + 1e-300), 1)[0]) \
        if int(np.sum(mask)) >= 4 else 0.0
    trace["decay_exponent"] = exponent
    trace["partial_sum"] = float(sums[-1])
    cauchy = float(sums[-1] - sums[-1 - tail_n])
    trace["cauchy_window"] = cauchy
    bounded_below = bool(np.min(tail) >= 0.5 * np.median(tail)
                         and np.median(tail) >= 1e-3)
    if bounded_below and exponent >= -0.5:
        trace["note"] = "tail terms bounded below by a positive constant"
        return CheckResult(Status.FAILS, trace)
    if cauchy <= config.tol_c3 and exponent < -1.0:
        trace["note"] = "partial sums Cauchy-settled with decaying terms"
        return CheckResult(Status.HOLDS, trace)
    trace["note"] = "terms neither provably bounded below nor settled"
    return CheckResult(Status.INCONCLUSIVE, trace)


# ----------------------------------------------------------------------
# Aggregate decision
# ----------------------------------------------------------------------

def entire_criterion(sp0: ZeroSequence, sp_gamma: ZeroSequence,
                     config: CriterionConfig = CriterionConfig()) -> CriterionVerdict:
    """Decide entire-gauge presence from the spectra of two extensions.

    ``sp0`` holds the zeros of the beta=0 member (defining h_0);
    ``sp_gamma`` the zeros of the other member.  The two genuine spectra
    must interlace; a violation rejects the input outright.
    """
    inter = interlace_check(sp0, sp_gamma)
    if inter.interlaced is not True:
        raise InvalidSpectraError(
            f"input spectra do not interlace: {inter.detail}",
            first_violation=inter.first_violation)
    c1 = check_c1(sp_gamma, config)
    c2 = check_c2(sp_gamma, config)
    c3 = check_c3(sp_gamma, sp0, config)
    statuses = (c1.status, c2.status, c3.status)
    if all(s == Status.HOLDS for s in statuses):
        overall = Overall.PRESENT
    elif any(s == Status.FAILS for s in statuses):
        overall = Overall.NOT_PRESENT
    else:
        overall = Overall.INCONCLUSIVE
    return CriterionVerdict(c1, c2, c3, overall)
