"""Symmetric-truncation evaluation of canonical products over real zeros.

A product over a truncated-infinite zero set is evaluated at a ladder of
radii, pairing zeros by increasing modulus so that the conditionally
convergent parts cancel, and the ladder is extrapolated to infinite
radius by Neville polynomial extrapolation in 1/r.  The reported error
bound is the difference of the last two extrapolated estimates.  Finite
zero sets are multiplied out exactly and carry a zero bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .zeros import ZeroSequence

__all__ = [
    "TruncationSchedule",
    "canonical_product",
    "product_derivative_at_zero",
    "symmetric_partial_sums",
    "reciprocal_sum_at",
]

# Largest factor-matrix chunk, in scalar entries, held at once.
_CHUNK = 2_000_000


@dataclass(frozen=True)
class TruncationSchedule:
    """Radius ladder for symmetric truncation.

    Radii start at ``r0`` and double ``doublings`` times, clipped to the
    span of the data.  ``levels`` is the depth of the extrapolation
    applied on top of the ladder.
    """

    r0: float = 512.0
    doublings: int = 6
    levels: int = 3

    def __post_init__(self):
        if not (self.r0 > 0.0 and np.isfinite(self.r0)):
            raise ConfigurationError("schedule r0 must be positive and finite")
        if self.doublings < 1:
            raise ConfigurationError("schedule needs at least one doubling")
        if self.levels < 0:
            raise ConfigurationError("extrapolation depth cannot be negative")


DEFAULT_SCHEDULE = TruncationSchedule()


def _nonzero_by_modulus(zeros: ZeroSequence) -> np.ndarray:
    vals = zeros.by_modulus()
    if zeros.has_origin:
        vals = vals[1:]
    return vals


def _checkpoints(values: np.ndarray, schedule: TruncationSchedule):
    """Term counts and effective radii for the truncation ladder.

    ``values`` is modulus-ordered (signs allowed).  Counts are cut at
    radii midway between consecutive distinct moduli, which keeps
    plus/minus pairs together and makes the ladder stable under small
    radius perturbations.
    """
    moduli = np.abs(np.asarray(values, dtype=float))
    m_max = float(moduli[-1])
    radii = [schedule.r0 * 2.0 ** j for j in range(schedule.doublings + 1)]
    radii = [r for r in radii if r < m_max]
    if len(radii) < 3:
        # Data shorter than the configured ladder: span the data instead.
        radii = [m_max / 2.0 ** j for j in range(min(schedule.doublings, 5), 0, -1)]
    counts, eff_radii = [], []
    for r in radii + [m_max]:
        k = int(np.searchsorted(moduli, r, side="right"))
        if k < 8:
            continue
        if counts and k <= counts[-1]:
            continue
        if k < moduli.size:
            r_eff = 0.5 * (moduli[k - 1] + moduli[k])
        else:
            # Past the last datum: continue the midpoint convention by
            # half of the final gap between distinct moduli.
            prev = int(np.searchsorted(moduli, m_max, side="left")) - 1
            gap = m_max - moduli[prev] if prev >= 0 else m_max
            r_eff = m_max + 0.5 * gap
        counts.append(k)
        eff_radii.append(float(r_eff))
    if not counts:
        counts = [int(moduli.size)]
        eff_radii = [m_max]
    return counts, eff_radii


def _neville_to_zero(u: np.ndarray, rows: list):
    """Neville extrapolation of rows (tabulated at abscissae u) to u=0.

    Returns the deepest estimate and the modulus of its difference from
    the next-deepest one, which serves as the error bound.
    """
    table = [np.asarray(v, dtype=complex) for v in rows]
    n = len(table)
    if n == 1:
        return table[0], np.full(table[0].shape, np.inf)
    prev_best = table[-1]
    cur = table
    for k in range(1, n):
        nxt = []
        for i in range(n - k):
            u_lo, u_hi = u[i], u[i + k]
            # Correction form of the Neville step: exact when the rows
            # already agree, unlike the plain quotient form.
            diff = cur[i] - cur[i + 1]
            nxt.append(cur[i + 1] + u_hi * diff / (u_hi - u_lo))
        prev_best = cur[-1]
        cur = nxt
    best = cur[-1]
    err = np.abs(best - prev_best)
    return best, err


def _segment_products(b: np.ndarray, z: np.ndarray, counts, exclude=None):
    """Running products of (1 - z/b) at each checkpoint count.

    ``exclude`` maps z-row index -> term index whose factor is replaced
    by one (used for derivative products at a removed zero).
    """
    nz = z.size
    running = np.ones(nz, dtype=complex)
    out = []
    start = 0
    for k in counts:
        seg = b[start:k]
        if seg.size:
            step = max(1, _CHUNK // max(nz, 1))
            for s in range(0, seg.size, step):
                chunk = seg[s:s + step]
                factors = 1.0 - z[:, None] / chunk[None, :]
                if exclude:
                    for row, idx in exclude.items():
                        j = idx - (start + s)
                        if 0 <= j < chunk.size:
                            factors[row, j] = 1.0
                running = running * np.prod(factors, axis=1)
        out.append(running.copy())
        start = k
    return out


def _eval_product(zeros: ZeroSequence, z: np.ndarray,
                  schedule: TruncationSchedule, exclude=None):
    b = _nonzero_by_modulus(zeros)
    if b.size == 0:
        val = np.ones(z.size, dtype=complex)
        return val, np.zeros(z.size)
    if not zeros.truncated:
        rows = _segment_products(b, z, [b.size], exclude=exclude)
        return rows[0], np.zeros(z.size)
    counts, radii = _checkpoints(b, schedule)
    rows = _segment_products(b, z, counts, exclude=exclude)
    depth = min(schedule.levels + 1, len(rows))
    u = 1.0 / np.asarray(radii[-depth:], dtype=float)
    best, err = _neville_to_zero(u, rows[-depth:])
    return best, err


def canonical_product(zeros: ZeroSequence, z, schedule: TruncationSchedule = DEFAULT_SCHEDULE):
    """Evaluate the canonical product with zero set ``zeros`` at ``z``.

    Without an origin zero the product is lim prod_{0<|b|<=r} (1 - z/b);
    with one, the same limit carries a leading factor z.  Returns
    ``(value, error_bound)``; both are arrays when ``z`` is an array.
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zc = np.atleast_1d(np.asarray(z, dtype=complex))
    val, err = _eval_product(zeros, zc, schedule)
    if zeros.has_origin:
        err = err * np.abs(zc)
        val = val * zc
    if scalar:
        return complex(val[0]), float(err[0])
    return val, err


def product_derivative_at_zero(zeros: ZeroSequence, x, schedule: TruncationSchedule = DEFAULT_SCHEDULE):
    """Derivative of the canonical product at one of its zeros.

    For a zero x_n != 0 the derivative is the product over the remaining
    zeros, scaled by -1/x_n when no origin zero is present and by -1
    when one is (the Taylor factor of the removed root); at the origin
    zero itself the derivative is the plain product over the others
    evaluated at 0, which is 1.  Returns ``(value, error_bound)``.
    """
    scalar = np.isscalar(x) or np.asarray(x).ndim == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    b = _nonzero_by_modulus(zeros)
    order_vals = b
    values = np.empty(xs.size, dtype=complex)
    errors = np.empty(xs.size, dtype=float)

    origin_rows = np.abs(xs) <= 1e-12
    if np.any(origin_rows):
        if not zeros.has_origin:
            raise ConfigurationError("0 is not a zero of this product")
        sub, serr = _eval_product(ZeroSequence(np.sort(b), truncated=zeros.truncated),
                                  np.zeros(int(np.sum(origin_rows)), dtype=complex),
                                  schedule)
        values[origin_rows] = sub
        errors[origin_rows] = serr

    rest = ~origin_rows
    if np.any(rest):
        xr = xs[rest]
        idx = []
        for xv in xr:
            j = int(np.argmin(np.abs(order_vals - xv)))
            if abs(order_vals[j] - xv) > 1e-9 * (1.0 + abs(xv)):
                raise ConfigurationError(f"{xv} is not a zero of this product")
            idx.append(j)
        exclude = {row: j for row, j in enumerate(idx)}
        sub, serr = _eval_product(zeros, np.asarray(xr, dtype=complex), schedule,
                                  exclude=exclude)
        # The factor (1 - x/b_n) removed from the product contributes its
        # derivative -1/b_n; the leading z of an origin-bearing product
        # contributes the extra factor x_n, cancelling the 1/x_n.
        pref = -np.ones_like(xr) if zeros.has_origin else -1.0 / xr
        values[rest] = pref * sub
        errors[rest] = np.abs(pref) * serr

    if scalar:
        return complex(values[0]), float(errors[0])
    return values, errors


def symmetric_partial_sums(zeros: ZeroSequence, schedule: TruncationSchedule = DEFAULT_SCHEDULE):
    """Partial sums of 1/x over symmetric radii.

    Returns ``(radii, sums)`` where sums[j] accumulates 1/x over all
    nonzero entries with |x| <= radii[j], in increasing-modulus order.
    """
    b = _nonzero_by_modulus(zeros)
    if b.size == 0:
        return np.array([0.0]), np.array([0.0])
    recip = np.cumsum(1.0 / b)
    counts, radii = _checkpoints(b, schedule)
    sums = recip[np.asarray(counts) - 1]
    return np.asarray(radii), sums


def reciprocal_sum_at(zeros: ZeroSequence, z, schedule: TruncationSchedule = DEFAULT_SCHEDULE):
    """Extrapolated symmetric sum of 1/(z - b) over the zero set.

    This is the logarithmic derivative of the canonical product (plus
    1/z when an origin zero is present, handled by the caller).
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    zc = np.atleast_1d(np.asarray(z, dtype=complex))
    b = _nonzero_by_modulus(zeros)
    if b.size == 0:
        out = np.zeros(zc.size, dtype=complex)
        return (complex(out[0]), 0.0) if scalar else (out, np.zeros(zc.size))
    terms = 1.0 / (zc[:, None] - b[None, :])
    csum = np.cumsum(terms, axis=1)
    if not zeros.truncated:
        best = csum[:, -1]
        err = np.zeros(zc.size)
    else:
        counts, radii = _checkpoints(b, schedule)
        rows = [csum[:, k - 1] for k in counts]
        depth = min(schedule.levels + 1, len(rows))
        u = 1.0 / np.asarray(radii[-depth:], dtype=float)
        best, err = _neville_to_zero(u, rows[-depth:])
    if scalar:
        return complex(best[0]), float(err[0])
    return best, err
