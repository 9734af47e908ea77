"""Real zero sequences, interlacing checks, and sign-change root scans."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError, RefineNeededError

__all__ = ["ZeroSequence", "InterlaceResult", "interlace_check", "scan_real_zeros"]

# Points with |x| below this are treated as the origin zero.
_ORIGIN_TOL = 1e-12


@dataclass(frozen=True)
class ZeroSequence:
    """A strictly increasing sequence of real points.

    ``truncated`` marks a window cut out of an infinite zero set, as
    opposed to the complete zero set of a function that has only
    finitely many zeros.  Truncation-aware consumers (canonical
    products, series diagnostics) behave differently in the two cases.
    """

    values: np.ndarray
    truncated: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise ConfigurationError("zero sequence must be one dimensional")
        if vals.size and not np.all(np.isfinite(vals)):
            raise ConfigurationError("zero sequence contains non-finite entries")
        if vals.size > 1 and not np.all(np.diff(vals) > 0):
            raise ConfigurationError("zero sequence must be strictly increasing")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self):
        return iter(self.values)

    @property
    def has_origin(self) -> bool:
        return bool(np.any(np.abs(self.values) <= _ORIGIN_TOL))

    def positive(self) -> np.ndarray:
        """Positive entries in increasing order (increasing modulus)."""
        return self.values[self.values > _ORIGIN_TOL]

    def negative_by_modulus(self) -> np.ndarray:
        """Negative entries ordered by increasing modulus."""
        neg = self.values[self.values < -_ORIGIN_TOL]
        return neg[::-1]

    def by_modulus(self) -> np.ndarray:
        """All entries ordered by increasing modulus (origin first)."""
        order = np.argsort(np.abs(self.values), kind="stable")
        return self.values[order]

    def max_modulus(self) -> float:
        if not len(self):
            return 0.0
        return float(np.max(np.abs(self.values)))

    def restrict(self, a: float, b: float) -> "ZeroSequence":
        """The subsequence inside the closed interval [a, b]."""
        mask = (self.values >= a) & (self.values <= b)
        return ZeroSequence(self.values[mask], truncated=self.truncated)


@dataclass(frozen=True)
class InterlaceResult:
    """Outcome of an interlacing check.

    ``interlaced`` is True or False when the check is decisive and None
    when it is inconclusive (an empty sequence).  ``first_violation`` is
    the leftmost adjacent pair drawn from the same sequence, if any.
    """

    interlaced: Optional[bool]
    first_violation: Optional[tuple] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.interlaced is True


def interlace_check(a: ZeroSequence, b: ZeroSequence,
                    window: Optional[tuple] = None) -> InterlaceResult:
    """Check that two real sequences strictly interlace.

    The merged sequence must alternate between members of ``a`` and
    members of ``b``; a shared point counts as a violation.  When
    ``window`` is given both sequences are restricted to it first.
    Returns an inconclusive result when either restricted sequence is
    empty, since alternation cannot be assessed against nothing.
    """
    if window is not None:
        lo, hi = float(window[0]), float(window[1])
        a = a.restrict(lo, hi)
        b = b.restrict(lo, hi)
    if len(a) == 0 or len(b) == 0:
        return InterlaceResult(None, detail="empty overlap, nothing to compare")

    merged = np.concatenate([a.values, b.values])
    labels = np.concatenate([np.zeros(len(a), dtype=int), np.ones(len(b), dtype=int)])
    order = np.argsort(merged, kind="stable")
    merged = merged[order]
    labels = labels[order]

    dup = np.nonzero(np.diff(merged) == 0.0)[0]
    if dup.size:
        i = int(dup[0])
        pair = (float(merged[i]), float(merged[i + 1]))
        return InterlaceResult(False, pair, detail="shared point")

    same = np.nonzero(np.diff(labels) == 0)[0]
    if same.size:
        i = int(same[0])
        pair = (float(merged[i]), float(merged[i + 1]))
        which = "first" if labels[i] == 0 else "second"
        return InterlaceResult(False, pair,
                               detail=f"adjacent pair from the {which} sequence")
    return InterlaceResult(True)


def scan_real_zeros(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                    density: int = 64, suspect_ratio: float = 1e-3):
    """Locate real zeros of a real-valued function on [a, b].

    Samples ``fn`` on a uniform grid with ``density`` points per unit
    length, brackets sign changes, and refines each bracket by
    bisection.  Grid points where the value itself vanishes (to
    rounding) are accepted directly, so interval endpoints that are
    zeros are kept.

    Returns ``(zeros, suspects)`` where ``suspects`` lists grid cells
    whose interior dips below ``suspect_ratio`` times the local scale
    without a sign change; those cells may hide an even-order zero or a
    close pair and should be rescanned at higher density by the caller.
    """
    a = float(a)
    b = float(b)
    if not (np.isfinite(a) and np.isfinite(b)) or b <= a:
        raise ConfigurationError(f"bad interval [{a}, {b}]")
    if density < 2:
        raise ConfigurationError("density must be at least 2 points per unit")

    n = max(int(np.ceil((b - a) * density)), 8) + 1
    grid = np.linspace(a, b, n)
    vals = np.asarray(fn(grid), dtype=complex)
    if np.any(~np.isfinite(vals)):
        raise ConfigurationError("function returned non-finite values on the scan grid")
    vals = vals.real
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0:
        raise ConfigurationError("function vanishes identically on the scan grid")
    atol = 1e-12 * scale

    zeros = []
    exact = np.abs(vals) <= atol
    for i in np.nonzero(exact)[0]:
        zeros.append(float(grid[i]))

    def eval_real(x: float) -> float:
        return float(np.real(fn(np.array([x]))[0]))

    def bisect(x0: float, x1: float, f0: float) -> float:
        for _ in range(200):
            xm = 0.5 * (x0 + x1)
            fm = eval_real(xm)
            if fm == 0.0:
                return xm
            if f0 * fm < 0.0:
                x1 = xm
            else:
                x0, f0 = xm, fm
            if x1 - x0 <= 1e-15 * (1.0 + abs(xm)):
                break
        return 0.5 * (x0 + x1)

    suspects = []
    for i in range(n - 1):
        lo, hi = vals[i], vals[i + 1]
        if exact[i] and exact[i + 1]:
            continue
        mid = 0.5 * (grid[i] + grid[i + 1])
        if exact[i] or exact[i + 1]:
            # One endpoint is itself a zero: a second root could still
            # hide in the cell.  Probe just inside the zero end and
            # compare signs against the far endpoint; roots closer to
            # the lattice zero than 1% of a cell need a denser grid.
            h = float(grid[i + 1] - grid[i])
            if exact[i]:
                x_near, f_far = float(grid[i]) + 0.01 * h, hi
                f_near = eval_real(x_near)
                if f_near * f_far < 0.0:
                    zeros.append(bisect(x_near, float(grid[i + 1]), f_near))
            else:
                x_near, f_far = float(grid[i + 1]) - 0.01 * h, lo
                f_near = eval_real(x_near)
                if f_near * f_far < 0.0:
                    zeros.append(bisect(float(grid[i]), x_near, f_far))
            continue
        if lo * hi < 0.0:
            zeros.append(bisect(float(grid[i]), float(grid[i + 1]), lo))
            continue
        fmid = eval_real(mid)
        cell_scale = max(abs(lo), abs(hi))
        if fmid * lo < 0.0:
            # The cell crosses zero twice: both halves bracket a root.
            zeros.append(bisect(float(grid[i]), mid, lo))
            zeros.append(bisect(mid, float(grid[i + 1]), fmid))
        elif abs(fmid) < suspect_ratio * cell_scale:
            suspects.append((float(grid[i]), float(grid[i + 1])))

    zeros = sorted(zeros)
    merged = []
    for x in zeros:
        if merged and abs(x - merged[-1]) <= 1e-10 * (1.0 + abs(x)):
            continue
        merged.append(x)
    return merged, suspects
