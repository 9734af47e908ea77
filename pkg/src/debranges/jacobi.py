"""Semi-infinite Jacobi matrices: recurrence polynomials, the entire
gauge identity, limit-circle diagnostics, and finite-section spectra.

The matrix is tridiagonal symmetric with positive off-diagonals b_k and
real diagonals q_k.  First-kind polynomials P_k satisfy every row of
(B - z) u = 0 including the first; second-kind polynomials Q_k satisfy
all rows except the first, whose residual is exactly one.  The pair is
pinned down by the Wronskian identity b_n (P_{n-1} Q_n - P_n Q_{n-1}) = 1,
which doubles as the module's primary correctness oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigurationError, NumericError, RecurrenceOverflowError
from .zeros import ZeroSequence

__all__ = [
    "JacobiMatrix",
    "PolynomialPair",
    "recurrence_eval",
    "gauge_identity_check",
    "LimitCircleDiagnostic",
    "limit_circle_diagnostic",
    "truncated_extension_spectra",
]

# Magnitude beyond which recurrence values are considered overflowed.
_OVERFLOW = 1e280


@dataclass(frozen=True)
class JacobiMatrix:
    """Off-diagonals b_1..b_N and diagonals q_1..q_N of a Jacobi matrix."""

    b: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        b = np.array(self.b, dtype=float)
        q = np.array(self.q, dtype=float)
        if b.ndim != 1 or q.ndim != 1 or b.size != q.size:
            raise ConfigurationError("b and q must be 1-D sequences of equal length")
        if b.size < 2:
            raise ConfigurationError("a Jacobi matrix needs at least two rows")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(q))):
            raise ConfigurationError("matrix entries must be finite")
        if not np.all(b > 0):
            raise ConfigurationError("off-diagonal entries must be positive")
        b.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "q", q)

    @property
    def size(self) -> int:
        return int(self.b.size)

    @classmethod
    def constant(cls, n: int, b: float = 1.0, q: float = 0.0) -> "JacobiMatrix":
        return cls(np.full(n, b), np.full(n, q))

    @classmethod
    def geometric(cls, n: int, ratio: float, q: float = 0.0) -> "JacobiMatrix":
        k = np.arange(1, n + 1, dtype=float)
        return cls(ratio ** k, np.full(n, q))


@dataclass(frozen=True)
class PolynomialPair:
    """Value tables P_0..P_N and Q_0..Q_N of both recurrence solutions
    at one query point."""

    z: complex
    P: np.ndarray
    Q: np.ndarray
    matrix: JacobiMatrix

    @property
    def order(self) -> int:
        return int(self.P.size - 1)

    def wronskian(self) -> np.ndarray:
        """b_n (P_{n-1} Q_n - P_n Q_{n-1}) for n = 1..N; identically 1."""
        b = self.matrix.b[:self.order]
        return b * (self.P[:-1] * self.Q[1:] - self.P[1:] * self.Q[:-1])

    def first_row_residual(self, table: str = "Q") -> complex:
        """q_1 u_1 + b_1 u_2 - z u_1 with u the selected solution.

        Zero for P by construction; exactly one for Q, witnessing that
        the kernel of the full difference expression is two-dimensional
        while only one solution satisfies the matrix itself.
        """
        u = self.Q if table == "Q" else self.P
        b, q = self.matrix.b, self.matrix.q
        return complex(q[0] * u[0] + b[0] * u[1] - self.z * u[0])

    def row_residuals(self, table: str = "Q") -> np.ndarray:
        """Residuals of rows k = 2..N-1 (the rows both solutions satisfy)."""
        u = self.Q if table == "Q" else self.P
        n = self.order
        b, q = self.matrix.b, self.matrix.q
        k = np.arange(2, n)
        return (b[k - 2] * u[k - 2] + q[k - 1] * u[k - 1]
                + b[k - 1] * u[k] - self.z * u[k - 1])


def recurrence_eval(matrix: JacobiMatrix, z, order: Optional[int] = None) -> PolynomialPair:
    """Evaluate P_0..P_N and Q_0..Q_N at z by the three-term recurrence."""
    n = matrix.size if order is None else int(order)
    if n < 2 or n > matrix.size:
        raise ConfigurationError("order must lie between 2 and the matrix size")
    z = complex(z)
    b, q = matrix.b, matrix.q
    P = np.empty(n + 1, dtype=complex)
    Q = np.empty(n + 1, dtype=complex)
    P[0], P[1] = 1.0, (z - q[0]) / b[0]
    Q[0], Q[1] = 0.0, 1.0 / b[0]
    for k in range(2, n + 1):
        P[k] = ((z - q[k - 1]) * P[k - 1] - b[k - 2] * P[k - 2]) / b[k - 1]
        Q[k] = ((z - q[k - 1]) * Q[k - 1] - b[k - 2] * Q[k - 2]) / b[k - 1]
        if max(abs(P[k]), abs(Q[k])) > _OVERFLOW:
            raise RecurrenceOverflowError(
                f"recurrence overflow at index {k}; rescale or shorten the sweep",
                largest_valid_k=k - 1)
    return PolynomialPair(z, P, Q, matrix)


def gauge_identity_check(matrix: JacobiMatrix, z_samples) -> float:
    """max |Q_1(z) - 1/b_1| over the samples; structurally zero.

    Q_1 is the coefficient pairing of the second-kind solution against
    the second basis vector, and the recurrence forces it to be the
    constant 1/b_1, the computational content of that basis vector
    being an entire gauge.
    """
    target = 1.0 / matrix.b[0]
    worst = 0.0
    for z in np.atleast_1d(np.asarray(z_samples, dtype=complex)):
        pair = recurrence_eval(matrix, z, order=2)
        worst = max(worst, abs(pair.Q[1] - target))
    return float(worst)


@dataclass(frozen=True)
class LimitCircleDiagnostic:
    """Growth classification of S_N = sum |P_k|^2 + |Q_k|^2 at z0."""

    classification: str          # "bounded" | "divergent" | "inconclusive"
    trace: Tuple[Tuple[int, float], ...]
    note: str = ""


def limit_circle_diagnostic(matrix: JacobiMatrix, z0,
                            sweep: Optional[Sequence[int]] = None,
                            tol_rel: float = 1e-6) -> LimitCircleDiagnostic:
    """Track S_N over an increasing N sweep and classify its growth.

    Bounded S_N is evidence that both recurrence solutions are square
    summable at z0 (limit circle, deficiency indices (1,1)); sustained
    growth is evidence to the contrary.
    """
    z0 = complex(z0)
    if z0.imag == 0.0:
        raise ConfigurationError("the diagnostic point must be non-real")
    if sweep is None:
        sweep = []
        n = min(16, matrix.size // 2)
        while n < matrix.size:
            sweep.append(n)
            n *= 2
        sweep.append(matrix.size)
    marks = sorted({int(n) for n in sweep if 2 <= int(n) <= matrix.size})
    if len(marks) < 2:
        return LimitCircleDiagnostic("inconclusive", tuple(), "sweep too short")

    # Squares of the solution values enter the running total, so the
    # usable range is the square root of the recurrence overflow bound.
    sq_overflow = math.sqrt(_OVERFLOW)
    b, q = matrix.b, matrix.q
    p_prev, p_cur = 1.0 + 0.0j, (z0 - q[0]) / b[0]
    q_prev, q_cur = 0.0 + 0.0j, 1.0 / b[0]
    total = abs(p_prev) ** 2 + abs(p_cur) ** 2 + abs(q_prev) ** 2 + abs(q_cur) ** 2
    trace = []
    note = ""
    k = 1
    for mark in marks:
        overflowed = False
        while k < mark:
            k += 1
            p_prev, p_cur = p_cur, ((z0 - q[k - 1]) * p_cur - b[k - 2] * p_prev) / b[k - 1]
            q_prev, q_cur = q_cur, ((z0 - q[k - 1]) * q_cur - b[k - 2] * q_prev) / b[k - 1]
            if max(abs(p_cur), abs(q_cur)) > sq_overflow:
                overflowed = True
                note = f"recurrence overflow at index {k}"
                break
            total += abs(p_cur) ** 2 + abs(q_cur) ** 2
        if overflowed:
            return LimitCircleDiagnostic("divergent", tuple(trace), note)
        trace.append((mark, float(total)))

    values = np.asarray([v for _, v in trace])
    ns = np.asarray([n for n, _ in trace], dtype=float)
    rel = np.diff(values) / values[1:]
    if rel.size >= 2 and np.all(rel[-2:] <= tol_rel):
        return LimitCircleDiagnostic("bounded", tuple(trace), note)
    half = max(2, len(trace) // 2)
    slope = float(np.polyfit(np.log(ns[-half:]), np.log(values[-half:]), 1)[0]) \
        if half >= 2 else 0.0
    if slope > 0.5 and rel[-1] > 100.0 * tol_rel:
        return LimitCircleDiagnostic("divergent", tuple(trace),
                                     note or f"growth exponent {slope:.2f}")
    return LimitCircleDiagnostic("inconclusive", tuple(trace), note)


def truncated_extension_spectra(matrix: JacobiMatrix, order: int, tau) -> ZeroSequence:
    """Eigenvalues of the order x order leading block with boundary tau.

    The last diagonal entry becomes q_N + tau b_N; tau = inf means the
    last row and column are removed instead (size order-1).
    """
    n = int(order)
    if n < 2 or n > matrix.size:
        raise ConfigurationError("order must lie between 2 and the matrix size")
    tau = float(tau)
    if math.isinf(tau):
        d = np.array(matrix.q[:n - 1])
        e = np.array(matrix.b[:n - 2])
    else:
        d = np.array(matrix.q[:n])
        d[-1] += tau * matrix.b[n - 1]
        e = np.array(matrix.b[:n - 1])
    try:
        vals = eigh_tridiagonal(d, e, eigvals_only=True)
    except Exception as exc:
        raise NumericError(f"tridiagonal eigensolve failed: {exc}") from exc
    vals = np.sort(vals)
    if vals.size > 1 and np.min(np.diff(vals)) <= 0.0:
        raise NumericError("eigenvalues were not numerically simple")
    return ZeroSequence(vals, truncated=False)
