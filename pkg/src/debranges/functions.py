"""Entire-function representations closed under the conjugation f -> f#.

The representation family is a small algebraic closure: complex
exponentials, polynomials, finite linear combinations, canonical
products over real zero sets, pointwise products, and quotients with
removable zeros.  Closure under f#(z) = conj(f(conj z)) is structural,
so conjugation, realness checks, and Hermite-Biehler validation act on
representations instead of sampled black boxes.

Evaluation is vectorized: every variant maps a complex ndarray to a
complex ndarray, and scalars pass through unchanged.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    ConfigurationError,
    HypothesisViolationError,
    MalformedFunctionError,
    NotNormalizableError,
    ValidationRejectedError,
)
from .products import DEFAULT_SCHEDULE, TruncationSchedule, canonical_product, \
    product_derivative_at_zero, reciprocal_sum_at
from .zeros import ZeroSequence

__all__ = [
    "StructuredEntireFunction",
    "ComplexExponential",
    "Polynomial",
    "LinearCombination",
    "PointwiseProduct",
    "CanonicalProduct",
    "RemovedZeroQuotient",
    "constant",
    "DerivativeUnavailable",
    "polynomial_coefficients",
    "HBValidationReport",
    "validate_hermite_biehler",
    "default_validation_grid",
    "HermiteBiehlerFunction",
    "normalize_gauge",
    "SBeta",
    "s_beta",
    "beta_at",
]


class DerivativeUnavailable(TypeError):
    """Raised when a variant has no closed-form derivative representation."""


def _as_complex_array(z):
    return np.atleast_1d(np.asarray(z, dtype=complex))


def _check_finite(name, *values):
    for v in values:
        arr = np.asarray(v, dtype=complex)
        if arr.size and not np.all(np.isfinite(arr)):
            raise MalformedFunctionError(f"{name} carries a non-finite parameter")


class StructuredEntireFunction:
    """Base class for the closed representation family."""

    def _eval(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, z):
        scalar = np.isscalar(z) or np.asarray(z).ndim == 0
        out = self._eval(_as_complex_array(z))
        return complex(out[0]) if scalar else out

    def sharp(self) -> "StructuredEntireFunction":
        raise NotImplementedError

    def derivative(self) -> "StructuredEntireFunction":
        raise DerivativeUnavailable(type(self).__name__)

    def derivative_at(self, z, order: int = 1):
        """Derivative value at z; exact rules where the family allows,
        extrapolated central differences otherwise."""
        if order == 1:
            try:
                return self.derivative()(z)
            except DerivativeUnavailable:
                return self._fd_derivative(z)
        if order == 2:
            try:
                return self.derivative().derivative_at(z, order=1)
            except DerivativeUnavailable:
                h = 1e-4 * (1.0 + abs(complex(z)))
                return (self.derivative_at(z + h) - self.derivative_at(z - h)) / (2.0 * h)
        raise ConfigurationError("only derivative orders 1 and 2 are supported")

    def _fd_derivative(self, z):
        z = complex(z)
        h = 1e-3 * (1.0 + abs(z))
        d1 = (self(z + h) - self(z - h)) / (2.0 * h)
        d2 = (self(z + h / 2) - self(z - h / 2)) / h
        return (4.0 * d2 - d1) / 3.0

    def evaluate_with_error(self, z):
        """Value together with a truncation error bound (zero for exact
        variants, propagated through combinations)."""
        scalar = np.isscalar(z) or np.asarray(z).ndim == 0
        val, err = self._eval_with_error(_as_complex_array(z))
        if scalar:
            return complex(val[0]), float(err[0])
        return val, err

    def _eval_with_error(self, z: np.ndarray):
        return self._eval(z), np.zeros(z.size)

    def is_real_entire(self, xs=None, rtol: float = 1e-12) -> bool:
        """Sample check that the restriction to the real axis is real."""
        if xs is None:
            xs = np.linspace(-7.3, 7.3, 61)
        vals = self._eval(np.asarray(xs, dtype=complex))
        return bool(np.all(np.abs(vals.imag) <= rtol * (1.0 + np.abs(vals))))


@dataclass(frozen=True)
class ComplexExponential(StructuredEntireFunction):
    """f(z) = exp(-i * rate * z)."""

    rate: complex

    def __post_init__(self):
        _check_finite("exponential", self.rate)
        object.__setattr__(self, "rate", complex(self.rate))

    def _eval(self, z):
        return np.exp(-1j * self.rate * z)

    def sharp(self):
        return ComplexExponential(-np.conj(self.rate))

    def derivative(self):
        return LinearCombination((-1j * self.rate,), (self,))


@dataclass(frozen=True)
class Polynomial(StructuredEntireFunction):
    """Polynomial with ascending complex coefficients."""

    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise MalformedFunctionError("polynomial needs at least one coefficient")
        _check_finite("polynomial", self.coeffs)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def _eval(self, z):
        return npoly.polyval(z, np.asarray(self.coeffs))

    def sharp(self):
        return Polynomial(tuple(np.conj(c) for c in self.coeffs))

    def derivative(self):
        if len(self.coeffs) == 1:
            return Polynomial((0.0,))
        return Polynomial(tuple(npoly.polyder(np.asarray(self.coeffs))))


def constant(c) -> Polynomial:
    return Polynomial((complex(c),))


@dataclass(frozen=True)
class LinearCombination(StructuredEntireFunction):
    """Finite linear combination sum_i weights[i] * terms[i]."""

    weights: Tuple[complex, ...]
    terms: Tuple[StructuredEntireFunction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.terms) or not self.terms:
            raise MalformedFunctionError("weights and terms must align and be nonempty")
        _check_finite("linear combination", self.weights)
        object.__setattr__(self, "weights", tuple(complex(w) for w in self.weights))
        object.__setattr__(self, "terms", tuple(self.terms))

    def _eval(self, z):
        out = np.zeros(z.shape, dtype=complex)
        for w, t in zip(self.weights, self.terms):
            out += w * t._eval(z)
        return out

    def sharp(self):
        return LinearCombination(tuple(np.conj(w) for w in self.weights),
                                 tuple(t.sharp() for t in self.terms))

    def derivative(self):
        return LinearCombination(self.weights, tuple(t.derivative() for t in self.terms))

    def derivative_at(self, z, order: int = 1):
        vals = [t.derivative_at(z, order=order) for t in self.terms]
        return sum(w * v for w, v in zip(self.weights, vals))

    def _eval_with_error(self, z):
        out = np.zeros(z.shape, dtype=complex)
        err = np.zeros(z.size)
        for w, t in zip(self.weights, self.terms):
            v, e = t._eval_with_error(z)
            out += w * v
            err += abs(w) * e
        return out, err


@dataclass(frozen=True)
class PointwiseProduct(StructuredEntireFunction):
    """Pointwise product of two representations."""

    left: StructuredEntireFunction
    right: StructuredEntireFunction

    def _eval(self, z):
        return self.left._eval(z) * self.right._eval(z)

    def sharp(self):
        return PointwiseProduct(self.left.sharp(), self.right.sharp())

    def derivative(self):
        return LinearCombination(
            (1.0, 1.0),
            (PointwiseProduct(self.left.derivative(), self.right),
             PointwiseProduct(self.left, self.right.derivative())))

    def derivative_at(self, z, order: int = 1):
        if order == 1:
            return (self.left.derivative_at(z) * self.right(z)
                    + self.left(z) * self.right.derivative_at(z))
        return (self.left.derivative_at(z, 2) * self.right(z)
                + 2.0 * self.left.derivative_at(z) * self.right.derivative_at(z)
                + self.left(z) * self.right.derivative_at(z, 2))

    def _eval_with_error(self, z):
        lv, le = self.left._eval_with_error(z)
        rv, re_ = self.right._eval_with_error(z)
        return lv * rv, np.abs(lv) * re_ + np.abs(rv) * le + le * re_


@dataclass(frozen=True)
class CanonicalProduct(StructuredEntireFunction):
    """Canonical product over a real zero sequence.

    With an origin zero the representation is z * lim prod over the
    nonzero entries; otherwise the plain symmetric limit.  Truncated
    sequences are evaluated through the schedule and carry an error
    bound; finite sequences are exact.
    """

    zeros: ZeroSequence
    schedule: TruncationSchedule = DEFAULT_SCHEDULE

    def _eval(self, z):
        val, _ = canonical_product(self.zeros, z, self.schedule)
        return np.atleast_1d(val)

    def _eval_with_error(self, z):
        val, err = canonical_product(self.zeros, z, self.schedule)
        return np.atleast_1d(val), np.atleast_1d(err)

    def sharp(self):
        return self

    def derivative_at(self, z, order: int = 1):
        z = complex(z)
        if order != 1:
            h = 1e-4 * (1.0 + abs(z))
            return (self.derivative_at(z + h) - self.derivative_at(z - h)) / (2.0 * h)
        vals = self.zeros.values
        if vals.size:
            j = int(np.argmin(np.abs(vals - z)))
            if abs(complex(vals[j]) - z) <= 1e-9 * (1.0 + abs(z)):
                v, _ = product_derivative_at_zero(self.zeros, float(vals[j]), self.schedule)
                return v
        s, _ = reciprocal_sum_at(self.zeros, z, self.schedule)
        h = complex(self._eval(np.array([z]))[0])
        if self.zeros.has_origin:
            return h * (s + 1.0 / z)
        return h * s


@dataclass(frozen=True)
class RemovedZeroQuotient(StructuredEntireFunction):
    """numerator(z) / prod_i (z - removed[i]) with removable singularities.

    The numerator must vanish at every removed point; evaluation near a
    removed point switches to a local Taylor form so the quotient stays
    accurate through the singularity.
    """

    numerator: StructuredEntireFunction
    removed: Tuple[complex, ...]

    def __post_init__(self):
        _check_finite("quotient", self.removed)
        object.__setattr__(self, "removed", tuple(complex(x) for x in self.removed))

    def _eval(self, z):
        out = self.numerator._eval(z).astype(complex)
        near_mask = np.zeros(z.shape, dtype=bool)
        for x in self.removed:
            d = z - x
            delta = 1e-5 * (1.0 + abs(x))
            near = np.abs(d) <= delta
            far = ~near
            out[far] = out[far] / d[far]
            if np.any(near):
                if np.any(near & near_mask):
                    raise ConfigurationError(
                        "evaluation point is near two removed zeros at once")
                near_mask |= near
                n1 = self.numerator.derivative_at(x, order=1)
                n2 = self.numerator.derivative_at(x, order=2)
                out[near] = n1 + 0.5 * d[near] * n2
                rest = np.ones(int(np.sum(near)), dtype=complex)
                for y in self.removed:
                    if y != x:
                        rest *= z[near] - y
                # The remaining factors were skipped above for these points.
                out[near] = out[near] / np.where(rest == 0.0, 1.0, rest)
        return out

    def sharp(self):
        return RemovedZeroQuotient(self.numerator.sharp(),
                                   tuple(np.conj(x) for x in self.removed))

    def derivative_at(self, z, order: int = 1):
        z = complex(z)
        if order != 1:
            h = 1e-4 * (1.0 + abs(z))
            return (self.derivative_at(z + h) - self.derivative_at(z - h)) / (2.0 * h)
        dmin = min(abs(z - x) for x in self.removed)
        if dmin > 1e-3 * (1.0 + abs(z)):
            d = np.prod([z - x for x in self.removed])
            dlog = sum(1.0 / (z - x) for x in self.removed)
            try:
                n1 = self.numerator.derivative_at(z)
                return (n1 - complex(self(z)) * d * dlog) / d
            except (DerivativeUnavailable, ConfigurationError):
                pass
        return self._fd_derivative(z)

    def _eval_with_error(self, z):
        val = self._eval(z)
        _, nerr = self.numerator._eval_with_error(z)
        den = np.ones(z.shape)
        for x in self.removed:
            den *= np.maximum(np.abs(z - x), 1e-5 * (1.0 + abs(x)))
        return val, nerr / den


def polynomial_coefficients(f, degree: int, radius: float = 2.0):
    """Recover ascending polynomial coefficients of an evaluable function.

    Interpolates at degree+1 Chebyshev points on [-radius, radius] and
    reports the worst relative mismatch on an interleaved control grid,
    which is the membership residual for finite-dimensional spaces.
    """
    n = degree + 1
    nodes = radius * np.cos(np.pi * (2 * np.arange(n) + 1) / (2.0 * n))
    vals = np.asarray(f(nodes.astype(complex)), dtype=complex)
    coeffs = np.linalg.solve(npoly.polyvander(nodes, degree), vals)
    control = radius * np.cos(np.pi * (np.arange(n + 3) + 0.37) / (n + 3))
    actual = np.asarray(f(control.astype(complex)), dtype=complex)
    fitted = npoly.polyval(control, coeffs)
    scale = float(np.max(np.abs(actual))) + 1e-300
    residual = float(np.max(np.abs(actual - fitted))) / scale
    return coeffs, residual


# ----------------------------------------------------------------------
# Hermite-Biehler validation, gauge normalization, and the s_beta pencil
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HBValidationReport:
    """Sampled evidence for the Hermite-Biehler inequality.

    ``margin_upper`` is min over the upper-half-plane samples of
    |e(z)| - |e#(z)|; ``min_real_modulus`` is min |e(x)| over the real
    samples.  ``accepted`` requires both to be strictly positive.
    """

    accepted: bool
    margin_upper: float
    min_real_modulus: float
    n_upper: int
    n_real: int


def default_validation_grid():
    """Modest default sample set: a lattice in the upper half plane and
    a real segment."""
    xs = np.linspace(-6.0, 6.0, 25)
    ys = np.array([0.25, 0.5, 1.0, 2.0, 4.0])
    upper = (xs[:, None] + 1j * ys[None, :]).ravel()
    real = np.linspace(-10.0, 10.0, 81)
    return upper, real


def validate_hermite_biehler(e: StructuredEntireFunction,
                             upper=None, real=None) -> HBValidationReport:
    """Sample-based Hermite-Biehler check.

    Verifies |e(z)| > |e#(z)| on the upper samples and e(x) != 0 on the
    real samples.  Sampled evidence only; it can reject but never prove.
    """
    if upper is None and real is None:
        upper, real = default_validation_grid()
    upper = _as_complex_array(upper if upper is not None else [])
    real = _as_complex_array(real if real is not None else [])
    if upper.size == 0 or real.size == 0:
        raise ConfigurationError("validation needs both upper and real samples")
    if np.any(upper.imag <= 0):
        raise ConfigurationError("upper sample set contains non-interior points")
    es = e.sharp()
    margin = float(np.min(np.abs(e._eval(upper)) - np.abs(es._eval(upper))))
    min_real = float(np.min(np.abs(e._eval(real))))
    accepted = margin > 0.0 and min_real > 0.0
    return HBValidationReport(accepted, margin, min_real,
                              int(upper.size), int(real.size))


@dataclass(frozen=True)
class HermiteBiehlerFunction:
    """A gauge-normalized Hermite-Biehler function.

    The stored representation satisfies e(0) >= 1 real, and gamma0 in
    (0, pi/2] records arcsin(1/e(0)), so that e(0) * sin(gamma0) = 1.
    """

    e: StructuredEntireFunction
    gamma0: float
    report: HBValidationReport

    def __call__(self, z):
        return self.e(z)

    @cached_property
    def e_sharp(self) -> StructuredEntireFunction:
        return self.e.sharp()

    def s(self, beta: float) -> "SBeta":
        return s_beta(self, beta)

    def beta_at(self, x):
        return beta_at(self, x)


def normalize_gauge(e: StructuredEntireFunction, upper=None, real=None) -> HermiteBiehlerFunction:
    """Rotate (and if needed rescale) e so that e(0) is real and >= 1.

    A unimodular factor fixes the phase of e(0); when |e(0)| < 1 an
    additional positive factor lifts it to exactly 1.  Neither changes
    the space: the phase is invisible to |e| and a positive scale only
    rescales the norm weight.  Raises when e(0) = 0 or when validation
    rejects the function.
    """
    e0 = complex(e(0.0))
    if abs(e0) < 1e-300:
        raise NotNormalizableError("e(0) = 0, the gauge phase is undefined")
    scale = max(1.0, 1.0 / abs(e0))
    c = scale * abs(e0) / e0
    if abs(c - 1.0) > 1e-15:
        e = LinearCombination((c,), (e,))
    report = validate_hermite_biehler(e, upper=upper, real=real)
    if not report.accepted:
        raise ValidationRejectedError(
            "function failed the Hermite-Biehler sample check", report=report)
    e0_new = scale * abs(e0)
    gamma0 = math.asin(min(1.0, 1.0 / e0_new))
    return HermiteBiehlerFunction(e, gamma0, report)


@dataclass(frozen=True)
class SBeta:
    """Member of the real pencil s_beta = (i/2)(e^{i beta} e - e^{-i beta} e#)."""

    beta: float
    parent: HermiteBiehlerFunction
    function: StructuredEntireFunction

    def __call__(self, z):
        return self.function(z)

    def derivative_at(self, z, order: int = 1):
        return self.function.derivative_at(z, order=order)

    def scale_at(self, z) -> float:
        """Magnitude scale |e(z)| + |e#(z)| used for zero thresholds."""
        z = complex(z)
        return float(abs(self.parent(z)) + abs(self.parent.e_sharp(z)))


def s_beta(e: HermiteBiehlerFunction, beta: float) -> SBeta:
    """Build s_beta for the pencil of e; beta is reduced into [0, pi)."""
    if not isinstance(e, HermiteBiehlerFunction):
        raise ConfigurationError("s_beta expects a normalized Hermite-Biehler function")
    b = float(beta)
    if not np.isfinite(b):
        raise MalformedFunctionError("beta must be finite")
    reduced = b % math.pi
    if abs(reduced - b) > 1e-15 * max(1.0, abs(b)):
        warnings.warn(f"beta = {b} reduced mod pi to {reduced}", stacklevel=2)
    w = 0.5j * cmath.exp(1j * reduced)
    fn = LinearCombination((w, np.conj(w)), (e.e, e.e_sharp))
    return SBeta(reduced, e, fn)


def beta_at(e: HermiteBiehlerFunction, x):
    """The unique beta in [0, pi) whose s_beta vanishes at the real x.

    On the real axis s_beta(x) = -|e(x)| sin(beta + arg e(x)), so the
    zero parameter is (-arg e(x)) mod pi.  Raises when e(x) = 0.
    """
    scalar = np.isscalar(x) or np.asarray(x).ndim == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    vals = e.e._eval(xs.astype(complex))
    if np.any(np.abs(vals) <= 1e-12):
        raise HypothesisViolationError("e vanishes at a requested real point")
    betas = (-np.angle(vals)) % math.pi
    return float(betas[0]) if scalar else betas
