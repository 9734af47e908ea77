"""de Branges spaces: kernels, inner products, resolvents, spectra, and
the functional-model constructions built on them.

Three kinds of space share one interface:

* ``polynomial``: B(e) for e = (-i)^n (z+i)^n, the n-dimensional space
  of polynomials of degree < n with exact Gram-moment inner products;
* ``paley_wiener``: B(e^{-iaz}), band-limited square-integrable entire
  functions with sampling-sum inner products and the sinc kernel;
* ``custom``: any validated Hermite-Biehler e, with windowed panel
  quadrature and the universal two-pencil kernel formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    ConfigurationError,
    DegenerateKernelError,
    HypothesisViolationError,
    InconclusiveIntegralError,
    InvalidEigenvalueError,
    InvalidSeedError,
    RefineNeededError,
    SpectrumPointError,
    UnsupportedSpaceError,
)
from .functions import (
    ComplexExponential,
    HermiteBiehlerFunction,
    LinearCombination,
    PointwiseProduct,
    Polynomial,
    RemovedZeroQuotient,
    SBeta,
    StructuredEntireFunction,
    normalize_gauge,
    polynomial_coefficients,
)
from .quadrature import IntegralResult, gram_matrix, sampling_inner, window_inner
from .zeros import ZeroSequence, scan_real_zeros

__all__ = [
    "SpaceConfig",
    "ModelElement",
    "OrthocomplementWitness",
    "DeBrangesSpace",
    "polynomial_space",
    "paley_wiener_space",
    "custom_space",
    "collinearity",
]


@dataclass(frozen=True)
class SpaceConfig:
    """Numerical knobs shared by the space operations."""

    tol_quad: float = 1e-8        # convergence target for inner products
    tol_membership: float = 1e-8  # basis-fit residual accepted as membership
    scan_density: float = 64.0    # grid points per unit length in zero scans
    window_r0: float = 8.0        # first cutoff of the weighted-integral sweep
    window_doublings: int = 8
    sampling_k0: int = 64         # first symmetric sample count (band-limited)
    sampling_doublings: int = 7

    def __post_init__(self):
        if min(self.tol_quad, self.tol_membership) <= 0:
            raise ConfigurationError("tolerances must be positive")
        if self.scan_density <= 0 or self.window_r0 <= 0:
            raise ConfigurationError("scan density and window start must be positive")
        if self.window_doublings < 2 or self.sampling_doublings < 2 or self.sampling_k0 < 2:
            raise ConfigurationError("cutoff sweeps need at least two doublings")


@dataclass(frozen=True, eq=False)
class ModelElement:
    """A structured entire function tagged with its parent space."""

    function: StructuredEntireFunction
    space: "DeBrangesSpace"
    label: str = ""

    def __call__(self, z):
        return self.function(z)

    def sharp(self) -> "ModelElement":
        return ModelElement(self.function.sharp(), self.space,
                            self.label and f"sharp({self.label})")

    def norm(self) -> float:
        return self.space.norm(self)


@dataclass(frozen=True, eq=False)
class OrthocomplementWitness:
    """A pencil member lying inside the space, spanning dom(mult)^perp."""

    gamma: float
    witness: ModelElement
    residual: float


def _fn(f) -> StructuredEntireFunction:
    if isinstance(f, ModelElement):
        return f.function
    if isinstance(f, SBeta):
        return f.function
    if isinstance(f, StructuredEntireFunction):
        return f
    raise ConfigurationError("expected a model element or entire-function value")


class DeBrangesSpace:
    """A concrete de Branges space B(e) with computational backends."""

    def __init__(self, hb: HermiteBiehlerFunction, kind: str,
                 dimension: Optional[int] = None,
                 bandwidth: Optional[float] = None,
                 config: Optional[SpaceConfig] = None):
        if kind not in ("polynomial", "paley_wiener", "custom"):
            raise ConfigurationError(f"unknown space kind {kind!r}")
        if kind == "polynomial" and (dimension is None or dimension < 1):
            raise ConfigurationError("polynomial spaces need a dimension >= 1")
        if kind == "paley_wiener" and (bandwidth is None or bandwidth <= 0):
            raise ConfigurationError("band-limited spaces need a positive bandwidth")
        self.hb = hb
        self.kind = kind
        self.dimension = dimension
        self.bandwidth = bandwidth
        self.config = config or SpaceConfig()

    # -- pencil plumbing ------------------------------------------------

    def s(self, beta: float) -> SBeta:
        return self.hb.s(beta)

    def beta_at(self, x):
        return self.hb.beta_at(x)

    def element(self, f, label: str = "") -> ModelElement:
        return ModelElement(_fn(f), self, label)

    def weight(self, x):
        """Norm weight 1/|e(x)|^2 on the real axis, vectorized."""
        vals = self.hb.e(np.asarray(x, dtype=complex))
        return 1.0 / np.abs(vals) ** 2

    @cached_property
    def _gram(self) -> np.ndarray:
        return gram_matrix(self.dimension)

    @cached_property
    def _s_pair(self):
        return self.s(0.0), self.s(math.pi / 2.0)

    # -- reproducing kernel ---------------------------------------------

    def kernel(self, z, w):
        """k(z, w); vectorized over z, scalar w."""
        scalar = np.isscalar(z) or np.asarray(z).ndim == 0
        zs = np.atleast_1d(np.asarray(z, dtype=complex))
        w = complex(w)
        if self.kind == "polynomial":
            coef = np.linalg.solve(self._gram, np.conj(w ** np.arange(self.dimension)))
            out = npoly.polyval(zs, coef)
        elif self.kind == "paley_wiener":
            out = self._sinc_kernel(zs - np.conj(w))
        else:
            out = self._universal_kernel(zs, w)
        return complex(out[0]) if scalar else out

    def _sinc_kernel(self, d):
        a = self.bandwidth
        u = a * d
        small = np.abs(u) <= 1e-4
        out = np.empty(d.shape, dtype=complex)
        out[~small] = np.sin(u[~small]) / (math.pi * d[~small])
        us = u[small]
        out[small] = (a / math.pi) * (1.0 - us ** 2 / 6.0 + us ** 4 / 120.0)
        return out

    def _universal_kernel(self, zs, w):
        s0, s90 = self._s_pair
        wb = np.conj(w)
        a0, a90 = complex(s0(wb)), complex(s90(wb))
        d = zs - wb
        near = np.abs(d) <= 1e-5 * (1.0 + abs(wb))
        out = np.empty(zs.shape, dtype=complex)
        far = ~near
        if np.any(far):
            num = s90.function._eval(zs[far]) * a0 - s0.function._eval(zs[far]) * a90
            out[far] = num / (math.pi * d[far])
        if np.any(near):
            n1 = s90.derivative_at(wb) * a0 - s0.derivative_at(wb) * a90
            n2 = s90.derivative_at(wb, 2) * a0 - s0.derivative_at(wb, 2) * a90
            out[near] = (n1 + 0.5 * d[near] * n2) / math.pi
        return out

    def kernel_element(self, w) -> ModelElement:
        """k(., w) as a structured member of the space."""
        w = complex(w)
        if self.kind == "polynomial":
            coef = np.linalg.solve(self._gram, np.conj(w ** np.arange(self.dimension)))
            return self.element(Polynomial(tuple(coef)), label=f"k(.,{w:g})")
        s0, s90 = self._s_pair
        wb = np.conj(w)
        a0, a90 = complex(s0(wb)), complex(s90(wb))
        num = LinearCombination((a0 / math.pi, -a90 / math.pi),
                                (s90.function, s0.function))
        return self.element(RemovedZeroQuotient(num, (wb,)), label=f"k(.,{w:g})")

    def e_from_kernel(self, w0) -> StructuredEntireFunction:
        """Reconstruct a structure function from the kernel at w0."""
        w0 = complex(w0)
        if w0.imag <= 0:
            raise ConfigurationError("reconstruction point must lie above the real axis")
        k00 = self.kernel(w0, w0)
        if not (k00.real > 1e-12):
            raise DegenerateKernelError(f"kernel diagonal at {w0} is {k00.real:g}")
        c = -1j * math.sqrt(math.pi / (k00.real * w0.imag))
        linear = Polynomial((-c * np.conj(w0), c))
        return PointwiseProduct(linear, self.kernel_element(w0).function)

    # -- inner products ---------------------------------------------------

    def _poly_coeffs(self, f):
        coeffs, resid = polynomial_coefficients(_fn(f), self.dimension - 1)
        if resid > self.config.tol_membership:
            raise HypothesisViolationError(
                f"element is outside the polynomial space (fit residual {resid:.2e})")
        return coeffs

    def inner_result(self, f, g, method: str = "auto") -> IntegralResult:
        """Inner product with its convergence diagnostics, never raising
        on non-convergence."""
        cfg = self.config
        if method == "auto":
            method = {"polynomial": "gram", "paley_wiener": "sampling",
                      "custom": "window"}[self.kind]
        if method == "gram":
            if self.kind != "polynomial":
                raise UnsupportedSpaceError("Gram route needs a finite basis")
            cf, cg = self._poly_coeffs(f), self._poly_coeffs(g)
            value = complex(np.conj(cf) @ self._gram @ cg)
            return IntegralResult(value, 0.0, True, ())
        if method == "sampling":
            if self.kind != "paley_wiener":
                raise UnsupportedSpaceError("sampling route needs a bandwidth")
            return sampling_inner(_fn(f), _fn(g), self.bandwidth,
                                  k0=cfg.sampling_k0,
                                  doublings=cfg.sampling_doublings,
                                  tol=cfg.tol_quad)
        if method == "window":
            return window_inner(_fn(f), _fn(g), self.weight,
                                r0=cfg.window_r0,
                                doublings=cfg.window_doublings,
                                tol=cfg.tol_quad)
        raise ConfigurationError(f"unknown inner-product method {method!r}")

    def inner(self, f, g, method: str = "auto"):
        """<f, g>, antilinear in the first argument."""
        res = self.inner_result(f, g, method=method)
        if not res.converged:
            raise InconclusiveIntegralError(
                "inner-product cutoff sweep did not settle", trace=list(res.trace))
        return res.value

    def norm(self, f, method: str = "auto") -> float:
        val = self.inner(f, f, method=method)
        return math.sqrt(max(val.real, 0.0))

    # -- spectra ----------------------------------------------------------

    def spectrum(self, beta: float, interval, density: Optional[float] = None) -> ZeroSequence:
        """All zeros of s_beta inside [a, b], bracketed and refined."""
        a, b = float(interval[0]), float(interval[1])
        if not (a < b):
            raise ConfigurationError("spectrum interval must satisfy a < b")
        s = self.s(beta)
        dens = density or self.config.scan_density
        zs, suspects = scan_real_zeros(s.function._eval, a, b, density=dens)
        tries = 0
        while suspects and tries < 2:
            dens *= 4.0
            zs, suspects = scan_real_zeros(s.function._eval, a, b, density=dens)
            tries += 1
        if suspects:
            raise RefineNeededError(
                "zero scan found sign-ambiguous cells beyond its resolution",
                zeros_found=zs, suspect_intervals=suspects)
        return ZeroSequence(np.asarray(zs), truncated=self._spectrum_truncated(s, zs, a, b))

    def _spectrum_truncated(self, s: SBeta, zs, a: float, b: float) -> bool:
        if self.kind != "polynomial":
            return True
        coeffs, _ = polynomial_coefficients(s.function, self.dimension)
        trimmed = npoly.polytrim(coeffs, 1e-10 * float(np.max(np.abs(coeffs))))
        if len(trimmed) < 2:
            return False
        roots = npoly.polyroots(trimmed)
        real_roots = roots[np.abs(roots.imag) <= 1e-8 * (1.0 + np.abs(roots.real))].real
        return not bool(np.all((real_roots >= a) & (real_roots <= b)))

    # -- resolvents and model elements -------------------------------------

    def _require_regular(self, s: SBeta, w) -> complex:
        sw = complex(s(w))
        if abs(sw) <= 1e-12 * s.scale_at(w):
            raise SpectrumPointError(
                f"{w} is a spectral point of the beta={s.beta:g} extension")
        return sw

    def resolvent_element(self, beta: float, w, f) -> ModelElement:
        """(S_beta - w)^{-1} f as a structured member."""
        w = complex(w)
        s = self.s(beta)
        sw = self._require_regular(s, w)
        fw = complex(_fn(f)(w))
        num = LinearCombination((1.0, -fw / sw), (_fn(f), s.function))
        return self.element(RemovedZeroQuotient(num, (w,)))

    def resolvent_apply(self, beta: float, w, f, z):
        return self.resolvent_element(beta, w, f)(z)

    def eigenfunction(self, beta: float, x: float) -> ModelElement:
        """g_x = s_beta / (. - x) for a zero x of s_beta."""
        x = float(x)
        s = self.s(beta)
        if abs(complex(s(x))) > 1e-8 * s.scale_at(x):
            raise InvalidEigenvalueError(
                f"{x} is not a zero of s_beta for beta={beta:g}")
        return self.element(RemovedZeroQuotient(s.function, (x,)), label=f"g_{x:g}")

    def deficiency_element(self, w) -> ModelElement:
        """Spanning vector of ker(mult* - w), namely k(., conj w)."""
        return self.kernel_element(np.conj(complex(w)))

    def cayley_transfer(self, gamma: float, z, v, phi) -> ModelElement:
        """[I + (z - v) (S_gamma - z)^{-1}] phi."""
        z, v = complex(z), complex(v)
        if z == v:
            return self.element(_fn(phi))
        res = self.resolvent_element(gamma, z, phi)
        return self.element(LinearCombination((1.0, z - v),
                                              (_fn(phi), res.function)))

    def xi_gauge(self, gamma: float, v: float, z) -> ModelElement:
        """The gauge family xi_{gamma,v}(z), entire and zero-free in z.

        Realized by transporting a deficiency seed with the resolvent:
        the transported element is exactly collinear with k(., conj z),
        and the v-dependent scale is fixed so that xi(v) equals
        s_gamma'(v) times the eigenfunction at v.
        """
        v = float(np.real_if_close(v))
        z = complex(z)
        s = self.s(gamma)
        if abs(complex(s(v))) > 1e-8 * s.scale_at(v):
            raise InvalidSeedError(f"{v} is not in the spectrum of the gamma extension")
        w0 = complex(v, 1.0 + abs(v))
        seed = self.deficiency_element(w0).function
        sd_v = complex(s.derivative_at(v))
        kvv = complex(self.kernel(v, v))
        if not (kvv.real > 0):
            raise DegenerateKernelError(f"kernel diagonal vanishes at seed {v}")
        c = (sd_v ** 2 / kvv.real) / complex(s(w0))
        sz = complex(s(z))
        if z == w0:
            return self.element(LinearCombination((c * sz,), (seed,)))
        fz = complex(seed(z))
        transported = RemovedZeroQuotient(
            LinearCombination((sz, -fz), (seed, s.function)), (z,))
        return self.element(LinearCombination((c * sz, c * (z - w0)),
                                              (seed, transported)))

    # -- membership of the pencil ------------------------------------------

    def domain_orthocomplement(self, gamma_grid=None) -> Optional[OrthocomplementWitness]:
        """The pencil member inside the space, if one exists.

        Polynomial spaces: the leading coefficient of s_gamma is
        -Im(e^{i gamma} L) with L the leading coefficient of e, so the
        unique candidate is gamma = (-arg L) mod pi; membership is then
        confirmed by a basis fit.  Otherwise a gamma grid is swept and
        each candidate's weighted norm is checked for finiteness; a sweep
        where every candidate diverges reports absence (densely defined
        multiplication).
        """
        if self.kind == "polynomial":
            coeffs, _ = polynomial_coefficients(self.hb.e, self.dimension)
            lead = complex(coeffs[-1])
            gamma = float((-np.angle(lead)) % math.pi)
            s = self.s(gamma)
            _, resid = polynomial_coefficients(s.function, self.dimension - 1)
            if resid <= self.config.tol_membership:
                return OrthocomplementWitness(gamma, self.element(s.function), resid)
            return None
        if gamma_grid is None:
            gamma_grid = np.linspace(0.0, math.pi, 65)[:-1]
        for gamma in np.asarray(gamma_grid, dtype=float):
            s = self.s(float(gamma))
            res = window_inner(s.function, s.function, self.weight,
                               r0=4.0, doublings=5, tol=self.config.tol_quad)
            if res.converged and not res.diverged:
                return OrthocomplementWitness(float(gamma), self.element(s.function),
                                              res.error)
        return None

    def describe(self) -> dict:
        if self.kind == "polynomial":
            return {"kind": "polynomial", "N": int(self.dimension)}
        if self.kind == "paley_wiener":
            return {"kind": "paley-wiener", "a": float(self.bandwidth)}
        return {"kind": "custom"}


def polynomial_space(n: int, config: Optional[SpaceConfig] = None) -> DeBrangesSpace:
    """B(e) for e = (-i)^n (z+i)^n: polynomials of degree < n."""
    if n < 1:
        raise ConfigurationError("polynomial space needs n >= 1")
    coeffs = ((-1j) ** n) * npoly.polypow(np.array([1j, 1.0]), n)
    hb = normalize_gauge(Polynomial(tuple(coeffs)))
    return DeBrangesSpace(hb, "polynomial", dimension=n, config=config)


def paley_wiener_space(bandwidth: float = math.pi,
                       config: Optional[SpaceConfig] = None) -> DeBrangesSpace:
    """B(e^{-iaz}): entire functions band-limited to [-a, a]."""
    if not (bandwidth > 0 and np.isfinite(bandwidth)):
        raise ConfigurationError("bandwidth must be positive and finite")
    hb = normalize_gauge(ComplexExponential(bandwidth))
    return DeBrangesSpace(hb, "paley_wiener", bandwidth=float(bandwidth), config=config)


def custom_space(e: StructuredEntireFunction,
                 config: Optional[SpaceConfig] = None) -> DeBrangesSpace:
    """B(e) for a user-supplied function; validates and normalizes e."""
    hb = e if isinstance(e, HermiteBiehlerFunction) else normalize_gauge(e)
    return DeBrangesSpace(hb, "custom", config=config)


def collinearity(u, v, samples=None, mode: str = "pointwise"):
    """How close u is to a scalar multiple of v.

    Returns ``(residual, coefficient)``: the best-fit c minimizing the
    mismatch of u against c v, and the relative size of what is left.
    ``pointwise`` compares values on a fixed complex sample set; ``norm``
    uses the parent space's inner product.
    """
    if mode == "norm":
        if not (isinstance(u, ModelElement) and isinstance(v, ModelElement)):
            raise ConfigurationError("norm mode needs model elements")
        space = u.space
        vv = space.inner(v, v)
        c = space.inner(v, u) / vv
        uu = space.inner(u, u)
        res_sq = max(uu.real - (abs(c) ** 2) * vv.real, 0.0)
        return math.sqrt(res_sq) / math.sqrt(max(uu.real, 1e-300)), c
    if samples is None:
        base = np.linspace(-2.0, 2.0, 9)
        samples = base + 1j * np.linspace(0.31, 1.73, 9)
    zs = np.asarray(samples, dtype=complex)
    uv = np.asarray(_fn(u)(zs))
    vv = np.asarray(_fn(v)(zs))
    c = complex(np.vdot(vv, uv) / np.vdot(vv, vv))
    scale = float(np.max(np.abs(uv))) + 1e-300
    residual = float(np.max(np.abs(uv - c * vv))) / scale
    return residual, c
