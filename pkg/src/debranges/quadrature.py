"""Inner-product engines for weighted integrals over the real line.

Three routes with different trust levels:

* exact Gram moments for the monomial basis under (1+x^2)^{-n} weights
  (finite-dimensional spaces);
* symmetric sampling sums for band-limited spaces, extrapolated in the
  reciprocal sample count;
* windowed panel quadrature with a doubling cutoff sweep, extrapolated
  in the reciprocal cutoff, for everything else.

The two numerical routes report a trace of (cutoff, value) pairs plus
convergence and divergence flags; deciding what to do about a
non-convergent sweep is left to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import ConfigurationError
from .products import _neville_to_zero

__all__ = [
    "IntegralResult",
    "gram_matrix",
    "sampling_inner",
    "window_inner",
    "panel_integral",
]

# Fixed Gauss-Legendre panel rule; 16 points resolve one oscillation
# period per panel to machine precision.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class IntegralResult:
    """Outcome of a cutoff sweep.

    ``trace`` records (cutoff, partial value); ``converged`` means the
    extrapolated tail estimate met the tolerance; ``diverged`` means the
    increments grew instead of decaying (a non-integrable tail).
    """

    value: complex
    error: float
    converged: bool
    trace: Tuple[Tuple[float, complex], ...]
    diverged: bool = False


def gram_matrix(n_dim: int) -> np.ndarray:
    """Gram matrix of {1, x, ..., x^{n-1}} under the weight (1+x^2)^{-n}.

    Entries are the beta-function moments
    integral x^p (1+x^2)^{-n} dx = Gamma(q+1/2) Gamma(n-q-1/2) / Gamma(n)
    for even p = 2q, zero for odd p.
    """
    if n_dim < 1:
        raise ConfigurationError("gram_matrix needs a positive dimension")
    out = np.zeros((n_dim, n_dim))
    for j in range(n_dim):
        for k in range(j, n_dim):
            p = j + k
            if p % 2 == 0:
                q = p // 2
                out[j, k] = out[k, j] = (math.gamma(q + 0.5)
                                         * math.gamma(n_dim - q - 0.5)
                                         / math.gamma(n_dim))
    return out


def _classify(rows, best, err, tol):
    value = complex(best)
    incs = np.abs(np.diff(np.asarray(rows, dtype=complex)))
    diverged = bool(incs.size >= 2
                    and incs[-1] > 1.1 * incs[-2]
                    and incs[-1] > 10.0 * tol * (1.0 + abs(value)))
    converged = (not diverged) and err <= tol * (1.0 + abs(value))
    return value, converged, diverged


def sampling_inner(f, g, bandwidth: float, k0: int = 64, doublings: int = 7,
                   tol: float = 1e-9) -> IntegralResult:
    """Symmetric sampling sum (pi/a) sum conj(f(n pi/a)) g(n pi/a).

    Exact for square-summable band-limited functions of bandwidth a;
    truncated at |n| <= K over a doubling ladder of K and extrapolated
    to K = infinity in 1/K.
    """
    if bandwidth <= 0 or not np.isfinite(bandwidth):
        raise ConfigurationError("sampling bandwidth must be positive")
    if k0 < 2 or doublings < 2:
        raise ConfigurationError("sampling ladder too short")
    ks = [k0 * 2 ** j for j in range(doublings + 1)]
    step = math.pi / bandwidth
    n = np.arange(-ks[-1], ks[-1] + 1)
    x = (n * step).astype(complex)
    prods = np.conj(np.asarray(f(x))) * np.asarray(g(x))
    order = np.argsort(np.abs(n), kind="stable")
    csum = np.cumsum(prods[order])
    rows = [step * csum[2 * k] for k in ks]
    depth = min(4, len(rows))
    u = 1.0 / np.asarray(ks[-depth:], dtype=float)
    best, err = _neville_to_zero(u, rows[-depth:])
    value, converged, diverged = _classify(rows, best, float(err), tol)
    trace = tuple((float(k), complex(r)) for k, r in zip(ks, rows))
    return IntegralResult(value, float(err), converged, trace, diverged)


def panel_integral(fun, a: float, b: float, panels_per_unit: float = 2.0) -> complex:
    """Composite Gauss-Legendre integral of a vectorized complex function."""
    if not (b > a):
        raise ConfigurationError("integration interval is empty")
    n_panels = max(4, int(math.ceil((b - a) * panels_per_unit)))
    edges = np.linspace(a, b, n_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    xs = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    vals = np.asarray(fun(xs.astype(complex))).reshape(n_panels, _GL_NODES.size)
    return complex(np.sum(half * (vals @ _GL_WEIGHTS)))


def window_inner(f, g, weight, r0: float = 8.0, doublings: int = 8,
                 tol: float = 1e-8, panels_per_unit: float = 2.0) -> IntegralResult:
    """Windowed integral of conj(f) g weight over [-R, R], R doubling.

    Windows grow by shells so each region is integrated once; window
    values are extrapolated to R = infinity in 1/R.  A tail that feeds
    non-decaying shell contributions is flagged as divergent.
    """
    if r0 <= 0 or doublings < 2:
        raise ConfigurationError("window sweep needs r0 > 0 and >= 2 doublings")

    def integrand(x):
        return np.conj(np.asarray(f(x))) * np.asarray(g(x)) * np.asarray(weight(x))

    radii = [r0 * 2.0 ** j for j in range(doublings + 1)]
    total = panel_integral(integrand, -radii[0], radii[0], panels_per_unit)
    rows = [total]
    for r_prev, r in zip(radii[:-1], radii[1:]):
        shell = (panel_integral(integrand, r_prev, r, panels_per_unit)
                 + panel_integral(integrand, -r, -r_prev, panels_per_unit))
        total = total + shell
        rows.append(total)
        # Stop early once two shells in a row are negligible.
        if len(rows) >= 3:
            s1 = abs(rows[-1] - rows[-2])
            s2 = abs(rows[-2] - rows[-3])
            if max(s1, s2) <= 0.01 * tol * (1.0 + abs(total)):
                break
    used = radii[:len(rows)]
    depth = min(4, len(rows))
    u = 1.0 / np.asarray(used[-depth:], dtype=float)
    best, err = _neville_to_zero(u, rows[-depth:])
    value, converged, diverged = _classify(rows, best, float(err), tol)
    trace = tuple((float(r), complex(v)) for r, v in zip(used, rows))
    return IntegralResult(value, float(err), converged, trace, diverged)
