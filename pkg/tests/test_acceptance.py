"""Acceptance suite.

Nine end-to-end criteria, each with pinned tolerances and one printed
pass/fail line (run with ``pytest tests/test_acceptance.py -s`` to see
the lines as they happen, or ``-rA`` for the captured output).  Each
criterion lists its sub-checks by name; a failure message names exactly
the sub-checks that did not hold.
"""

import math
import time

import numpy as np
import pytest

from debranges.criterion import Status, entire_criterion
from debranges.functions import Polynomial, polynomial_coefficients
from debranges.jacobi import (
    JacobiMatrix,
    gauge_identity_check,
    limit_circle_diagnostic,
    recurrence_eval,
    truncated_extension_spectra,
)
from debranges.products import canonical_product, product_derivative_at_zero
from debranges.space import collinearity
from debranges.zeros import ZeroSequence, interlace_check

PI = math.pi


def _report(number: int, label: str, checks: dict) -> None:
    failed = [name for name, ok in checks.items() if not bool(ok)]
    status = "PASS" if not failed else "FAIL"
    print(f"[acceptance {number}] {label}: {status}")
    assert not failed, f"criterion {number} ({label}) failed: " + "; ".join(failed)


def integer_lattice(n: int) -> ZeroSequence:
    k = np.arange(1.0, n + 1.0)
    return ZeroSequence(np.sort(np.concatenate([-k, k, [0.0]])), truncated=True)


def half_integer_lattice(n: int) -> ZeroSequence:
    pos = np.arange(n, dtype=float) + 0.5
    return ZeroSequence(np.sort(np.concatenate([-pos, pos])), truncated=True)


# ----------------------------------------------------------------------
# 1. negative control: the sine gauge pair
# ----------------------------------------------------------------------

def test_01_paley_wiener_negative_control():
    t0 = time.perf_counter()
    verdict = entire_criterion(integer_lattice(10_000), half_integer_lattice(10_000))
    elapsed = time.perf_counter() - t0

    c1_sums = np.asarray(verdict.c1.trace["partial_sums"])
    terms = np.asarray(verdict.c3.trace["terms"])
    checks = {
        "C1 holds": verdict.c1.status is Status.HOLDS,
        "C1 partial sums within 1e-12": np.max(np.abs(c1_sums)) <= 1e-12,
        "C2 holds": verdict.c2.status is Status.HOLDS,
        "C2 positive density 1 within 1e-3":
            abs(verdict.c2.trace["limit_pos"] - 1.0) <= 1e-3,
        "C2 negative density -1 within 1e-3":
            abs(verdict.c2.trace["limit_neg"] + 1.0) <= 1e-3,
        "C3 fails": verdict.c3.status is Status.FAILS,
        "C3 terms within 1e-6 of 1": np.max(np.abs(terms - 1.0)) <= 1e-6,
        "overall not-present": verdict.overall.value == "not-present",
        f"runtime {elapsed:.2f}s under 10s": elapsed < 10.0,
    }
    _report(1, "negative control on the integer/half-integer pair", checks)


# ----------------------------------------------------------------------
# 2. positive control: the two-dimensional space
# ----------------------------------------------------------------------

def test_02_polynomial_positive_control(poly_space):
    t0 = time.perf_counter()
    verdict = entire_criterion(ZeroSequence(np.array([0.0]), truncated=False),
                               ZeroSequence(np.array([-1.0, 1.0]), truncated=False))

    one = poly_space.element(Polynomial((1.0,)))
    lin = poly_space.element(Polynomial((0.0, 1.0)))
    c_one = poly_space.inner(one, one)
    c_lin = poly_space.inner(lin, one)
    coeffs = (c_one / poly_space.inner(one, one),
              c_lin / poly_space.inner(lin, lin))
    residual_fn = Polynomial((1.0 - coeffs[0], -coeffs[1]))
    residual = poly_space.element(residual_fn).norm()
    elapsed = time.perf_counter() - t0

    checks = {
        "verdict entire-gauge-present": verdict.overall.value == "entire-gauge-present",
        "constant projects onto the basis within 1e-12": residual <= 1e-12,
        f"runtime {elapsed:.2f}s under 1s": elapsed < 1.0,
    }
    _report(2, "positive control on the two-dimensional space", checks)


# ----------------------------------------------------------------------
# 3. kernel reproduction
# ----------------------------------------------------------------------

def test_03_kernel_reproduction(poly_space, rng):
    worst = 0.0
    for f_fn in (Polynomial((1.0,)), Polynomial((0.0, 1.0))):
        f = poly_space.element(f_fn)
        for _ in range(20):
            w = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
            val = poly_space.inner(poly_space.kernel_element(w), f)
            worst = max(worst, abs(val - complex(f_fn(w))))
    kii = complex(poly_space.kernel(1.0j, 1.0j))
    checks = {
        "reproduction within 1e-8 for {1, z} at 20 points": worst <= 1e-8,
        "k(i,i) = 4/pi within 1e-10": abs(kii - 4.0 / PI) <= 1e-10,
    }
    _report(3, "kernel reproduction", checks)


# ----------------------------------------------------------------------
# 4. structure function recovered from the kernel
# ----------------------------------------------------------------------

def test_04_e_from_kernel_round_trip(poly_space, pw_space):
    e_rec = poly_space.e_from_kernel(1.0j)
    coeffs, fit_residual = polynomial_coefficients(e_rec, 2)
    expected = np.array([1.0, -2.0j, -1.0])

    pw_rec = pw_space.e_from_kernel(4.0j)
    xs = np.linspace(-5.0, 5.0, 100)
    moduli = np.abs(pw_rec(xs.astype(complex)))

    checks = {
        "quadratic coefficients within 1e-10":
            np.max(np.abs(np.asarray(coeffs) - expected)) <= 1e-10,
        "coefficient fit residual small": fit_residual <= 1e-10,
        "sine-gauge modulus matches on 100 real points within 1e-8":
            np.max(np.abs(moduli - 1.0)) <= 1e-8,
    }
    _report(4, "structure function recovered from the kernel", checks)


# ----------------------------------------------------------------------
# 5. resolvent correctness
# ----------------------------------------------------------------------

def test_05_resolvent_correctness(poly_space, pw_space, rng):
    lin = poly_space.element(Polynomial((0.0, 1.0)))
    g = poly_space.resolvent_element(PI / 2.0, 0.0, lin)
    worst_const = 0.0
    for _ in range(20):
        z = complex(rng.uniform(-3.0, 3.0), rng.uniform(-1.0, 1.0))
        worst_const = max(worst_const, abs(complex(g(z)) - 1.0))

    worst_identity = 0.0
    for space, beta in ((poly_space, PI / 2.0), (pw_space, 0.0)):
        f = (space.element(Polynomial((1.0, 0.5 - 0.25j)))
             if space.kind == "polynomial" else space.kernel_element(1.0j))
        w1, w2 = 0.4 + 0.9j, -1.1 + 2.0j
        r2f = space.resolvent_element(beta, w2, f)
        r1f = space.resolvent_element(beta, w1, f)
        r1r2f = space.resolvent_element(beta, w1, r2f)
        for _ in range(6):
            z = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
            lhs = complex(r1f(z)) - complex(r2f(z))
            rhs = (w1 - w2) * complex(r1r2f(z))
            worst_identity = max(worst_identity, abs(lhs - rhs))

    checks = {
        "resolvent of z at w=0 is constant 1 within 1e-10": worst_const <= 1e-10,
        "first resolvent identity within 1e-8 in both spaces":
            worst_identity <= 1e-8,
    }
    _report(5, "resolvent correctness", checks)


# ----------------------------------------------------------------------
# 6. phase partition and interlacing
# ----------------------------------------------------------------------

def test_06_partition_and_interlacing(poly_space, pw_space, rng):
    worst_member = 0.0
    worst_alt = np.inf
    for space in (poly_space, pw_space):
        for x in rng.uniform(-3.0, 3.0, size=50):
            beta = space.beta_at(float(x))
            scale = abs(complex(space.hb.e(complex(x))))
            worst_member = max(worst_member,
                               abs(complex(space.s(beta)(float(x)))) / scale)
            for delta in (0.4, 1.0, 2.0):
                other = (beta + delta) % PI
                worst_alt = min(worst_alt,
                                abs(complex(space.s(other)(float(x)))) / scale)

    window = (-2.5, 2.5)
    poly_pair = interlace_check(poly_space.spectrum(0.0, window),
                                poly_space.spectrum(PI / 2.0, window))
    pw_pair = interlace_check(pw_space.spectrum(0.0, window),
                              pw_space.spectrum(PI / 2.0, window))

    jacobi_ok = True
    for n in (16, 64):
        m = JacobiMatrix.constant(n)
        for tau_a, tau_b in ((0.0, float("inf")), (0.0, 1.0), (-0.7, 0.3)):
            a = truncated_extension_spectra(m, n, tau_a)
            b = truncated_extension_spectra(m, n, tau_b)
            jacobi_ok = jacobi_ok and bool(interlace_check(a, b))

    checks = {
        "beta_at gives a pencil zero (100 points)": worst_member <= 1e-9,
        "no other gauge vanishes at the same point": worst_alt >= 1e-3,
        "gauge spectra interlace in the polynomial space": bool(poly_pair),
        "gauge spectra interlace in the sine space": bool(pw_pair),
        "Jacobi boundary pairs interlace for N <= 64": jacobi_ok,
    }
    _report(6, "phase partition and interlacing", checks)


# ----------------------------------------------------------------------
# 7. functional-model identities
# ----------------------------------------------------------------------

def test_07_model_identities(poly_space, pw_space, rng):
    worst_intertwine = 0.0
    worst_cayley = 0.0
    worst_prej = 0.0
    for space, beta in ((poly_space, PI / 2.0), (pw_space, 0.0)):
        f = (space.element(Polynomial((1.0, 0.5 - 0.25j)))
             if space.kind == "polynomial" else space.kernel_element(1.0j))
        w = 0.6 + 1.2j
        lhs = space.resolvent_element(beta, w, f).sharp()
        rhs = space.resolvent_element(beta, np.conj(w), f.sharp())
        for _ in range(6):
            z = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
            worst_intertwine = max(worst_intertwine,
                                   abs(complex(lhs(z)) - complex(rhs(z))))

        phi = space.deficiency_element(1.0j)
        out = space.cayley_transfer(beta, 2.0j, 1.0j, phi)
        res, coeff = collinearity(out, space.kernel_element(-2.0j))
        worst_cayley = max(worst_cayley, res if abs(coeff) > 0.0 else np.inf)

        def psi(point, space=space, beta=beta, phi=phi):
            return space.cayley_transfer(beta, point, 1.0j, phi)

        for z in (0.7 + 0.9j, -1.2 + 0.5j):
            for v in (0.3 + 0.8j, -0.9 + 1.1j):
                pair_lhs = space.inner(psi(np.conj(z)), psi(np.conj(v)))
                pair_rhs = space.inner(psi(v), psi(z))
                worst_prej = max(worst_prej, abs(pair_lhs - pair_rhs))

    worst_conj = 0.0
    sample = np.linspace(-1.7, 1.7, 7).astype(complex) + 0.13j
    for space, gamma, v, count in ((poly_space, PI / 2.0, 1.0, 16),
                                   (pw_space, 0.0, 0.0, 4)):
        for _ in range(count):
            z = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
            a = space.xi_gauge(gamma, v, z).sharp()
            b = space.xi_gauge(gamma, v, np.conj(z))
            av = np.array([complex(a(t)) for t in sample])
            bv = np.array([complex(b(t)) for t in sample])
            worst_conj = max(worst_conj,
                             float(np.max(np.abs(av - bv))
                                   / (np.max(np.abs(av)) + 1e-300)))

    fs = [poly_space.element(Polynomial((1.0,))),
          poly_space.element(Polynomial((0.0, 1.0))),
          poly_space.element(Polynomial((0.7, -0.3j)))]
    ratio_ok = True
    for z in (-1.7, -0.4, 0.6, 1.9):
        ratios = []
        for f in fs:
            a = poly_space.inner(poly_space.xi_gauge(0.0, 0.0, z), f)
            b = poly_space.inner(poly_space.xi_gauge(PI / 2.0, 1.0, z), f)
            ratio_ok = ratio_ok and abs(b) > 1e-12
            ratios.append(a / b)
        base = ratios[0]
        ratio_ok = (ratio_ok and abs(base) > 1e-10
                    and abs(base.imag) <= 1e-8 * abs(base)
                    and all(abs(r - base) <= 1e-8 * abs(base) for r in ratios[1:]))

    checks = {
        "conjugation intertwines resolvents within 1e-8": worst_intertwine <= 1e-8,
        "transfer collinearity residual within 1e-8": worst_cayley <= 1e-8,
        "symmetric pairing within 1e-8": worst_prej <= 1e-8,
        "gauge conjugation symmetry within 1e-10 on 20 samples":
            worst_conj <= 1e-10,
        "gauge ratio is f-independent, real, zero-free": ratio_ok,
    }
    _report(7, "functional-model identities", checks)


# ----------------------------------------------------------------------
# 8. Jacobi invariants
# ----------------------------------------------------------------------

def test_08_jacobi_invariants(rng):
    t0 = time.perf_counter()
    free = JacobiMatrix.constant(1000)
    worst_wronskian = 0.0
    for z in rng.uniform(-1.9, 1.9, size=20):
        w = recurrence_eval(free, float(z)).wronskian()
        worst_wronskian = max(worst_wronskian, float(np.max(np.abs(w - 1.0))))

    gauge_dev = max(
        gauge_identity_check(JacobiMatrix.constant(16),
                             [0.0, 1.0, 1j, 2.5 - 0.5j]),
        gauge_identity_check(JacobiMatrix.geometric(16, 1.3),
                             [0.0, 1.0, 1j, 2.5 - 0.5j]))

    bounded = limit_circle_diagnostic(JacobiMatrix.geometric(512, 2.0), 1.0j)
    divergent = limit_circle_diagnostic(JacobiMatrix.constant(4096), 1.0j)
    elapsed = time.perf_counter() - t0

    checks = {
        "Wronskian = 1 within 1e-9 at N=1000, 20 points": worst_wronskian <= 1e-9,
        "second-basis coefficient deviation exactly 0": gauge_dev == 0.0,
        "doubling off-diagonals classified bounded":
            bounded.classification == "bounded",
        "constant off-diagonals classified divergent":
            divergent.classification == "divergent",
        f"runtime {elapsed:.2f}s under 5s": elapsed < 5.0,
    }
    _report(8, "Jacobi invariants", checks)


# ----------------------------------------------------------------------
# 9. canonical products against closed forms
# ----------------------------------------------------------------------

def test_09_canonical_products(rng):
    ints = integer_lattice(10_000)
    halfs = half_integer_lattice(10_000)
    xs = rng.uniform(-12.0, 12.0, size=50)

    sine_vals, _ = canonical_product(ints, xs)
    cosine_vals, _ = canonical_product(halfs, xs)
    sine_dev = np.max(np.abs(sine_vals - np.sin(PI * xs) / PI))
    cosine_dev = np.max(np.abs(cosine_vals - np.cos(PI * xs)))

    worst_deriv = 0.0
    for b in (0.0, 1.0, -3.0, 4.0):
        val, _ = product_derivative_at_zero(ints, b)
        worst_deriv = max(worst_deriv, abs(val - math.cos(PI * b)))
    for b in (0.5, -2.5, 7.5):
        val, _ = product_derivative_at_zero(halfs, b)
        worst_deriv = max(worst_deriv, abs(val - (-PI * math.sin(PI * b))))

    checks = {
        "integer lattice matches sin(pi z)/pi at 50 points within 1e-6":
            sine_dev <= 1e-6,
        "half-integer lattice matches cos(pi z) at 50 points within 1e-6":
            cosine_dev <= 1e-6,
        "derivatives at zeros match analytic values within 1e-6":
            worst_deriv <= 1e-6,
    }
    _report(9, "canonical products against closed forms", checks)
