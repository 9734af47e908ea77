"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from debranges import ZeroSequence, paley_wiener_space, polynomial_space

SEED = 20260817


def integer_lattice(n):
    """Truncated integer lattice {-n, ..., n} including 0."""
    vals = np.arange(-n, n + 1, dtype=float)
    return ZeroSequence(vals, truncated=True)


def half_integer_lattice(n):
    """Truncated half-integer lattice {+-1/2, ..., +-(n - 1/2)}."""
    pos = np.arange(n, dtype=float) + 0.5
    vals = np.sort(np.concatenate([-pos, pos]))
    return ZeroSequence(vals, truncated=True)


@pytest.fixture
def rng():
    """Deterministic random generator, fresh per test."""
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def poly_space():
    """B(-(z+i)^2): the two-dimensional space with basis {1, z}."""
    return polynomial_space(2)


@pytest.fixture(scope="session")
def pw_space():
    """B(e^{-i pi z}): the Paley-Wiener space with bandwidth pi."""
    return paley_wiener_space()
