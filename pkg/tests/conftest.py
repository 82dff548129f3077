"""Shared fixtures: built-in pairs and cached solver runs.

The expensive conjugation solves are session-scoped so the whole suite
pays for each grid size once.
"""

import pytest

from pconfig import (
    conjugate_to_standard,
    perturbed_flat_pair,
    quadratic_pair,
    standard_pair,
)


@pytest.fixture(scope="session")
def std():
    return standard_pair()


@pytest.fixture(scope="session")
def quad02():
    return quadratic_pair(0.2)


@pytest.fixture(scope="session")
def quad_m02():
    return quadratic_pair(-0.2)


@pytest.fixture(scope="session")
def pf2():
    return perturbed_flat_pair(2)


@pytest.fixture(scope="session")
def pf3():
    return perturbed_flat_pair(3)


@pytest.fixture(scope="session")
def quad02_solved(quad02):
    """(h, log) for quadratic(0.2) at the default grid 2^12 + 1."""
    return conjugate_to_standard(quad02, grid=4097, tol=1e-10)


@pytest.fixture(scope="session")
def quad02_solved_16k(quad02):
    """(h, log) for quadratic(0.2) at grid 2^14 + 1."""
    return conjugate_to_standard(quad02, grid=16385, tol=1e-10)


@pytest.fixture(scope="session")
def quad02_solved_64k(quad02):
    """(h, log) for quadratic(0.2) at grid 2^16 + 1 (regularity probes)."""
    return conjugate_to_standard(quad02, grid=65537, tol=1e-10)
