import pytest

from varsolid import OptimizeOptions, TwoYukawaParams, make_krypton_units, solve_solid


@pytest.fixture(scope="session")
def krypton_units():
    return make_krypton_units()


@pytest.fixture(scope="session")
def potential():
    return TwoYukawaParams()


@pytest.fixture(scope="session")
def solid(potential, krypton_units):
    """The full Krypton solve (minimization + bulk modulus), shared: it is
    deterministic, so every test may read from the same record."""
    return solve_solid(potential, krypton_units, OptimizeOptions())
