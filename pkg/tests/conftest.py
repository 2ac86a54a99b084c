import numpy as np
import pytest

from kippenhahn.fixtures import cusp_matrix, flat_portion_matrix, no_singularity_matrix, two_value_matrix
from kippenhahn.toeplitz import ToeplitzSpec, build_toeplitz, swap_variant


def random_matrix(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_matrix(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def nil2():
    return np.array([[0, 1], [0, 0]], dtype=complex)


@pytest.fixture
def flat():
    return flat_portion_matrix()


@pytest.fixture
def nosing():
    return no_singularity_matrix()


@pytest.fixture
def cusp():
    return cusp_matrix()


@pytest.fixture
def twoval():
    return two_value_matrix(0)


@pytest.fixture
def t5():
    return build_toeplitz(ToeplitzSpec(5, 0, 1, 2))


@pytest.fixture
def t5_swap(t5):
    return swap_variant(t5)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
