"""Reference matrices with known numerical-range structure."""

from __future__ import annotations

from fractions import Fraction as Fr

import numpy as np

from .basepoly import BasePolynomial
from .matrix import as_matrix

__all__ = [
    "flat_portion_matrix",
    "flat_portion_polynomial_terms",
    "flat_portion_polynomial",
    "no_singularity_matrix",
    "no_singularity_images",
    "cusp_matrix",
    "two_value_matrix",
    "FIXTURES",
]


def flat_portion_matrix() -> np.ndarray:
    """Nilpotent 4x4 with two flat boundary portions at non-collinear angles."""
    return as_matrix(
        [
            [0, 4j / 3, 1j / 2, 8j / 3],
            [0, 0, 8j / 3, 0],
            [0, 0, 0, 4j / 3],
            [0, 0, 0, 0],
        ]
    )


def flat_portion_polynomial_terms() -> dict:
    """Exact coefficients ``{(a, b, c): Fraction}`` of ``x^a y^b t^c``."""
    return {
        (0, 0, 4): Fr(1),
        (2, 0, 2): Fr(-649, 144),
        (4, 0, 0): Fr(400, 81),
        (2, 1, 1): Fr(8, 9),
        (0, 2, 2): Fr(-649, 144),
        (2, 2, 0): Fr(544, 81),
        (0, 3, 1): Fr(8, 9),
        (0, 4, 0): Fr(16, 9),
    }


def flat_portion_polynomial() -> BasePolynomial:
    return BasePolynomial.from_terms(4, {k: float(v) for k, v in flat_portion_polynomial_terms().items()})


def no_singularity_matrix() -> np.ndarray:
    """4x4 whose base curve has no singularities yet ``k = 3``."""
    return as_matrix(
        [
            [19j / 54, 0, 0, 7j / 54],
            [0, 8 / 27, 0, 5 / 54],
            [0, 0, 0.5 + 0.5j, 1 / 18 - 1j / 18],
            [7j / 54, 5 / 54, 1 / 18 - 1j / 18, 5 / 27 + 10j / 27],
        ]
    )


def no_singularity_images() -> tuple[complex, ...]:
    """``<A e_j, e_j>`` for ``j = 1, 2, 3``, all on the boundary."""
    return (19j / 54, 8 / 27, 0.5 + 0.5j)


def cusp_matrix() -> np.ndarray:
    """Nilpotent shift with weights ``1, 1/2, 2``; curve has cusps at ``(+-i:1:0)``."""
    return as_matrix(np.diag([1.0, 0.5, 2.0], 1))


def two_value_matrix(seed: int = 0) -> np.ndarray:
    """``diag(1, 1, -1, -1) + i H2`` with a seeded generic Hermitian ``H2``.

    ``Re A`` has two distinct eigenvalues, so an irreducible draw has ``k = 4``.
    """
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    h2 = (g + g.conj().T) / 2
    return as_matrix(np.diag([1.0, 1.0, -1.0, -1.0]) + 1j * h2)


FIXTURES = {
    "flat-portion": flat_portion_matrix,
    "no-singularity": no_singularity_matrix,
    "cusp": cusp_matrix,
    "two-value": two_value_matrix,
}
