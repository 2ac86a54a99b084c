"""Tridiagonal Toeplitz matrices ``T_n(a, b, c)`` and their off-diagonal swap variant.

``T_n(0, b, c)`` and its swap variant share a base polynomial (and so a
numerical range), but the swap variant splits into ``2 x 2`` blocks
``sigma_j [[0, 1], [beta, 0]]`` plus a zero block when ``n`` is odd.  The
block with the largest ``sigma`` dominates, so the swap variant has Gau--Wu
number 2 while ``k(T_n) = ceil(n/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basepoly import (
    BasePolynomial,
    compute_base_polynomial,
    equal_up_to_tol,
    verify_factorization,
)
from .config import RunConfig
from .gauwu import toeplitz_k, witness_lower_bound
from .geometry import support_value
from .matrix import as_matrix, commutant_dimension, hermitian_parts

__all__ = [
    "ToeplitzHypothesisError",
    "ToeplitzSpec",
    "BlockDecomposition",
    "Check",
    "ToeplitzReport",
    "build_toeplitz",
    "swap_variant",
    "is_tridiagonal",
    "block_decomposition",
    "block_polynomial",
    "verify_prop_toes",
    "WITNESS_MAX_N",
]

WITNESS_MAX_N = 8


class ToeplitzHypothesisError(ValueError):
    """``n >= 3`` and ``|b| != |c|`` are required for the Gau--Wu claims."""


@dataclass(frozen=True)
class ToeplitzSpec:
    n: int
    a: complex = 0.0
    b: complex = 1.0
    c: complex = 0.0

    @property
    def moduli_differ(self) -> bool:
        ab, ac = abs(self.b), abs(self.c)
        return abs(ab - ac) > 1e-10 * max(ab, ac, 1e-300)

    def centered(self) -> "ToeplitzSpec":
        return ToeplitzSpec(self.n, 0.0, self.b, self.c)


@dataclass(frozen=True)
class BlockDecomposition:
    beta: complex
    sigmas: tuple[float, ...]
    blocks: tuple[np.ndarray, ...]
    has_zero_block: bool

    @property
    def dimension(self) -> int:
        return 2 * len(self.blocks) + (1 if self.has_zero_block else 0)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float | None = None
    detail: str = ""


@dataclass
class ToeplitzReport:
    spec: ToeplitzSpec
    k_a: int
    k_a_swap: int
    decomposition: BlockDecomposition
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def build_toeplitz(spec: ToeplitzSpec) -> np.ndarray:
    n = spec.n
    if n < 1:
        raise ValueError("n must be >= 1")
    m = np.zeros((n, n), dtype=np.complex128)
    m[np.arange(n), np.arange(n)] = spec.a
    m[np.arange(n - 1), np.arange(1, n)] = spec.b
    m[np.arange(1, n), np.arange(n - 1)] = spec.c
    return as_matrix(m)


def is_tridiagonal(a) -> bool:
    a = np.asarray(a)
    i, j = np.indices(a.shape)
    return bool(np.all(a[np.abs(i - j) > 1] == 0))


def swap_variant(a) -> np.ndarray:
    """Exchange ``a[j, j+1]`` and ``a[j+1, j]`` for every odd ``j`` (1-based)."""
    a = as_matrix(a)
    if not is_tridiagonal(a):
        raise ValueError("swap_variant needs a tridiagonal matrix")
    out = a.copy()
    for j in range(0, a.shape[0] - 1, 2):
        out[j, j + 1], out[j + 1, j] = a[j + 1, j], a[j, j + 1]
    return as_matrix(out)


def _x_matrix(n: int, b: complex) -> np.ndarray:
    rows, cols = math.ceil(n / 2), n // 2
    x = np.zeros((rows, cols), dtype=np.complex128)
    # rows: 0-based even indices; columns: odd indices
    for j in range(cols):
        x[j, j] = b
        if j + 1 < rows:
            x[j + 1, j] = b
    return x


def block_decomposition(spec: ToeplitzSpec) -> BlockDecomposition:
    if spec.b == 0:
        raise ToeplitzHypothesisError("b = 0: beta = c / conj(b) undefined")
    n = spec.n
    sig = np.linalg.svd(_x_matrix(n, spec.b), compute_uv=False) if n >= 2 else np.array([])
    sig = np.sort(sig)[::-1]
    if sig.size and np.any(sig <= 1e-12 * sig[0]):
        raise ValueError("X has a vanishing singular value")
    if sig.size >= 2 and not sig[0] - sig[1] > 1e-12 * sig[0]:
        raise ValueError("largest singular value of X is not simple")
    beta = complex(spec.c / np.conj(spec.b))
    unit = np.array([[0, 1], [beta, 0]], dtype=np.complex128)
    blocks = tuple(s * unit for s in sig)
    return BlockDecomposition(beta, tuple(float(s) for s in sig), blocks, n % 2 == 1)


def block_polynomial(dec: BlockDecomposition) -> list[BasePolynomial]:
    """Base polynomials of the blocks, with ``t`` for the zero block."""
    polys = [compute_base_polynomial(hermitian_parts(b)) for b in dec.blocks]
    if dec.has_zero_block:
        polys.append(BasePolynomial.from_terms(1, {(0, 0, 1): 1.0}))
    return polys


def _nesting_margin(dec: BlockDecomposition, samples: int = 720) -> tuple[float, float]:
    """Worst support-function slack of inner blocks vs the dominant block.

    Returns ``(worst, required)``; nesting with margin holds iff
    ``worst <= -required`` (the zero block is the point at the origin).
    """
    thetas = 2 * math.pi * np.arange(samples) / samples
    unit = hermitian_parts(np.array([[0, 1], [dec.beta, 0]]))
    h = np.array([support_value(unit, t) for t in thetas])
    semi_minor = float(np.min(h))
    s1 = dec.sigmas[0]
    worst = -math.inf
    required = math.inf
    for s in dec.sigmas[1:]:
        worst = max(worst, float(np.max(s * h - s1 * h)))
        required = min(required, (s1 - s) / 2 * semi_minor)
    if dec.has_zero_block:
        worst = max(worst, float(np.max(-s1 * h)))
        required = min(required, s1 / 2 * semi_minor)
    if worst == -math.inf:
        return 0.0, 0.0
    return worst, required


def verify_prop_toes(spec: ToeplitzSpec, config: RunConfig | None = None) -> ToeplitzReport:
    """Check the Toeplitz/swap claims for one instance.

    The diagonal ``a`` is a rigid translation of everything here, so the
    checks run on ``T_n(0, b, c)``.
    """
    cfg = config or RunConfig()
    if spec.n < 3:
        raise ToeplitzHypothesisError("n must be >= 3")
    if not spec.moduli_differ:
        raise ToeplitzHypothesisError("|b| must differ from |c|")
    s0 = spec.centered()
    a = build_toeplitz(s0)
    a_swap = swap_variant(a)
    k_a = toeplitz_k(spec.n, spec.b, spec.c)
    dec = block_decomposition(s0)
    checks: list[Check] = []

    f_a = compute_base_polynomial(a)
    f_s = compute_base_polynomial(a_swap)
    ref = max(f_a.max_abs, f_s.max_abs)
    dev = float(np.max(np.abs(f_a.coef - f_s.coef))) / ref
    checks.append(Check("base polynomial swap invariance", equal_up_to_tol(f_a, f_s, cfg.tol_coeff), dev))

    factors = block_polynomial(dec)
    checks.append(
        Check(
            "block factorization of F",
            verify_factorization(f_s, factors, cfg.tol_coeff),
            detail=f"{len(dec.blocks)} quadratic block(s)" + (" and t" if dec.has_zero_block else ""),
        )
    )

    dim_a = commutant_dimension(a)
    dim_s = commutant_dimension(a_swap)
    checks.append(
        Check(
            "irreducibility",
            dim_a == 1 and dim_s >= 2,
            detail=f"commutant dimension {dim_a} for A, {dim_s} for the swap variant",
        )
    )

    simple = len(dec.sigmas) < 2 or dec.sigmas[0] > dec.sigmas[1]
    worst, required = _nesting_margin(dec)
    nested = simple and worst <= -required * (1 - 1e-9)
    checks.append(
        Check(
            "dominant block nesting",
            nested,
            worst,
            detail="sigmas = (" + ", ".join(f"{s:.12g}" for s in dec.sigmas) + ")",
        )
    )

    if spec.n <= WITNESS_MAX_N:
        count, _ = witness_lower_bound(a, config=cfg)
        checks.append(
            Check(
                "witness search reaches ceil(n/2)",
                count == k_a,
                detail=f"{count} certified witnesses for k = {k_a}",
            )
        )
    else:
        checks.append(Check("witness search reaches ceil(n/2)", True, detail=f"skipped for n > {WITNESS_MAX_N}"))

    count_s, _ = witness_lower_bound(a_swap, config=cfg)
    checks.append(
        Check(
            "swap variant k = 2 from the decomposition",
            nested and count_s == 2,
            detail=f"witness floor {count_s}; upper bound 2 from the dominant block "
            "(decomposition-derived)",
        )
    )
    return ToeplitzReport(spec, k_a, 2, dec, checks)
