"""The base polynomial ``F_A(x, y, t) = det(x H1 + y H2 + t I)``.

Coefficients are held densely in an ``(n+1, n+1)`` array ``coef`` where
``coef[a, b]`` multiplies ``x**a * y**b * t**(n - a - b)``; entries with
``a + b > n`` are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .matrix import HermitianPencil, hermitian_parts

__all__ = [
    "BasePolynomial",
    "PolynomialError",
    "compute_base_polynomial",
    "evaluate",
    "order_at_point",
    "normalize_point",
    "restrict_to_angle",
    "rotate",
    "equal_up_to_tol",
    "product",
    "verify_factorization",
    "format_polynomial",
]


class PolynomialError(RuntimeError):
    """Numerical failure while building a base polynomial."""


@dataclass(frozen=True, eq=False)
class BasePolynomial:
    degree: int
    coef: np.ndarray
    residue: float = 0.0

    def __post_init__(self):
        n = self.degree
        c = np.asarray(self.coef, dtype=float)
        if c.shape != (n + 1, n + 1):
            raise ValueError(f"coefficient array must be {(n + 1, n + 1)}")
        a, b = np.indices(c.shape)
        if np.any(c[a + b > n] != 0):
            raise ValueError("coefficients with a + b > degree must vanish")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficient")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coef", c)

    @classmethod
    def from_terms(cls, degree: int, terms: dict) -> "BasePolynomial":
        """Build from ``{(a, b, c): value}`` with ``a + b + c == degree``."""
        coef = np.zeros((degree + 1, degree + 1))
        for (a, b, c), v in terms.items():
            if a + b + c != degree or min(a, b, c) < 0:
                raise ValueError(f"bad exponent triple {(a, b, c)} for degree {degree}")
            coef[a, b] += v
        return cls(degree, coef)

    @classmethod
    def constant(cls, value: float = 1.0) -> "BasePolynomial":
        return cls(0, np.array([[value]], dtype=float))

    @property
    def coefficients(self) -> dict:
        n = self.degree
        return {
            (a, b, n - a - b): float(self.coef[a, b])
            for a in range(n + 1)
            for b in range(n + 1 - a)
        }

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coef)))

    def form(self, k: int) -> np.ndarray:
        """Coefficients of the degree-``k`` form in ``(x, y)`` multiplying ``t**(n-k)``.

        Index ``a`` holds the coefficient of ``x**a y**(k-a)``.
        """
        return np.array([self.coef[a, k - a] for a in range(k + 1)])

    @classmethod
    def from_forms(cls, forms: list) -> "BasePolynomial":
        n = len(forms) - 1
        coef = np.zeros((n + 1, n + 1))
        for k, f in enumerate(forms):
            for a in range(k + 1):
                coef[a, k - a] = f[a]
        return cls(n, coef)

    def __call__(self, x, y, t):
        return evaluate(self, (x, y, t))

    def __mul__(self, other):
        return product(self, other)


def _elementary_symmetric(eigs: np.ndarray) -> np.ndarray:
    # prod_j (t + lam_j) = sum_k e_k t^(n-k); np.poly gives prod (t - r) for r = -lam.
    return np.poly(-eigs)


def _interpolation_nodes(k: int, jitter: float = 0.0) -> np.ndarray:
    return np.arange(k + 1) * math.pi / (k + 1) + 0.1 + jitter


def compute_base_polynomial(p, cond_limit: float = 1e8, max_retries: int = 5) -> BasePolynomial:
    """Coefficient form of ``det(x H1 + y H2 + t I)``.

    For each ``k`` the form multiplying ``t**(n-k)`` is recovered from the
    degree-``k`` elementary symmetric function of the eigenvalues of
    ``cos(phi) H1 + sin(phi) H2`` sampled at ``k + 1`` angles.
    """
    if not isinstance(p, HermitianPencil):
        p = hermitian_parts(p)
    n = p.n
    forms = [np.array([1.0])]
    residue = 0.0
    cache: dict[float, np.ndarray] = {}

    def esym(phi: float) -> np.ndarray:
        if phi not in cache:
            m = math.cos(phi) * p.h1 + math.sin(phi) * p.h2
            # General (non-Hermitian) solver: its imaginary residue measures how
            # far the construction is from real.
            cache[phi] = _elementary_symmetric(np.linalg.eigvals(m))
        return cache[phi]

    for k in range(1, n + 1):
        for attempt in range(max_retries + 1):
            jitter = 0.0 if attempt == 0 else 0.037 * attempt
            phis = _interpolation_nodes(k, jitter)
            a = np.arange(k + 1)
            vander = np.cos(phis)[:, None] ** a[None, :] * np.sin(phis)[:, None] ** (k - a)[None, :]
            if np.linalg.cond(vander) <= cond_limit:
                break
        else:
            raise PolynomialError(f"interpolation for degree {k} is ill-conditioned")
        rhs = np.array([esym(phi)[k] for phi in phis])
        sol = np.linalg.solve(vander, rhs)
        residue = max(residue, float(np.max(np.abs(sol.imag))))
        forms.append(sol.real)

    f = BasePolynomial.from_forms(forms)
    rel = residue / max(f.max_abs, 1e-300)
    if rel > 1e-8:
        raise PolynomialError(f"imaginary residue {rel:.3e} exceeds 1e-8")
    object.__setattr__(f, "residue", rel)
    return f


def normalize_point(point) -> np.ndarray:
    z = np.asarray(point, dtype=np.complex128)
    if z.shape != (3,):
        raise ValueError("projective point needs three coordinates")
    m = np.max(np.abs(z))
    if m == 0:
        raise ValueError("(0:0:0) is not a projective point")
    return z / m


def evaluate(f: BasePolynomial, point) -> complex:
    """Evaluate by Horner's rule in ``t`` over the ``(x, y)`` forms."""
    x, y, t = (complex(v) for v in point)
    acc = 0j
    for k in range(f.degree + 1):
        form = f.form(k)
        val = sum(form[a] * x**a * y ** (k - a) for a in range(k + 1))
        acc = acc * t + val
    return complex(acc)


def _derivative_value(f: BasePolynomial, z: np.ndarray, i: int, j: int, l: int) -> complex:
    n = f.degree
    x, y, t = z
    total = 0j
    for a in range(i, n + 1):
        for b in range(j, n + 1 - a):
            c = n - a - b
            if c < l:
                continue
            coeff = f.coef[a, b]
            if coeff == 0.0:
                continue
            fall = math.perm(a, i) * math.perm(b, j) * math.perm(c, l)
            total += coeff * fall * x ** (a - i) * y ** (b - j) * t ** (c - l)
    return total


def order_at_point(f: BasePolynomial, point, tol: float = 1e-6) -> int:
    """Order of vanishing of ``f`` at a projective point.

    The smallest ``k`` such that some ``k``-th partial derivative exceeds
    ``tol * max|coef| * n!/(n-k)!`` in modulus. ``0`` means off the curve.
    Derivatives are taken exactly from the coefficient form.
    """
    z = normalize_point(point)
    n = f.degree
    ref = f.max_abs
    for k in range(n + 1):
        bound = tol * ref * math.perm(n, k)
        for i in range(k + 1):
            for j in range(k + 1 - i):
                if abs(_derivative_value(f, z, i, j, k - i - j)) > bound:
                    return k
    return n


def restrict_to_angle(f: BasePolynomial, theta: float) -> Polynomial:
    """``t -> f(cos theta, sin theta, t)``; equals ``prod_j (t + lam_j(theta))``."""
    n = f.degree
    c, s = math.cos(theta), math.sin(theta)
    out = np.zeros(n + 1)
    for k in range(n + 1):
        form = f.form(k)
        out[n - k] = sum(form[a] * c**a * s ** (k - a) for a in range(k + 1))
    return Polynomial(out)


def _linear_power(coeffs: np.ndarray, p: int) -> np.ndarray:
    out = np.array([1.0])
    for _ in range(p):
        out = np.convolve(out, coeffs)
    return out


def rotate(f: BasePolynomial, theta: float) -> BasePolynomial:
    """Base polynomial of ``exp(i theta) A`` given that of ``A``.

    ``F_{e^{i theta} A}(X, Y, t) = F_A(X cos + Y sin, -X sin + Y cos, t)``.
    """
    c, s = math.cos(theta), math.sin(theta)
    # Index = power of X in a form homogeneous in (X, Y).
    lx = np.array([s, c])  # X cos + Y sin
    ly = np.array([c, -s])  # -X sin + Y cos
    forms = []
    for k in range(f.degree + 1):
        form = f.form(k)
        acc = np.zeros(k + 1)
        for a in range(k + 1):
            if form[a] == 0.0:
                continue
            acc += form[a] * np.convolve(_linear_power(lx, a), _linear_power(ly, k - a))
        forms.append(acc)
    return BasePolynomial.from_forms(forms)


def equal_up_to_tol(f: BasePolynomial, g: BasePolynomial, tol: float = 1e-8) -> bool:
    if f.degree != g.degree:
        return False
    ref = max(f.max_abs, g.max_abs)
    return bool(np.max(np.abs(f.coef - g.coef)) <= tol * ref)


def product(f: BasePolynomial, g: BasePolynomial) -> BasePolynomial:
    n = f.degree + g.degree
    coef = np.zeros((n + 1, n + 1))
    for a in range(f.degree + 1):
        for b in range(f.degree + 1 - a):
            v = f.coef[a, b]
            if v != 0.0:
                coef[a : a + g.degree + 1, b : b + g.degree + 1] += v * g.coef
    return BasePolynomial(n, coef)


def verify_factorization(f: BasePolynomial, factors, tol: float = 1e-8) -> bool:
    """True iff the factors multiply to ``f`` up to one real scalar.

    The scalar is fixed by matching the ``t**n`` coefficient.
    """
    factors = list(factors)
    if sum(g.degree for g in factors) != f.degree:
        return False
    prod = BasePolynomial.constant(1.0)
    for g in factors:
        prod = product(prod, g)
    lead = prod.coef[0, 0]
    if abs(lead) <= 1e-300:
        return False
    scaled = BasePolynomial(prod.degree, prod.coef * (f.coef[0, 0] / lead))
    return equal_up_to_tol(f, scaled, tol)


def format_polynomial(f: BasePolynomial) -> str:
    """One ``a b c coefficient`` line per monomial, lexicographic, 17 significant digits."""
    lines = [
        f"{a} {b} {c} {v:.17g}"
        for (a, b, c), v in sorted(f.coefficients.items())
    ]
    return "\n".join(lines) + "\n"
