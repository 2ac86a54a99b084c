import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_matrix, random_unitary
from kippenhahn.basepoly import (
    BasePolynomial,
    PolynomialError,
    compute_base_polynomial,
    equal_up_to_tol,
    evaluate,
    format_polynomial,
    order_at_point,
    product,
    restrict_to_angle,
    rotate,
    verify_factorization,
)
from kippenhahn.fixtures import flat_portion_polynomial_terms
from kippenhahn.geometry import real_singularities
from kippenhahn.matrix import HermitianPencil, hermitian_parts

T = BasePolynomial.from_terms(1, {(0, 0, 1): 1.0})


def det_oracle(a, x, y, t):
    p = hermitian_parts(a)
    return np.linalg.det(x * p.h1 + y * p.h2 + t * np.eye(a.shape[0]))


def t5_product():
    # (9x^2 + y^2 - 4t^2)(27x^2 + 3y^2 - 4t^2) t / 16
    q1 = BasePolynomial.from_terms(2, {(2, 0, 0): 9, (0, 2, 0): 1, (0, 0, 2): -4})
    q2 = BasePolynomial.from_terms(2, {(2, 0, 0): 27, (0, 2, 0): 3, (0, 0, 2): -4})
    f = product(product(q1, q2), T)
    return BasePolynomial(5, f.coef / 16)


def test_nilpotent_conic(nil2):
    f = compute_base_polynomial(nil2)
    expected = BasePolynomial.from_terms(2, {(0, 0, 2): 1, (2, 0, 0): -0.25, (0, 2, 0): -0.25})
    assert np.max(np.abs(f.coef - expected.coef)) < 1e-14


def test_flat_portion_coefficients(flat):
    f = compute_base_polynomial(flat)
    terms = flat_portion_polynomial_terms()
    for key, v in f.coefficients.items():
        exact = float(terms.get(key, Fraction(0)))
        assert abs(v - exact) <= 1e-8 * max(abs(exact), 1.0), key


def test_toeplitz_product(t5):
    f = compute_base_polynomial(t5)
    assert np.max(np.abs(f.coef - t5_product().coef)) <= 1e-8 * f.max_abs


def test_normalization_and_oracle(rng):
    for n in (1, 2, 3, 5):
        a = random_matrix(rng, n)
        f = compute_base_polynomial(a)
        assert f.coef[0, 0] == pytest.approx(1.0, abs=1e-12)
        for _ in range(5):
            x, y, t = rng.standard_normal(3)
            assert evaluate(f, (x, y, t)) == pytest.approx(det_oracle(a, x, y, t), rel=1e-8, abs=1e-10)


def test_real_coefficient_residue(rng):
    for _ in range(20):
        n = int(rng.integers(2, 7))
        f = compute_base_polynomial(random_matrix(rng, n))
        assert f.residue <= 1e-8


def test_evaluate_examples(nil2, cusp):
    f = compute_base_polynomial(nil2)
    assert evaluate(f, (0, 0, 1)) == pytest.approx(1)
    assert abs(evaluate(f, (1, 0, 0.5))) < 1e-15
    g = compute_base_polynomial(cusp)
    assert abs(evaluate(g, (1j, 1, 0))) < 1e-12
    assert abs(evaluate(g, (-1j, 1, 0))) < 1e-12


def test_order_examples(nil2, cusp, flat):
    assert order_at_point(compute_base_polynomial(nil2), (1, 0, -0.5)) == 1
    assert order_at_point(compute_base_polynomial(nil2), (1, 0, 0.3)) == 0
    g = compute_base_polynomial(cusp)
    assert order_at_point(g, (1j, 1, 0)) == 2
    assert order_at_point(g, (-1j, 1, 0)) == 2
    f = compute_base_polynomial(flat)
    pts = real_singularities(flat, poly=f)
    assert len(pts) == 2
    assert all(order_at_point(f, q.point) == 2 for q in pts)


@pytest.mark.parametrize("m", [2, 3])
def test_order_matches_multiplicity(rng, m):
    n = m + 2
    lam = 0.7
    u = random_unitary(rng, n)
    h1 = u @ np.diag([lam] * m + [2.0, -1.5][: n - m]) @ u.conj().T
    h1 = (h1 + h1.conj().T) / 2
    g = random_matrix(rng, n)
    p = HermitianPencil(h1, (g + g.conj().T) / 2)
    f = compute_base_polynomial(p)
    assert order_at_point(f, (1, 0, -lam)) == m


def test_restrict_examples(nil2, t5):
    r = restrict_to_angle(compute_base_polynomial(nil2), 1.234)
    np.testing.assert_allclose(r.coef, [-0.25, 0, 1], atol=1e-14)
    r = restrict_to_angle(compute_base_polynomial(np.diag([0.0, 1.0])), 0.0)
    np.testing.assert_allclose(r.coef, [0, 1, 1], atol=1e-14)
    # x = 1, y = 0 in the product form: t (t^2 - 9/4)(t^2 - 27/4)
    r = restrict_to_angle(compute_base_polynomial(t5), 0.0)
    expected = np.polynomial.Polynomial([0, 1]) * np.polynomial.Polynomial([-9 / 4, 0, 1]) * np.polynomial.Polynomial(
        [-27 / 4, 0, 1]
    )
    np.testing.assert_allclose(r.coef, expected.coef, atol=1e-12)


def test_rotate_examples(nil2, rng):
    f = compute_base_polynomial(nil2)
    assert equal_up_to_tol(rotate(f, 0.0), f)
    assert equal_up_to_tol(rotate(f, 0.9), f)
    g = compute_base_polynomial(random_matrix(rng, 4))
    assert equal_up_to_tol(rotate(g, 2 * math.pi), g)


def test_rotation_equivariance(rng):
    for n in (3, 4):
        for _ in range(5):
            a = random_matrix(rng, n)
            theta = float(rng.uniform(0, 2 * math.pi))
            lhs = rotate(compute_base_polynomial(a), theta)
            rhs = compute_base_polynomial(np.exp(1j * theta) * a)
            assert equal_up_to_tol(lhs, rhs, 1e-8)


def test_equal_up_to_tol_negative(rng):
    f = compute_base_polynomial(random_matrix(rng, 3))
    bumped = f.coef.copy()
    bumped[3, 0] += 1e-3
    assert not equal_up_to_tol(f, BasePolynomial(3, bumped), 1e-8)
    assert not equal_up_to_tol(f, compute_base_polynomial(random_matrix(rng, 4)))


def test_product_examples(rng):
    f = compute_base_polynomial(random_matrix(rng, 3))
    assert equal_up_to_tol(product(f, BasePolynomial.constant()), f)
    ft = product(f, T)
    assert ft.degree == 4
    np.testing.assert_array_equal(ft.coef[:4, :4], f.coef)


def test_block_product_equals_swap_variant(t5_swap):
    b1 = BasePolynomial.from_terms(2, {(0, 0, 2): 1, (2, 0, 0): -9 / 4, (0, 2, 0): -1 / 4})
    b2 = BasePolynomial.from_terms(2, {(0, 0, 2): 1, (2, 0, 0): -27 / 4, (0, 2, 0): -3 / 4})
    f = compute_base_polynomial(t5_swap)
    assert equal_up_to_tol(product(product(b1, b2), T), f)


def test_verify_factorization(t5):
    f = compute_base_polynomial(t5)
    q1 = BasePolynomial.from_terms(2, {(2, 0, 0): 9, (0, 2, 0): 1, (0, 0, 2): -4})
    q2 = BasePolynomial.from_terms(2, {(2, 0, 0): 27, (0, 2, 0): 3, (0, 0, 2): -4})
    assert verify_factorization(f, [q1, q2, T])
    bad = BasePolynomial.from_terms(2, {(2, 0, 0): 9.01, (0, 2, 0): 1, (0, 0, 2): -4})
    assert not verify_factorization(f, [bad, q2, T])
    assert verify_factorization(q1, [q1])
    assert not verify_factorization(f, [q1, q2])


def test_invalid_coefficients():
    with pytest.raises(ValueError):
        BasePolynomial(1, np.ones((2, 2)))
    with pytest.raises(ValueError):
        BasePolynomial.from_terms(2, {(1, 0, 0): 1.0})


def test_export_format(nil2):
    text = format_polynomial(compute_base_polynomial(nil2))
    lines = text.strip().split("\n")
    assert len(lines) == 6
    keys = [tuple(map(int, ln.split()[:3])) for ln in lines]
    assert keys == sorted(keys) and all(sum(k) == 2 for k in keys)
    assert "0 0 2 1" in lines
    # 17 significant digits round-trip
    assert float(lines[3].split()[3]) == compute_base_polynomial(nil2).coefficients[keys[3]]


@settings(max_examples=25, deadline=None)
@given(
    seed=st.integers(0, 2**32 - 1),
    s=st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_homogeneity(seed, s):
    r = np.random.default_rng(seed)
    a = random_matrix(r, 4)
    f = compute_base_polynomial(a)
    pt = r.standard_normal(3) + 1j * r.standard_normal(3)
    lhs = evaluate(f, s * pt)
    rhs = s**4 * evaluate(f, pt)
    assert abs(lhs - rhs) <= 1e-8 * max(abs(rhs), abs(s) ** 4 * f.max_abs * np.max(np.abs(pt)) ** 4)


def test_spectral_roots(rng, flat, t5):
    for a in (flat, t5, random_matrix(rng, 4)):
        p = hermitian_parts(a)
        f = compute_base_polynomial(p)
        for theta in np.linspace(0, 2 * math.pi, 16, endpoint=False):
            roots = np.sort(np.real(restrict_to_angle(f, theta).roots()))
            lam = np.sort(-np.linalg.eigvalsh(p.at(theta)))
            assert np.max(np.abs(roots - lam)) <= 1e-7 * max(1.0, p.scale)


def test_ill_conditioned_raises(nil2):
    with pytest.raises(PolynomialError):
        compute_base_polynomial(nil2, cond_limit=1.0, max_retries=1)
