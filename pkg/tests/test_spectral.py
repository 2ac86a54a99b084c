import math

import numpy as np
import pytest

from conftest import random_matrix
from kippenhahn.basepoly import compute_base_polynomial, restrict_to_angle
from kippenhahn.matrix import HermitianPencil, hermitian_parts
from kippenhahn.spectral import (
    ALL_ANGLES,
    INTERIOR,
    MAX_REPEATED,
    TWO_DISTINCT,
    angle_distance,
    cluster_eigenvalues,
    golden_section_min,
    pencil_at,
    refine_event,
    scan,
    spectrum_slice,
    two_eigenvalue_angles,
)


def test_pencil_at_cardinal_angles(rng):
    p = hermitian_parts(random_matrix(rng, 3))
    np.testing.assert_allclose(pencil_at(p, 0.0), p.h1, atol=1e-15)
    np.testing.assert_allclose(pencil_at(p, math.pi / 2), p.h2, atol=1e-15)
    np.testing.assert_allclose(pencil_at(p, math.pi), -p.h1, atol=1e-15)


@pytest.mark.parametrize("theta", [0.0, 0.7, 2.0, 5.5])
def test_slice_nilpotent(nil2, theta):
    sl = spectrum_slice(hermitian_parts(nil2), theta)
    np.testing.assert_allclose(sl.eigenvalues, [0.5, -0.5], atol=1e-14)
    assert [c.multiplicity for c in sl.clusters] == [1, 1]


def test_slice_hermitian_diagonal():
    sl = spectrum_slice(hermitian_parts(np.diag([3.0, -1.0, 2.0, 0.0])), 0.0)
    np.testing.assert_allclose(sl.eigenvalues, [3, 2, 0, -1], atol=1e-14)


def test_slice_no_singularity_at_pi(nosing):
    sl = spectrum_slice(hermitian_parts(nosing), math.pi)
    assert abs(sl.eigenvalues[0]) < 1e-12
    assert sl.top.multiplicity == 1
    v = sl.eigenspace(sl.top)[:, 0]
    assert abs(abs(v[0]) - 1) < 1e-10


def test_slice_contracts(rng):
    p = hermitian_parts(random_matrix(rng, 6))
    for theta in rng.uniform(0, 2 * math.pi, 8):
        sl = spectrum_slice(p, theta)
        assert sum(c.multiplicity for c in sl.clusters) == 6
        v = sl.basis
        assert np.max(np.abs(v.conj().T @ v - np.eye(6))) <= 1e-10
        h = p.at(theta)
        resid = np.linalg.norm(h @ v - v * sl.eigenvalues, axis=0)
        assert np.all(resid <= 1e-8 * np.linalg.norm(h, 2))


def test_cluster_eigenvalues_chaining():
    cl = cluster_eigenvalues(np.array([3.0, 3.0 + 1e-9, 1.0, 0.0, -1e-9]), 1e-8)
    assert [c.multiplicity for c in cl] == [2, 1, 2]


def test_golden_section_min():
    x, fx = golden_section_min(lambda t: (t - 0.3) ** 2, 0.0, 1.0, xtol=1e-12)
    assert abs(x - 0.3) < 1e-6 and fx < 1e-12


def test_scan_nilpotent_has_no_events(nil2):
    assert scan(hermitian_parts(nil2)).events == []


def test_scan_flat_portion_events(flat):
    res = scan(hermitian_parts(flat))
    ev = res.max_events()
    assert len(ev) == 2
    assert all(e.kind == MAX_REPEATED and e.multiplicity == 2 for e in ev)
    d = angle_distance(ev[0].theta_star, ev[1].theta_star, math.pi)
    assert d > 1e-3


def test_scan_two_value_event(twoval):
    res = scan(hermitian_parts(twoval))
    at_zero = [e for e in res.events if angle_distance(e.theta_star, 0.0) < 1e-9]
    assert at_zero and at_zero[0].kind == TWO_DISTINCT


def test_refine_constant_gap_is_none(nil2):
    assert refine_event(hermitian_parts(nil2), 0.1, 0.4, 0) is None


def test_refine_real_crossing():
    p = HermitianPencil(np.diag([1.0, -1.0]).astype(complex), np.zeros((2, 2), complex))
    ev = refine_event(p, 1.4, 1.7, 0)
    assert ev is not None
    assert abs(ev.theta_star - math.pi / 2) < 1e-8
    assert ev.multiplicity == 2


def test_refine_flat_portion_gap(flat):
    p = hermitian_parts(flat)
    for e in scan(p).max_events():
        ev = refine_event(p, e.theta_star - 0.01, e.theta_star + 0.01, 0)
        assert ev is not None and abs(ev.gap) < 1e-9


def test_avoided_crossing_is_not_an_event():
    h1 = np.diag([1.0, -1.0]).astype(complex)
    h2 = np.array([[0, 1e-3], [1e-3, 0]], dtype=complex)
    p = HermitianPencil(h1, h2)
    assert refine_event(p, 1.4, 1.7, 0) is None


def test_interior_coincidence_kind():
    h1 = np.diag([2.0, 1.0, 1.0, -3.0]).astype(complex)
    h2 = np.diag([0.5, 1.0, -1.0, 0.0]).astype(complex)
    res = scan(HermitianPencil(h1, h2))
    kinds = {e.kind for e in res.events}
    assert INTERIOR in kinds


def test_two_eigenvalue_angles(nil2, twoval, flat):
    assert two_eigenvalue_angles(hermitian_parts(nil2)) is ALL_ANGLES
    angles = two_eigenvalue_angles(hermitian_parts(twoval))
    assert any(angle_distance(t, 0.0, math.pi) < 1e-9 for t in angles)
    assert list(two_eigenvalue_angles(hermitian_parts(flat))) == []


def test_antipodal_symmetry(rng):
    p = hermitian_parts(random_matrix(rng, 5))
    norm = p.scale
    for theta in rng.uniform(0, 2 * math.pi, 32):
        a = spectrum_slice(p, theta).eigenvalues
        b = spectrum_slice(p, theta + math.pi).eigenvalues
        assert np.max(np.abs(a + b[::-1])) <= 1e-12 * norm


def test_branch_continuity(rng):
    p = hermitian_parts(random_matrix(rng, 5))
    w = scan(p).eigenvalue_table()
    step = 2 * math.pi / 720
    diffs = np.abs(np.diff(np.vstack([w, w[:1]]), axis=0))
    assert diffs.max() <= p.scale * step * 1.1


def test_characteristic_polynomial_consistency(rng):
    p = hermitian_parts(random_matrix(rng, 4))
    f = compute_base_polynomial(p)
    for theta in np.linspace(0, 2 * math.pi, 16, endpoint=False):
        ev = spectrum_slice(p, theta).eigenvalues
        expected = np.poly(-ev)[::-1]
        got = restrict_to_angle(f, theta).coef
        assert np.max(np.abs(got - expected)) <= 1e-8 * np.max(np.abs(expected))


def test_weyl_perturbation(rng):
    p = hermitian_parts(random_matrix(rng, 5))
    e = random_matrix(rng, 5)
    e = (e + e.conj().T) / 2
    delta = 1e-3
    e *= delta / np.linalg.norm(e, 2)
    q = HermitianPencil(p.h1 + e, p.h2)
    for theta in (0.0, 1.0):
        d = spectrum_slice(p, theta).eigenvalues - spectrum_slice(q, theta).eigenvalues
        assert np.max(np.abs(d)) <= abs(math.cos(theta)) * delta + 1e-12


def test_bad_grid_rejected(nil2):
    with pytest.raises(ValueError):
        scan(hermitian_parts(nil2), grid_size=4)
