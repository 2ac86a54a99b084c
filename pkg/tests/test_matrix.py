import json

import numpy as np
import pytest

from conftest import random_matrix, random_unitary
from kippenhahn.matrix import (
    MatrixFormatError,
    as_matrix,
    commutant_dimension,
    dump_matrix_json,
    hermitian_parts,
    is_unitarily_irreducible,
    load_matrix,
    parse_matrix_text,
)
from kippenhahn.toeplitz import ToeplitzSpec, build_toeplitz, swap_variant


def test_hermitian_parts_nilpotent(nil2):
    p = hermitian_parts(nil2)
    np.testing.assert_array_equal(p.h1, [[0, 0.5], [0.5, 0]])
    np.testing.assert_array_equal(p.h2, [[0, -0.5j], [0.5j, 0]])


def test_hermitian_input_has_zero_imaginary_part():
    h = np.array([[1, 2 - 1j], [2 + 1j, 3]])
    assert np.all(hermitian_parts(h).h2 == 0)


def test_cusp_real_part(cusp):
    p = hermitian_parts(cusp)
    expected = np.diag([0.5, 0.25, 1.0], 1)
    np.testing.assert_array_equal(p.h1, expected + expected.T)


def test_parts_are_exactly_hermitian_and_reconstruct(rng):
    for n in (1, 3, 6):
        a = random_matrix(rng, n)
        p = hermitian_parts(a)
        assert np.array_equal(p.h1, p.h1.conj().T)
        assert np.array_equal(p.h2, p.h2.conj().T)
        eps = np.finfo(float).eps
        assert np.all(np.abs(p.matrix() - a) <= 2 * eps * np.abs(a).max())


def test_pencil_derivative_is_quarter_turn(rng):
    p = hermitian_parts(random_matrix(rng, 4))
    np.testing.assert_allclose(p.derivative_at(0.3), p.at(0.3 + np.pi / 2), atol=1e-14)


@pytest.mark.parametrize(
    "a,dim",
    [
        ([[0, 1], [0, 0]], 1),
        (np.diag([1, 2]), 2),
        (np.eye(3), 9),
    ],
)
def test_commutant_dimension_examples(a, dim):
    assert commutant_dimension(a) == dim


def test_toeplitz_irreducibility():
    a = build_toeplitz(ToeplitzSpec(5, 0, 1, 2))
    assert commutant_dimension(a) == 1
    assert is_unitarily_irreducible(a)
    assert commutant_dimension(swap_variant(a)) >= 2
    assert not is_unitarily_irreducible(swap_variant(a))


def test_irreducible_flags():
    assert is_unitarily_irreducible([[0, 1], [0, 0]])
    assert not is_unitarily_irreducible(np.diag([1, 2]))


def test_commutant_dimension_unitary_invariance(rng):
    for _ in range(20):
        a = random_matrix(rng, 4)
        if rng.random() < 0.5:
            a[:2, 2:] = 0
            a[2:, :2] = 0
        u = random_unitary(rng, 4)
        assert commutant_dimension(u.conj().T @ a @ u) == commutant_dimension(a)


def test_direct_sum_is_reducible(rng):
    for _ in range(5):
        b, c = random_matrix(rng, 2), random_matrix(rng, 3)
        s = np.zeros((5, 5), dtype=complex)
        s[:2, :2], s[2:, 2:] = b, c
        assert commutant_dimension(s) >= 2


def test_as_matrix_rejects_bad_input():
    with pytest.raises(MatrixFormatError):
        as_matrix([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(MatrixFormatError):
        as_matrix([[np.nan]])
    with pytest.raises(MatrixFormatError):
        as_matrix(np.zeros((0, 0)))


def test_parse_plain_text():
    a = parse_matrix_text("1 2i\n-3+0.5i 4-i\n")
    np.testing.assert_array_equal(a, [[1, 2j], [-3 + 0.5j, 4 - 1j]])


@pytest.mark.parametrize("text", ["1 2\n3\n", "1 x\n2 3\n", "1 2j\n3 4\n", ""])
def test_parse_plain_text_errors(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix_text(text)


def test_json_round_trip(tmp_path, rng):
    a = random_matrix(rng, 4)
    path = tmp_path / "m.json"
    path.write_text(dump_matrix_json(a))
    np.testing.assert_array_equal(load_matrix(path), a)
    doc = json.loads(path.read_text())
    assert doc["n"] == 4 and len(doc["entries"]) == 4


@pytest.mark.parametrize(
    "doc",
    [
        {"n": 2, "entries": [[[1, 0]], [[1, 0]]]},
        {"n": 1, "entries": [[[1, 0, 0]]]},
        {"entries": [[[1, 0]]]},
        {"n": 1, "entries": [[["a", 0]]]},
    ],
)
def test_json_errors(doc):
    with pytest.raises(MatrixFormatError):
        parse_matrix_text(json.dumps(doc))
