"""Matrix ingestion, Hermitian decomposition and the irreducibility test."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

__all__ = [
    "MatrixFormatError",
    "HermitianPencil",
    "as_matrix",
    "hermitian_parts",
    "commutant_dimension",
    "is_unitarily_irreducible",
    "load_matrix",
    "parse_matrix_text",
    "dump_matrix_json",
]


class MatrixFormatError(ValueError):
    """Raised when a matrix cannot be parsed or is not square/finite."""


def as_matrix(a) -> np.ndarray:
    """Validate ``a`` and return it as a square complex128 array."""
    try:
        arr = np.array(a, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(f"not a numeric matrix: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise MatrixFormatError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MatrixFormatError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class HermitianPencil:
    """The pair ``(h1, h2)`` with ``H(theta) = cos(theta) h1 + sin(theta) h2``."""

    h1: np.ndarray
    h2: np.ndarray

    @property
    def n(self) -> int:
        return self.h1.shape[0]

    @cached_property
    def scale(self) -> float:
        """``||h1|| + ||h2||`` in the spectral norm; reference size for tolerances."""
        return float(np.linalg.norm(self.h1, 2) + np.linalg.norm(self.h2, 2))

    def at(self, theta: float) -> np.ndarray:
        return np.cos(theta) * self.h1 + np.sin(theta) * self.h2

    def derivative_at(self, theta: float) -> np.ndarray:
        """d/dtheta of ``H(theta)``; equals the imaginary part of ``exp(-i theta) A``."""
        return -np.sin(theta) * self.h1 + np.cos(theta) * self.h2

    def matrix(self) -> np.ndarray:
        return self.h1 + 1j * self.h2


def hermitian_parts(a) -> HermitianPencil:
    """Split ``a`` into ``Re A = (A + A*)/2`` and ``Im A = (A - A*)/(2i)``."""
    a = as_matrix(a)
    ah = a.conj().T
    h1 = (a + ah) / 2
    h2 = (a - ah) / 2j
    # Symmetrize exactly so downstream eigensolvers see bitwise Hermitian input.
    h1 = (h1 + h1.conj().T) / 2
    h2 = (h2 + h2.conj().T) / 2
    h1.setflags(write=False)
    h2.setflags(write=False)
    return HermitianPencil(h1, h2)


def _commutator_operator(h: np.ndarray) -> np.ndarray:
    # vec(XH - HX) = (H^T kron I - I kron H) vec(X), column-major vec.
    n = h.shape[0]
    eye = np.eye(n)
    return np.kron(h.T, eye) - np.kron(eye, h)


def commutant_dimension(a, rtol: float = 1e-8) -> int:
    """Dimension of ``{X : X H1 = H1 X, X H2 = H2 X}``.

    Computed as the numerical nullity of the stacked commutator operator on
    the ``n**2`` entries of ``X``. Singular values below
    ``rtol * (||H1|| + ||H2||)`` count as zero.
    """
    p = a if isinstance(a, HermitianPencil) else hermitian_parts(a)
    n = p.n
    if n == 1:
        return 1
    op = np.vstack([_commutator_operator(p.h1), _commutator_operator(p.h2)])
    sv = np.linalg.svd(op, compute_uv=False)
    eps = rtol * p.scale
    if eps == 0.0:
        # A = 0 commutes with everything.
        return n * n
    return int(np.count_nonzero(sv <= eps))


def is_unitarily_irreducible(a, rtol: float = 1e-8) -> bool:
    return commutant_dimension(a, rtol) == 1


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def _parse_token(tok: str) -> complex:
    if "j" in tok or not re.fullmatch(r"[0-9eE.+\-i]+", tok):
        raise MatrixFormatError(f"cannot parse entry {tok!r}")
    try:
        return complex(tok.replace("i", "j"))
    except ValueError:
        raise MatrixFormatError(f"cannot parse entry {tok!r}") from None


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse either the JSON matrix document or the plain ``a+bi`` grid."""
    stripped = text.strip()
    if not stripped:
        raise MatrixFormatError("empty matrix document")
    if stripped[0] == "{":
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
        return _from_json_doc(doc)
    rows = [line.split() for line in stripped.splitlines() if line.strip()]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MatrixFormatError("plain-text matrix must have n rows of n tokens")
    return as_matrix([[_parse_token(t) for t in r] for r in rows])


def _from_json_doc(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise MatrixFormatError('JSON matrix needs fields "n" and "entries"')
    n = doc["n"]
    entries = doc["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError('"n" must be a positive integer')
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixFormatError(f'"entries" must have {n} rows')
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row {i} must have {n} entries")
        for j, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
            ):
                raise MatrixFormatError(f"entry ({i},{j}) must be [re, im]")
            out[i, j] = complex(pair[0], pair[1])
    return as_matrix(out)


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from None
    return parse_matrix_text(text)


def dump_matrix_json(a) -> str:
    a = as_matrix(a)
    doc = {
        "n": a.shape[0],
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }
    return json.dumps(doc)
