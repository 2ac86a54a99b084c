"""Numerical range boundary, boundary generating curve, seeds and real singularities."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .basepoly import BasePolynomial, compute_base_polynomial, order_at_point
from .matrix import HermitianPencil, hermitian_parts
from .spectral import (
    TWO_PI,
    ScanResult,
    angle_distance,
    default_tol_cluster,
    golden_section_min,
    scan,
    spectrum_slice,
)

__all__ = [
    "GeometryError",
    "RealCurvePoint",
    "SeedRecord",
    "BoundarySample",
    "CurvePoint",
    "FLAT_PORTION",
    "SINGULAR_POINT",
    "as_pencil",
    "support_value",
    "boundary_points",
    "curve_points",
    "boundary_distance",
    "detect_seeds",
    "real_singularities",
    "collinear_groups",
    "min_width",
]

FLAT_PORTION = "flat-portion"
SINGULAR_POINT = "singular-point"
SEED_TOL = 1e-6


class GeometryError(RuntimeError):
    """Spectral and polynomial views of the curve disagree."""


@dataclass(frozen=True)
class RealCurvePoint:
    theta: float  # in [0, pi)
    lam: float
    order: int
    point: tuple  # (cos theta, sin theta, -lam)


@dataclass(frozen=True)
class SeedRecord:
    theta: float
    kind: str
    endpoints: tuple
    multiplicity: int
    lam: float = 0.0


@dataclass(frozen=True)
class BoundarySample:
    theta: float
    z: complex
    support: float


@dataclass(frozen=True)
class CurvePoint:
    theta: float
    branch: int
    z: complex
    support: float
    order: int


def as_pencil(a) -> HermitianPencil:
    return a if isinstance(a, HermitianPencil) else hermitian_parts(a)


def support_value(a, theta: float) -> float:
    """Largest eigenvalue of ``H(theta)``: the support function of ``W(A)``."""
    p = as_pencil(a)
    return float(np.linalg.eigvalsh(p.at(theta))[-1])


def _compressed_derivative(p: HermitianPencil, theta: float, basis: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of ``P* H'(theta) P`` for an orthonormal ``P``."""
    d = basis.conj().T @ p.derivative_at(theta) @ basis
    d = (d + d.conj().T) / 2
    return np.linalg.eigvalsh(d)


def _grid(grid_size: int, period: float = TWO_PI) -> np.ndarray:
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    return period * np.arange(grid_size) / grid_size


def boundary_points(a, grid_size: int = 720, tol_cluster: float | None = None) -> list[BoundarySample]:
    """Samples of ``dW(A)`` from the support-line envelope.

    ``z(theta) = exp(i theta) (lam_max + i lam_max')`` where the derivative is
    the compression of ``H'(theta)`` onto the top eigenspace.  A repeated top
    eigenvalue with a nonzero derivative spread gives both ends of the flat
    portion.
    """
    p = as_pencil(a)
    tol = default_tol_cluster(p) if tol_cluster is None else tol_cluster
    out = []
    for theta in _grid(grid_size):
        sl = spectrum_slice(p, float(theta), tol)
        top = sl.top
        mus = _compressed_derivative(p, sl.theta, sl.eigenspace(top))
        rot = cmath.exp(1j * sl.theta)
        lam = float(sl.eigenvalues[0])
        if top.multiplicity == 1 or mus[-1] - mus[0] <= tol:
            vals = [float(np.mean(mus))]
        else:
            # counterclockwise order along the boundary
            vals = [float(mus[0]), float(mus[-1])]
        for mu in vals:
            out.append(BoundarySample(sl.theta, rot * complex(lam, mu), lam))
    return out


def curve_points(a, grid_size: int = 720, tol_cluster: float | None = None) -> list[CurvePoint]:
    """Real affine points of the boundary generating curve, every branch.

    Sweeps ``theta`` over ``[0, pi)``; branch ``j`` at ``theta`` emits
    ``exp(i theta) (lam_j + i mu)`` with ``mu`` from the compression of
    ``H'(theta)`` onto the eigenspace of ``lam_j``.
    """
    p = as_pencil(a)
    tol = default_tol_cluster(p) if tol_cluster is None else tol_cluster
    out = []
    for theta in _grid(grid_size, math.pi):
        sl = spectrum_slice(p, float(theta), tol)
        rot = cmath.exp(1j * sl.theta)
        for cl in sl.clusters:
            mus = _compressed_derivative(p, sl.theta, sl.eigenspace(cl))[::-1]
            for idx, mu in zip(cl.indices, mus):
                out.append(
                    CurvePoint(
                        sl.theta,
                        idx,
                        rot * complex(sl.eigenvalues[idx], mu),
                        float(sl.eigenvalues[idx]),
                        cl.multiplicity,
                    )
                )
    return out


def boundary_distance(a, z: complex, grid_size: int = 720) -> float:
    """Signed distance proxy ``max_theta Re(exp(-i theta) z) - lam_max(theta)``.

    Nonpositive means ``z`` lies in ``W(A)``; near zero means on ``dW(A)``.
    The grid maximum is polished by golden-section search around the best
    grid angles.
    """
    p = as_pencil(a)
    z = complex(z)
    thetas = _grid(grid_size)
    stack = np.cos(thetas)[:, None, None] * p.h1 + np.sin(thetas)[:, None, None] * p.h2
    lam = np.linalg.eigvalsh(stack)[:, -1]
    h = z.real * np.cos(thetas) + z.imag * np.sin(thetas) - lam

    def neg_h(theta):
        return -(z.real * math.cos(theta) + z.imag * math.sin(theta) - support_value(p, theta))

    step = TWO_PI / grid_size
    best = float(np.max(h))
    for k in np.argsort(h)[-3:]:
        t0 = thetas[k]
        _, val = golden_section_min(neg_h, t0 - step, t0 + step, xtol=1e-11)
        best = max(best, -val)
    return best


def _scan(p, scan_result, grid_size, tol_cluster):
    if scan_result is not None:
        return scan_result
    return scan(p, grid_size, tol_cluster)


def detect_seeds(
    a,
    tol: float = SEED_TOL,
    grid_size: int = 720,
    tol_cluster: float | None = None,
    scan_result: ScanResult | None = None,
) -> list[SeedRecord]:
    """Flat portions and singular boundary points of ``W(A)``.

    Every angle with a repeated top eigenvalue gives one seed.  The endpoints
    on the support line come from the extreme eigenvalues of ``H'(theta)``
    compressed onto the top eigenspace.
    """
    p = as_pencil(a)
    res = _scan(p, scan_result, grid_size, tol_cluster)
    seeds = []
    for ev in res.events:
        if not ev.at_max:
            continue
        sl = spectrum_slice(p, ev.theta_star, res.tol_cluster)
        basis = sl.eigenspace(sl.top)
        mus = _compressed_derivative(p, ev.theta_star, basis)
        rot = cmath.exp(1j * ev.theta_star)
        lam = float(sl.top.value)
        lo = rot * complex(lam, float(mus[0]))
        hi = rot * complex(lam, float(mus[-1]))
        if mus[-1] - mus[0] > tol * res.scale:
            seeds.append(SeedRecord(ev.theta_star, FLAT_PORTION, (lo, hi), sl.top.multiplicity, lam))
        else:
            seeds.append(SeedRecord(ev.theta_star, SINGULAR_POINT, ((lo + hi) / 2,), sl.top.multiplicity, lam))
    return seeds


def real_singularities(
    a,
    grid_size: int = 720,
    tol_cluster: float | None = None,
    tol_order: float = 1e-6,
    scan_result: ScanResult | None = None,
    poly: BasePolynomial | None = None,
) -> list[RealCurvePoint]:
    """Real singular points of the base curve, ``theta`` folded into ``[0, pi)``.

    Each is cross-checked against the order of vanishing of ``F_A``; a
    mismatch raises :class:`GeometryError`.
    """
    p = as_pencil(a)
    res = _scan(p, scan_result, grid_size, tol_cluster)
    f = poly if poly is not None else compute_base_polynomial(p)
    lam_tol = max(10 * res.tol_cluster, 1e-12)
    found: list[RealCurvePoint] = []
    for ev in res.events:
        theta, lam = ev.theta_star, ev.lam
        if theta >= math.pi:
            theta, lam = theta - math.pi, -lam
        if theta > math.pi - 1e-9:
            theta, lam = theta - math.pi, -lam
        theta = max(theta, 0.0)
        if any(
            angle_distance(theta, q.theta, math.pi) <= 1e-8
            and abs((lam if abs(theta - q.theta) < 1 else -lam) - q.lam) <= lam_tol
            for q in found
        ):
            continue
        point = (math.cos(theta), math.sin(theta), -lam)
        order = order_at_point(f, point, tol_order)
        if order != ev.multiplicity:
            raise GeometryError(
                f"at theta={theta:.12g}, lambda={lam:.12g}: spectral multiplicity "
                f"{ev.multiplicity} but polynomial order {order}"
            )
        found.append(RealCurvePoint(theta, lam, ev.multiplicity, point))
    found.sort(key=lambda q: (q.theta, -q.lam))
    return found


def collinear_groups(points, tol: float = 1e-8) -> dict:
    """Group curve points lying on a common line through ``(0:0:1)``.

    Keys are representative angles in ``[0, pi)``.
    """
    groups: dict[float, list[RealCurvePoint]] = {}
    for q in points:
        for key in groups:
            if angle_distance(q.theta, key, math.pi) <= tol:
                groups[key].append(q)
                break
        else:
            groups[q.theta] = [q]
    return groups


def min_width(a, grid_size: int = 720) -> float:
    """Minimal width ``lam_max(theta) - lam_min(theta)`` of ``W(A)`` over directions."""
    p = as_pencil(a)
    thetas = _grid(grid_size, math.pi)
    stack = np.cos(thetas)[:, None, None] * p.h1 + np.sin(thetas)[:, None, None] * p.h2
    w = np.linalg.eigvalsh(stack)
    widths = w[:, -1] - w[:, 0]

    def width(theta):
        v = np.linalg.eigvalsh(p.at(theta))
        return float(v[-1] - v[0])

    k = int(np.argmin(widths))
    step = math.pi / grid_size
    _, val = golden_section_min(width, thetas[k] - step, thetas[k] + step, xtol=1e-12)
    return max(0.0, min(val, float(widths[k])))
