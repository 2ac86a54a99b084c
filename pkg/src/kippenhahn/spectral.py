"""Angle sweep of the Hermitian pencil ``H(theta) = cos(theta) H1 + sin(theta) H2``.

The eigenvalue branches of ``H(theta)`` encode the real points of the base
curve: an eigenvalue ``lam`` of multiplicity ``m`` at angle ``theta`` is a
point ``(cos theta : sin theta : -lam)`` of order ``m``.  This module samples
the branches, clusters coincident eigenvalues and localizes the angles at
which branches meet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matrix import HermitianPencil

__all__ = [
    "ALL_ANGLES",
    "Cluster",
    "SpectrumSlice",
    "MultiplicityEvent",
    "ScanResult",
    "EigensolverError",
    "MAX_REPEATED",
    "INTERIOR",
    "TWO_DISTINCT",
    "default_tol_cluster",
    "pencil_at",
    "spectrum_slice",
    "cluster_eigenvalues",
    "golden_section_min",
    "refine_event",
    "scan",
    "two_eigenvalue_angles",
    "angle_distance",
]

TWO_PI = 2.0 * math.pi
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

MAX_REPEATED = "max-eigenvalue-repeated"
INTERIOR = "interior-coincidence"
TWO_DISTINCT = "exactly-two-distinct"

DEFAULT_GRID = 720
DIP_FRACTION = 1e-3
EVENT_ANGLE_TOL = 1e-9


class _AllAngles:
    """Sentinel: every angle qualifies."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_ANGLES"

    def __bool__(self):
        return True


ALL_ANGLES = _AllAngles()


class EigensolverError(RuntimeError):
    def __init__(self, theta: float, message: str):
        super().__init__(f"eigensolver failed at theta={theta!r}: {message}")
        self.theta = theta


@dataclass(frozen=True)
class Cluster:
    """Indices (into the descending spectrum) of eigenvalues equal within tolerance."""

    indices: tuple[int, ...]
    value: float

    @property
    def multiplicity(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class SpectrumSlice:
    theta: float
    eigenvalues: np.ndarray  # descending
    clusters: tuple[Cluster, ...]
    basis: np.ndarray  # columns aligned with ``eigenvalues``

    def cluster_of(self, index: int) -> Cluster:
        for c in self.clusters:
            if index in c.indices:
                return c
        raise IndexError(index)

    @property
    def top(self) -> Cluster:
        return self.clusters[0]

    @property
    def bottom(self) -> Cluster:
        return self.clusters[-1]

    def eigenspace(self, cluster: Cluster) -> np.ndarray:
        return self.basis[:, list(cluster.indices)]


@dataclass(frozen=True)
class MultiplicityEvent:
    """An angle at which two or more eigenvalue branches coincide.

    ``indices`` are positions in the descending spectrum at ``theta_star``.
    """

    theta_star: float
    kind: str
    lam: float
    multiplicity: int
    indices: tuple[int, ...] = ()
    gap: float = 0.0

    @property
    def at_max(self) -> bool:
        return 0 in self.indices


@dataclass
class ScanResult:
    slices: list[SpectrumSlice]
    events: list[MultiplicityEvent]
    tol_cluster: float
    scale: float
    # Branch pairs whose gap stays below tolerance over the whole grid.
    persistent_pairs: list[int] = field(default_factory=list)

    @property
    def thetas(self) -> np.ndarray:
        return np.array([s.theta for s in self.slices])

    def eigenvalue_table(self) -> np.ndarray:
        return np.array([s.eigenvalues for s in self.slices])

    def max_events(self) -> list[MultiplicityEvent]:
        return [e for e in self.events if e.at_max]


def default_tol_cluster(p: HermitianPencil) -> float:
    scale = p.scale
    return 1e-7 * scale if scale > 0 else 1e-300


def angle_distance(a: float, b: float, period: float = TWO_PI) -> float:
    d = (a - b) % period
    return min(d, period - d)


def pencil_at(p: HermitianPencil, theta: float) -> np.ndarray:
    """``cos(theta) H1 + sin(theta) H2``, i.e. ``Re(exp(-i theta) A)``."""
    return p.at(theta)


def cluster_eigenvalues(eigenvalues: np.ndarray, tol: float) -> tuple[Cluster, ...]:
    """Group a descending spectrum by transitive chaining of gaps below ``tol``."""
    groups: list[list[int]] = [[0]]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i - 1] - eigenvalues[i] < tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return tuple(
        Cluster(tuple(g), float(np.mean(eigenvalues[g]))) for g in groups
    )


def _eigh_desc(h: np.ndarray, theta: float):
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(theta, str(exc)) from None
    return w[::-1], v[:, ::-1]


def spectrum_slice(
    p: HermitianPencil, theta: float, tol_cluster: float | None = None
) -> SpectrumSlice:
    if tol_cluster is None:
        tol_cluster = default_tol_cluster(p)
    if tol_cluster <= 0:
        raise ValueError("tol_cluster must be positive")
    w, v = _eigh_desc(p.at(theta), theta)
    return SpectrumSlice(float(theta), w, cluster_eigenvalues(w, tol_cluster), v)


def _grid_eigh(p: HermitianPencil, thetas: np.ndarray):
    stack = (
        np.cos(thetas)[:, None, None] * p.h1[None]
        + np.sin(thetas)[:, None, None] * p.h2[None]
    )
    try:
        w, v = np.linalg.eigh(stack)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(float("nan"), str(exc)) from None
    return w[:, ::-1], v[:, :, ::-1]


def golden_section_min(f, lo: float, hi: float, xtol: float = 1e-12, maxiter: int = 200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``."""
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > xtol and it < maxiter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
        it += 1
    best = min(((c, fc), (d, fd)), key=lambda t: t[1])
    return best


def _pair_gap(p: HermitianPencil, j: int):
    def g(theta):
        w = np.linalg.eigvalsh(p.at(theta))[::-1]
        return float(w[j] - w[j + 1])

    return g


def _classify(sl: SpectrumSlice, cluster: Cluster) -> str:
    if len(sl.clusters) == 2:
        return TWO_DISTINCT
    if 0 in cluster.indices:
        return MAX_REPEATED
    return INTERIOR


def refine_event(
    p: HermitianPencil,
    theta_lo: float,
    theta_hi: float,
    branch_pair: int | tuple[int, int],
    tol_cluster: float | None = None,
) -> MultiplicityEvent | None:
    """Minimize the gap between sorted branches ``j`` and ``j+1`` on a bracket.

    Returns an event when the minimal gap falls below ``tol_cluster``;
    near misses (avoided crossings) give ``None``.
    """
    if tol_cluster is None:
        tol_cluster = default_tol_cluster(p)
    j = branch_pair[0] if isinstance(branch_pair, tuple) else int(branch_pair)
    if not theta_lo < theta_hi:
        raise ValueError("theta_lo must be < theta_hi")
    theta, gmin = golden_section_min(_pair_gap(p, j), theta_lo, theta_hi, xtol=1e-12)
    if gmin >= tol_cluster:
        return None
    theta = theta % TWO_PI
    sl = spectrum_slice(p, theta, tol_cluster)
    cluster = sl.cluster_of(j)
    return MultiplicityEvent(
        theta_star=theta,
        kind=_classify(sl, cluster),
        lam=cluster.value,
        multiplicity=cluster.multiplicity,
        indices=cluster.indices,
        gap=max(gmin, 0.0),
    )


def scan(
    p: HermitianPencil,
    grid_size: int = DEFAULT_GRID,
    tol_cluster: float | None = None,
) -> ScanResult:
    """Sample ``H(theta)`` on ``theta_k = 2 pi k / grid_size`` and localize coincidences.

    Every coincidence is reported once per angle in ``[0, 2 pi)``.  A
    coincidence in the bottom cluster at ``theta`` is the same curve point as
    a top coincidence at ``theta + pi``; only the latter is kept.
    """
    if grid_size < 8:
        raise ValueError("grid_size must be >= 8")
    if tol_cluster is None:
        tol_cluster = default_tol_cluster(p)
    n = p.n
    scale = p.scale
    thetas = TWO_PI * np.arange(grid_size) / grid_size
    w, v = _grid_eigh(p, thetas)
    slices = [
        SpectrumSlice(float(t), w[k], cluster_eigenvalues(w[k], tol_cluster), v[k])
        for k, t in enumerate(thetas)
    ]
    events: list[MultiplicityEvent] = []
    persistent: list[int] = []
    if n < 2:
        return ScanResult(slices, events, tol_cluster, scale, persistent)

    dip = DIP_FRACTION * scale
    step = TWO_PI / grid_size
    gaps = w[:, :-1] - w[:, 1:]
    for j in range(n - 1):
        g = gaps[:, j]
        if np.all(g < tol_cluster):
            persistent.append(j)
            continue
        prev = np.roll(g, 1)
        nxt = np.roll(g, -1)
        # a true crossing is V-shaped: the grid minimum is at most the rise
        # to a neighbour, whatever the slope
        rise = np.maximum(prev - g, nxt - g)
        candidates = np.nonzero((g <= prev) & (g < nxt) & ((g < dip) | (g <= 2 * rise)))[0]
        for k in candidates:
            t0 = thetas[k]
            ev = refine_event(p, t0 - step, t0 + step, j, tol_cluster)
            if ev is None:
                continue
            bottom_only = (n - 1) in ev.indices and 0 not in ev.indices
            if bottom_only:
                continue
            events.append(ev)

    events = _dedupe(events, tol_cluster)
    events.sort(key=lambda e: (e.theta_star, -e.lam))
    return ScanResult(slices, events, tol_cluster, scale, persistent)


def _dedupe(events: list[MultiplicityEvent], tol: float) -> list[MultiplicityEvent]:
    out: list[MultiplicityEvent] = []
    for ev in events:
        for i, kept in enumerate(out):
            if (
                angle_distance(ev.theta_star, kept.theta_star) <= EVENT_ANGLE_TOL
                and abs(ev.lam - kept.lam) <= max(tol, 1e-12)
            ) or (
                angle_distance(ev.theta_star, kept.theta_star) <= 1e-6
                and set(ev.indices) & set(kept.indices)
            ):
                if ev.multiplicity > kept.multiplicity or (
                    ev.multiplicity == kept.multiplicity and ev.gap < kept.gap
                ):
                    out[i] = ev
                break
        else:
            out.append(ev)
    return out


def two_eigenvalue_angles(
    p: HermitianPencil,
    tol: float | None = None,
    grid_size: int = DEFAULT_GRID,
    scan_result: ScanResult | None = None,
):
    """Angles in ``[0, pi)`` where ``H(theta)`` has exactly two distinct eigenvalues.

    Returns ``ALL_ANGLES`` when the clustered spectrum never has more than two
    values (always the case for ``n = 2``).
    """
    if tol is None:
        tol = default_tol_cluster(p)
    n = p.n
    if n < 2:
        return []
    res = scan_result if scan_result is not None else scan(p, grid_size, tol)
    if all(len(s.clusters) <= 2 for s in res.slices):
        return ALL_ANGLES
    angles: list[float] = []
    for ev in res.events:
        sl = spectrum_slice(p, ev.theta_star, tol)
        if len(sl.clusters) != 2:
            continue
        t = ev.theta_star % math.pi
        if all(angle_distance(t, a, math.pi) > 1e-8 for a in angles):
            angles.append(t)
    return sorted(angles)
