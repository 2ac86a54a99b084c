"""Bounds and exact values of the Gau--Wu number ``k(A)``.

``k(A)`` is the largest size of an orthonormal set whose images
``<A x, x>`` all lie on the boundary of the numerical range.  Upper bounds
come from the singularity rules for irreducible matrices; lower bounds come
from seeds and from a certified search for orthonormal boundary witnesses.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from scipy.optimize import least_squares

from .basepoly import BasePolynomial, compute_base_polynomial
from .config import RunConfig
from .geometry import (
    RealCurvePoint,
    SeedRecord,
    as_pencil,
    boundary_distance,
    collinear_groups,
    detect_seeds,
    min_width,
    real_singularities,
)
from .matrix import HermitianPencil, as_matrix, commutant_dimension
from .spectral import (
    ALL_ANGLES,
    TWO_PI,
    ScanResult,
    angle_distance,
    scan,
    spectrum_slice,
    two_eigenvalue_angles,
)

__all__ = [
    "GauWuError",
    "Rule",
    "Witness",
    "GauWuResult",
    "Analysis",
    "analyze",
    "theorem_bounds",
    "witness_lower_bound",
    "check_witnesses",
    "classify",
    "toeplitz_k",
]

log = logging.getLogger(__name__)

RULE_TEXT = {
    "R1": "a seed (flat portion or singular boundary point) forces k >= 3",
    "R2": "irreducible and H(theta) has exactly two distinct eigenvalues at some theta: k = n",
    "R3": "n = 4, irreducible: k = 4 iff an order-3 real point or two collinear real singularities",
    "R4": "n = 4, irreducible: seed singularities all of order 2, none collinear: k = 3",
    "R5": "universal bounds 2 <= k <= n",
    "W": "certified orthonormal boundary witnesses",
    "T": "tridiagonal Toeplitz family with |b| != |c|: k = ceil(n/2)",
    "D": "dominant 2x2 block of a block decomposition: k = 2",
}


class GauWuError(RuntimeError):
    """Lower and upper bounds crossed; signals a tolerance misconfiguration."""


@dataclass(frozen=True)
class Rule:
    id: str
    status: str  # "applied" | "skipped" | "not-applicable"
    effect: str = ""
    note: str = ""

    @property
    def statement(self) -> str:
        return RULE_TEXT[self.id]


@dataclass(frozen=True)
class Witness:
    vector: np.ndarray
    image: complex
    theta: float


@dataclass
class GauWuResult:
    lower: int
    upper: int
    witnesses: list[Witness] = field(default_factory=list)
    rules: list[Rule] = field(default_factory=list)
    applicability: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None


@dataclass
class Analysis:
    """Everything the rules look at, computed once per matrix."""

    matrix: np.ndarray
    pencil: HermitianPencil
    config: RunConfig
    scan: ScanResult
    poly: BasePolynomial
    seeds: list[SeedRecord]
    singularities: list[RealCurvePoint]
    groups: dict
    two_value_angles: object
    commutant_dim: int
    degenerate: bool
    normal_like: bool

    @property
    def n(self) -> int:
        return self.pencil.n

    @property
    def irreducible(self) -> bool:
        return self.commutant_dim == 1


def analyze(a, config: RunConfig | None = None) -> Analysis:
    cfg = config or RunConfig()
    a = as_matrix(a)
    if a.shape[0] < 2:
        raise ValueError("Gau-Wu number needs n >= 2")
    p = as_pencil(a)
    res = scan(p, cfg.grid_size, cfg.tol_cluster)
    poly = compute_base_polynomial(p)
    seeds = detect_seeds(p, tol=cfg.tol_boundary, scan_result=res)
    sings = real_singularities(p, scan_result=res, poly=poly, tol_order=cfg.tol_order)
    scale = p.scale
    comm = a @ a.conj().T - a.conj().T @ a
    normal_like = scale == 0 or np.linalg.norm(comm, 2) <= 1e-10 * scale**2
    degenerate = scale <= 1e-10 or min_width(p, cfg.grid_size) <= 1e-10 * scale
    return Analysis(
        matrix=a,
        pencil=p,
        config=cfg,
        scan=res,
        poly=poly,
        seeds=seeds,
        singularities=sings,
        groups=collinear_groups(sings),
        two_value_angles=two_eigenvalue_angles(p, res.tol_cluster, scan_result=res),
        commutant_dim=commutant_dimension(p),
        degenerate=degenerate,
        normal_like=normal_like,
    )


def _seed_singularities(an: Analysis) -> list[RealCurvePoint]:
    out = []
    for s in an.seeds:
        theta, lam = s.theta, s.lam
        if theta >= math.pi:
            theta, lam = theta - math.pi, -lam
        for q in an.singularities:
            if angle_distance(theta, q.theta, math.pi) <= 1e-8 and abs(q.lam - lam) <= 1e-6 * max(an.pencil.scale, 1.0):
                out.append(q)
                break
    return out


def theorem_bounds(a, config: RunConfig | None = None, analysis: Analysis | None = None) -> GauWuResult:
    """Bounds on ``k(A)`` from the seed and singularity rules (no witnesses)."""
    an = analysis or analyze(a, config)
    n = an.n
    lower, upper = 2, n
    rules: list[Rule] = []
    warnings: list[str] = []
    applicability = {"unitarily_irreducible": an.irreducible, "n": n}

    if an.degenerate or an.normal_like:
        warnings.append(
            "numerical range is degenerate or the matrix is normal; "
            "singularity rules abstain"
        )

    # R1
    # n = 2 normal matrices have flat W but k = 2
    if an.seeds and n >= 3:
        lower = max(lower, 3)
        rules.append(Rule("R1", "applied", "lower >= 3", f"{len(an.seeds)} seed(s)"))
    else:
        rules.append(Rule("R1", "not-applicable", note="no seeds" if not an.seeds else "n < 3"))

    theorem_ok = an.irreducible and not (an.degenerate or an.normal_like)
    skip_note = "matrix is unitarily reducible" if not an.irreducible else "degenerate/normal matrix"

    # R2
    if not theorem_ok:
        rules.append(Rule("R2", "skipped", note=skip_note))
    elif an.two_value_angles is ALL_ANGLES or an.two_value_angles:
        lower = upper = n
        angles = "all angles" if an.two_value_angles is ALL_ANGLES else ", ".join(
            f"{t:.12g}" for t in an.two_value_angles
        )
        rules.append(Rule("R2", "applied", f"exact = {n}", f"theta = {angles}"))
    else:
        rules.append(Rule("R2", "not-applicable", note="no angle with two distinct eigenvalues"))

    # R3 / R4
    if n != 4:
        rules.append(Rule("R3", "not-applicable", note="n != 4"))
        rules.append(Rule("R4", "not-applicable", note="n != 4"))
    elif not theorem_ok:
        rules.append(Rule("R3", "skipped", note=skip_note))
        rules.append(Rule("R4", "skipped", note=skip_note))
    else:
        order3 = any(q.order >= 3 for q in an.singularities)
        collinear_pair = any(len(g) >= 2 for g in an.groups.values())
        if order3 or collinear_pair:
            lower = upper = 4
            why = "order-3 real point" if order3 else "two collinear real singularities"
            rules.append(Rule("R3", "applied", "exact = 4", why))
            rules.append(Rule("R4", "not-applicable", note="R3 gives k = 4"))
        else:
            upper = min(upper, 3)
            rules.append(Rule("R3", "applied", "upper <= 3", "no order-3 point, no collinear pair"))
            seed_sings = _seed_singularities(an)
            seed_groups = collinear_groups(seed_sings)
            if (
                an.seeds
                and seed_sings
                and all(q.order == 2 for q in seed_sings)
                and all(len(g) == 1 for g in seed_groups.values())
            ):
                lower = max(lower, 3)
                upper = min(upper, 3)
                rules.append(Rule("R4", "applied", "exact = 3", f"{len(seed_sings)} seed singularity(ies)"))
            else:
                rules.append(Rule("R4", "not-applicable", note="no seed singularities"))

    rules.append(Rule("R5", "applied", f"2 <= k <= {n}"))

    return GauWuResult(lower, upper, [], rules, applicability, warnings)


# ---------------------------------------------------------------------------
# Witness search
# ---------------------------------------------------------------------------


@dataclass
class _Slot:
    theta: float
    basis: np.ndarray  # n x m, orthonormal top eigenspace of H(theta)
    fixed: bool
    spread: float = 0.0  # local eigenvector motion, sets the compatibility radius

    @property
    def weight(self) -> int:
        return self.basis.shape[1]


def _top_space(p: HermitianPencil, theta: float, tol: float) -> np.ndarray:
    sl = spectrum_slice(p, theta, tol)
    return sl.eigenspace(sl.top)


def _farthest_angles(thetas: np.ndarray, count: int) -> list[int]:
    if count >= len(thetas):
        return list(range(len(thetas)))
    chosen = [0]
    dist = np.array([angle_distance(t, thetas[0]) for t in thetas])
    while len(chosen) < count:
        k = int(np.argmax(dist))
        chosen.append(k)
        d = np.abs((thetas - thetas[k] + math.pi) % TWO_PI - math.pi)
        dist = np.minimum(dist, d)
    return sorted(chosen)


def _build_pool(an: Analysis, budget: int) -> list[_Slot]:
    p = an.pencil
    tol = an.scan.tol_cluster
    res = an.scan
    grid_idx = _farthest_angles(res.thetas, budget)
    slots: list[_Slot] = []
    for k in grid_idx:
        sl = res.slices[k]
        basis = sl.eigenspace(sl.top)
        slots.append(_Slot(sl.theta, basis, fixed=basis.shape[1] > 1))
    # local motion of the simple top eigenvectors between pool neighbours
    simple = [i for i, s in enumerate(slots) if not s.fixed]
    for pos, i in enumerate(simple):
        nb = [simple[pos - 1], simple[(pos + 1) % len(simple)]] if len(simple) > 1 else []
        moves = []
        for j in nb:
            ov = abs(np.vdot(slots[i].basis[:, 0], slots[j].basis[:, 0]))
            moves.append(math.sqrt(max(0.0, 1.0 - ov * ov)))
        slots[i].spread = max(moves) if moves else 0.0
    extra = []
    for ev in res.events:
        for theta in (ev.theta_star, (ev.theta_star + math.pi) % TWO_PI):
            if ev.at_max or theta != ev.theta_star:
                extra.append(theta)
    for theta in extra:
        if any(s.fixed and angle_distance(s.theta, theta) <= 1e-9 for s in slots):
            continue
        slots.append(_Slot(float(theta), _top_space(p, theta, tol), fixed=True))
    return slots


def _overlap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a.conj().T @ b, 2))


def _compat_graph(slots: list[_Slot]) -> nx.Graph:
    g = nx.Graph()
    for i, s in enumerate(slots):
        g.add_node(i, weight=s.weight)
    cols = np.column_stack([s.basis for s in slots])
    owner = np.repeat(np.arange(len(slots)), [s.weight for s in slots])
    gram = np.abs(cols.conj().T @ cols)
    # slot-level overlap: entrywise max for simple pairs, spectral norm for subspaces
    ov = np.zeros((len(slots), len(slots)))
    np.maximum.at(ov, (owner[:, None], owner[None, :]), gram)
    multi = [i for i, s in enumerate(slots) if s.weight > 1]
    for i in multi:
        for j in range(len(slots)):
            if j != i:
                ov[i, j] = ov[j, i] = _overlap(slots[i].basis, slots[j].basis)
    spread = np.array([s.spread for s in slots])
    radius = np.minimum(1.1 * (spread[:, None] + spread[None, :]) / 2 + 1e-6, 0.35)
    ii, jj = np.nonzero(np.triu(ov <= radius, k=1))
    g.add_edges_from(zip(ii.tolist(), jj.tolist()))
    return g


def _cliques_of_weight(g: nx.Graph, target: int, cap: int):
    """Cliques whose node weights sum to exactly ``target`` (DFS, at most ``cap``)."""
    weight = nx.get_node_attributes(g, "weight")
    order = sorted(g.nodes)
    adj = {v: set(g.neighbors(v)) for v in order}
    found = 0

    def extend(clique, total, candidates):
        nonlocal found
        if total == target:
            found += 1
            yield list(clique)
            return
        for v in sorted(candidates):
            if found >= cap:
                return
            w = weight[v]
            if total + w > target:
                continue
            clique.append(v)
            yield from extend(clique, total + w, {u for u in candidates if u > v} & adj[v])
            clique.pop()

    yield from extend([], 0, set(order))


def _phase_fixed_top(p: HermitianPencil, theta: float, ref: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(p.at(theta))
    x = v[:, -1]
    ph = np.vdot(x, ref)
    if abs(ph) > 0:
        x = x * (ph / abs(ph))
    return x


def _assemble(p, slots, thetas, refs):
    vecs = []
    owners = []
    free = 0
    for si, s in enumerate(slots):
        if s.fixed:
            for c in range(s.weight):
                vecs.append(s.basis[:, c])
                owners.append(si)
        else:
            vecs.append(_phase_fixed_top(p, thetas[free], refs[free]))
            owners.append(si)
            free += 1
    return np.array(vecs).T, owners


def _gram_residual(v: np.ndarray, owners: list[int]) -> np.ndarray:
    g = v.conj().T @ v
    out = []
    for i, j in itertools.combinations(range(v.shape[1]), 2):
        if owners[i] == owners[j]:
            continue
        out.append(g[i, j].real)
        out.append(g[i, j].imag)
    return np.array(out)


def _refine(p: HermitianPencil, slots: list[_Slot]):
    free = [s for s in slots if not s.fixed]
    refs = [s.basis[:, 0] for s in free]
    x0 = np.array([s.theta for s in free])

    def fun(x):
        v, owners = _assemble(p, slots, x, refs)
        return _gram_residual(v, owners)

    if len(free) == 0:
        v, owners = _assemble(p, slots, x0, refs)
        return v, x0
    r0 = fun(x0)
    if r0.size == 0:
        v, _ = _assemble(p, slots, x0, refs)
        return v, x0
    method = "lm" if r0.size >= len(free) else "trf"
    sol = least_squares(fun, x0, method=method, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
    v, _ = _assemble(p, slots, sol.x, refs)
    return v, sol.x


def _lowdin(v: np.ndarray) -> np.ndarray:
    g = v.conj().T @ v
    w, u = np.linalg.eigh(g)
    return v @ (u @ np.diag(w**-0.5) @ u.conj().T)


def check_witnesses(a, vectors, tol_orth: float = 1e-8, tol_boundary: float = 1e-6, grid_size: int = 720) -> bool:
    """Independent re-check: orthonormal within ``tol_orth``, images on ``dW(A)``."""
    a = as_matrix(a)
    v = np.array(vectors, dtype=complex).T if not isinstance(vectors, np.ndarray) else vectors
    if v.ndim == 1:
        v = v[:, None]
    scale = max(as_pencil(a).scale, 1e-300)
    if np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))) > tol_orth:
        return False
    for c in range(v.shape[1]):
        x = v[:, c]
        z = np.vdot(x, a @ x)
        if abs(boundary_distance(a, z, grid_size)) > tol_boundary * scale:
            return False
    return True


def _certify(an: Analysis, v: np.ndarray, thetas: list[float]) -> list[Witness] | None:
    cfg = an.config
    g = v.conj().T @ v
    off = g - np.diag(np.diag(g))
    if np.max(np.abs(off)) > cfg.tol_orth:
        return None
    v = _lowdin(v)
    if not check_witnesses(an.matrix, v, cfg.tol_orth, cfg.tol_boundary, cfg.grid_size):
        return None
    return [
        Witness(v[:, c].copy(), complex(np.vdot(v[:, c], an.matrix @ v[:, c])), float(thetas[c]))
        for c in range(v.shape[1])
    ]


def _floor(an: Analysis) -> list[Witness]:
    p = an.pencil
    w, vv = np.linalg.eigh(p.at(0.0))
    v = np.column_stack([vv[:, -1], vv[:, 0]])
    return [
        Witness(v[:, 0].copy(), complex(np.vdot(v[:, 0], an.matrix @ v[:, 0])), 0.0),
        Witness(v[:, 1].copy(), complex(np.vdot(v[:, 1], an.matrix @ v[:, 1])), math.pi),
    ]


def witness_lower_bound(
    a,
    grid_size: int | None = None,
    budget: int | None = None,
    config: RunConfig | None = None,
    analysis: Analysis | None = None,
    max_cliques: int = 20000,
    max_refine: int = 40,
) -> tuple[int, list[Witness]]:
    """Largest certified orthonormal set with images on the boundary.

    Candidates are top eigenspaces of ``H(theta)`` on the angle grid plus the
    exact eigenspaces at coincidence angles.  Near-orthogonal groups are found
    by exact clique search, their angles polished by least squares, then
    re-orthonormalized and certified against the boundary.  Falls back to the
    top/bottom eigenvector pair of ``H(0)``.
    """
    cfg = config or RunConfig()
    if grid_size is not None or budget is not None:
        cfg = RunConfig(
            grid_size=grid_size or cfg.grid_size,
            tol_cluster=cfg.tol_cluster,
            tol_orth=cfg.tol_orth,
            tol_order=cfg.tol_order,
            tol_coeff=cfg.tol_coeff,
            tol_boundary=cfg.tol_boundary,
            budget=budget or cfg.budget,
            output_dir=cfg.output_dir,
            seed=cfg.seed,
        )
    an = analysis if analysis is not None else analyze(a, cfg)
    n = an.n
    slots = _build_pool(an, cfg.budget)
    graph = _compat_graph(slots)
    if graph.number_of_edges() == 0 and max(s.weight for s in slots) < 3:
        return 2, _floor(an)
    _, omega = nx.max_weight_clique(graph, weight="weight")
    for target in range(min(n, omega), 2, -1):
        cands = []
        for clique in _cliques_of_weight(graph, target, max_cliques):
            chosen = [slots[i] for i in clique]
            vs = np.column_stack([s.basis for s in chosen])
            g = np.abs(vs.conj().T @ vs - np.eye(vs.shape[1]))
            cands.append((float(np.max(g)) if g.size else 0.0, clique))
        cands.sort(key=lambda t: t[0])
        for _, clique in cands[:max_refine]:
            chosen = [slots[i] for i in clique]
            v, free_thetas = _refine(an.pencil, chosen)
            thetas = []
            it = iter(free_thetas)
            for s in chosen:
                if s.fixed:
                    thetas.extend([s.theta] * s.weight)
                else:
                    thetas.append(float(next(it)) % TWO_PI)
            wit = _certify(an, v, thetas)
            if wit is not None:
                return len(wit), wit
    return 2, _floor(an)


def classify(a, config: RunConfig | None = None, analysis: Analysis | None = None) -> GauWuResult:
    """Combine the rule bounds with the certified witness count."""
    an = analysis or analyze(a, config)
    res = theorem_bounds(an.matrix, analysis=an)
    count, witnesses = witness_lower_bound(an.matrix, analysis=an, config=an.config)
    rules = list(res.rules)
    if count > res.lower:
        rules.append(Rule("W", "applied", f"lower >= {count}", f"{count} certified witnesses"))
    else:
        rules.append(Rule("W", "applied", f"{count} certified witnesses"))
    lower = max(res.lower, count)
    if lower > res.upper:
        raise GauWuError(
            f"witness/theorem lower bound {lower} exceeds upper bound {res.upper}"
        )
    warnings = list(res.warnings)
    if count < lower:
        warnings.append(f"witness search certified only {count} of the {lower} guaranteed vectors")
    return GauWuResult(lower, res.upper, witnesses, rules, res.applicability, warnings)


def toeplitz_k(n: int, b: complex, c: complex) -> int:
    """``k(T_n(a, b, c)) = ceil(n/2)`` for ``|b| != |c|`` and ``n >= 3``."""
    if n < 3:
        raise ValueError("toeplitz_k needs n >= 3")
    ab, ac = abs(b), abs(c)
    if abs(ab - ac) <= 1e-10 * max(ab, ac, 1e-300):
        raise ValueError("toeplitz_k needs |b| != |c|")
    return math.ceil(n / 2)
