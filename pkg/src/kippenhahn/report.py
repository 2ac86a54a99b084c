"""Plain-text reports, curve tables and SVG figures."""

from __future__ import annotations

import math

import numpy as np

from .basepoly import BasePolynomial
from .gauwu import Analysis, GauWuResult
from .geometry import BoundarySample, CurvePoint
from .toeplitz import ToeplitzReport

__all__ = [
    "fmt_real",
    "fmt_complex",
    "format_gauwu_report",
    "format_toeplitz_report",
    "format_curve_table",
    "render_svg",
]

DIGITS = 12


def fmt_real(x: float, digits: int = DIGITS) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return f"{x:.{digits}g}"


def fmt_complex(z: complex, digits: int = DIGITS) -> str:
    z = complex(z)
    im = z.imag + 0.0
    sign = "-" if im < 0 or (im == 0 and math.copysign(1, im) < 0) else "+"
    return f"{fmt_real(z.real, digits)}{sign}{fmt_real(abs(im), digits)}i"


def _bool(v: bool) -> str:
    return "true" if v else "false"


def _poly_lines(f: BasePolynomial) -> list[str]:
    return [
        f"{a} {b} {c} {fmt_real(v)}"
        for (a, b, c), v in sorted(f.coefficients.items())
        if v != 0.0
    ]


def format_gauwu_report(an: Analysis, res: GauWuResult, title: str = "matrix") -> str:
    out = [f"# Gau-Wu report: {title}", ""]
    out += ["[applicability]", f"n = {an.n}"]
    out.append(f"unitarily_irreducible = {_bool(an.irreducible)}")
    out.append(f"commutant_dimension = {an.commutant_dim}")
    out.append(f"degenerate = {_bool(an.degenerate)}")
    out.append(f"normal = {_bool(an.normal_like)}")
    for k in sorted(res.applicability):
        if k not in ("n", "unitarily_irreducible"):
            out.append(f"{k} = {res.applicability[k]}")
    out.append("")

    out += ["[result]", f"lower = {res.lower}", f"upper = {res.upper}"]
    if res.exact is not None:
        out.append(f"exact k = {res.exact}")
    else:
        out.append(f"exact = none ({res.lower} <= k <= {res.upper})")
    out.append("")

    out.append("[rules]")
    for r in res.rules:
        parts = [f"{r.id} {r.status}"]
        if r.effect:
            parts.append(r.effect)
        if r.note:
            parts.append(r.note)
        out.append(" | ".join(parts))
        out.append(f"  anchor: {r.statement}")
    out.append("")

    out.append(f"[witnesses] count = {len(res.witnesses)}")
    for j, w in enumerate(res.witnesses, 1):
        out.append(f"witness {j}: theta = {fmt_real(w.theta)}, image = {fmt_complex(w.image)}")
        out.append("  vector = [" + ", ".join(fmt_complex(v) for v in w.vector) + "]")
    out.append("")

    out.append(f"[seeds] count = {len(an.seeds)}")
    for s in an.seeds:
        ends = ", ".join(fmt_complex(e) for e in s.endpoints)
        out.append(
            f"{s.kind}: theta = {fmt_real(s.theta)}, multiplicity = {s.multiplicity}, "
            f"lambda = {fmt_real(s.lam)}, points = [{ends}]"
        )
    out.append("")

    out.append(f"[singularities] count = {len(an.singularities)}")
    for q in an.singularities:
        pt = ", ".join(fmt_real(c) for c in q.point)
        out.append(f"theta = {fmt_real(q.theta)}, lambda = {fmt_real(q.lam)}, order = {q.order}, point = ({pt})")
    out.append("")

    out.append(f"[collinear-groups] count = {len(an.groups)}")
    for key in sorted(an.groups):
        g = an.groups[key]
        out.append(f"theta = {fmt_real(key)}: size = {len(g)}")
    out.append("")

    out += ["[base-polynomial]", f"degree = {an.poly.degree}", f"imaginary_residue = {an.poly.residue:.3e}"]
    out += _poly_lines(an.poly)
    out.append("")

    out.append("[warnings]")
    out += res.warnings or ["none"]
    return "\n".join(out) + "\n"


def format_toeplitz_report(rep: ToeplitzReport) -> str:
    s = rep.spec
    dec = rep.decomposition
    out = [f"# Toeplitz report: n = {s.n}, a = {fmt_complex(s.a)}, b = {fmt_complex(s.b)}, c = {fmt_complex(s.c)}", ""]
    out += ["[result]", f"k(A) = {rep.k_a}", f"k(A') = {rep.k_a_swap}", f"passed = {_bool(rep.passed)}", ""]
    out += ["[decomposition]", f"beta = {fmt_complex(dec.beta)}"]
    out.append("sigmas = [" + ", ".join(fmt_real(x) for x in dec.sigmas) + "]")
    out.append(f"zero_block = {_bool(dec.has_zero_block)}")
    out.append("")
    for j, c in enumerate(rep.checks, 1):
        out.append(f"[check {j}] {c.name}")
        out.append(f"status = {'pass' if c.passed else 'FAIL'}")
        if c.residual is not None:
            out.append(f"residual = {fmt_real(c.residual)}")
        if c.detail:
            out.append(f"detail = {c.detail}")
        out.append("")
    return "\n".join(out)


def format_curve_table(points: list[CurvePoint], metadata: dict) -> str:
    out = [f"# {k}: {metadata[k]}" for k in sorted(metadata)]
    out.append("theta branch re im support order")
    for p in points:
        out.append(
            f"{fmt_real(p.theta)} {p.branch} {fmt_real(p.z.real)} {fmt_real(p.z.imag)} "
            f"{fmt_real(p.support)} {p.order}"
        )
    return "\n".join(out) + "\n"


def render_svg(
    boundary: list[BoundarySample],
    curve: list[CurvePoint],
    eigenvalues,
    size: int = 600,
    margin: int = 30,
) -> str:
    """Standalone SVG: curve points black, boundary blue, eigenvalues red."""
    zs = np.array([b.z for b in boundary] + [c.z for c in curve] + list(eigenvalues), dtype=complex)
    lo_x, hi_x = float(zs.real.min()), float(zs.real.max())
    lo_y, hi_y = float(zs.imag.min()), float(zs.imag.max())
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    cx, cy = (lo_x + hi_x) / 2, (lo_y + hi_y) / 2
    k = (size - 2 * margin) / span

    def xy(z):
        return size / 2 + k * (z.real - cx), size / 2 - k * (z.imag - cy)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    dots = []
    for c in curve:
        x, y = xy(c.z)
        dots.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="0.9"/>')
    out.append('<g id="curve" fill="black">' + "".join(dots) + "</g>")
    pts = " ".join("{:.3f},{:.3f}".format(*xy(b.z)) for b in boundary)
    out.append(f'<polygon id="boundary" points="{pts}" fill="none" stroke="blue" stroke-width="1.5"/>')
    marks = []
    for z in eigenvalues:
        x, y = xy(complex(z))
        marks.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3.5"/>')
    out.append('<g id="eigenvalues" fill="red">' + "".join(marks) + "</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
