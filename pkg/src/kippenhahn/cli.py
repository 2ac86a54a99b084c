"""Command-line front end: ``kippenhahn analyze|curve|toeplitz``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .basepoly import PolynomialError, format_polynomial
from .config import RunConfig
from .gauwu import GauWuError, Rule, analyze, classify, toeplitz_k
from .geometry import GeometryError, boundary_points, curve_points
from .matrix import MatrixFormatError, _parse_token, load_matrix
from .report import format_curve_table, format_gauwu_report, format_toeplitz_report, render_svg
from .spectral import EigensolverError
from .toeplitz import ToeplitzHypothesisError, ToeplitzSpec, is_tridiagonal, verify_prop_toes

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_HYPOTHESIS = 4

NUMERICAL_ERRORS = (PolynomialError, GeometryError, GauWuError, EigensolverError, np.linalg.LinAlgError)


class HypothesisError(ValueError):
    pass


def _complex_arg(text: str) -> complex:
    try:
        return _parse_token(text)
    except MatrixFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=720, help="angle grid size (>= 8)")
    common.add_argument("--tol-cluster", type=float, default=None, help="absolute eigenvalue clustering tolerance")
    common.add_argument("--tol-orth", type=float, default=1e-8)
    common.add_argument("--tol-order", type=float, default=1e-6)
    common.add_argument("--out", type=Path, default=None, help="output directory (default: $KIPPENHAHN_OUTPUT_DIR or .)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kippenhahn", description="Numerical range and Gau-Wu number analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for a matrix file")
    p.add_argument("matrix_file", type=Path)
    p.add_argument("--family", choices=["toeplitz"], default=None, help="use a known family formula")

    p = sub.add_parser("curve", parents=[common], help="curve table and SVG figure")
    p.add_argument("matrix_file", type=Path)

    p = sub.add_parser("toeplitz", parents=[common], help="verify the tridiagonal Toeplitz/swap claims")
    p.add_argument("n", type=int)
    p.add_argument("--a", type=_complex_arg, default=0j, help="diagonal entry")
    p.add_argument("--b", type=_complex_arg, required=True, help="superdiagonal entry")
    p.add_argument("--c", type=_complex_arg, required=True, help="subdiagonal entry")
    return parser


def _config(args) -> RunConfig:
    kw = dict(grid_size=args.grid, tol_cluster=args.tol_cluster, tol_orth=args.tol_orth,
              tol_order=args.tol_order, seed=args.seed)
    if args.out is not None:
        kw["output_dir"] = args.out
    return RunConfig(**kw)


def _write(cfg: RunConfig, name: str, text: str) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = cfg.output_dir / name
    path.write_text(text, encoding="utf-8")
    return path


def _toeplitz_bands(a: np.ndarray) -> tuple[complex, complex, complex]:
    n = a.shape[0]
    if n < 3 or not is_tridiagonal(a):
        raise HypothesisError("--family toeplitz needs a tridiagonal matrix with n >= 3")
    bands = (np.diag(a), np.diag(a, 1), np.diag(a, -1))
    if any(not np.allclose(v, v[0], rtol=1e-12, atol=0) for v in bands):
        raise HypothesisError("--family toeplitz needs constant diagonals")
    return tuple(complex(v[0]) for v in bands)


def cmd_analyze(args) -> int:
    cfg = _config(args)
    a = load_matrix(args.matrix_file)
    if a.shape[0] < 2:
        raise HypothesisError("the Gau-Wu number needs n >= 2")
    an = analyze(a, cfg)
    res = classify(a, analysis=an)
    if args.family == "toeplitz":
        _, b, c = _toeplitz_bands(a)
        try:
            k = toeplitz_k(a.shape[0], b, c)
        except ValueError as exc:
            raise HypothesisError(str(exc)) from None
        if not (res.lower <= k <= res.upper):
            raise GauWuError(f"Toeplitz formula k = {k} outside [{res.lower}, {res.upper}]")
        res.lower = res.upper = k
        res.rules.append(Rule("T", "applied", f"exact = {k}", f"n = {a.shape[0]}"))
        res.applicability["family"] = "toeplitz"
    stem = args.matrix_file.stem
    path = _write(cfg, f"{stem}.report.txt", format_gauwu_report(an, res, args.matrix_file.name))
    _write(cfg, f"{stem}.poly.txt", format_polynomial(an.poly))
    summary = f"exact k = {res.exact}" if res.exact is not None else f"{res.lower} <= k <= {res.upper}"
    print(f"{summary}; report written to {path}")
    return EXIT_OK


def cmd_curve(args) -> int:
    cfg = _config(args)
    a = load_matrix(args.matrix_file)
    an = analyze(a, cfg) if a.shape[0] >= 2 else None
    curve = curve_points(a, cfg.grid_size, cfg.tol_cluster)
    boundary = boundary_points(a, cfg.grid_size, cfg.tol_cluster)
    degenerate = bool(an.degenerate) if an is not None else True
    meta = {"n": a.shape[0], "grid": cfg.grid_size, "degenerate-segment": "true" if degenerate else "false"}
    stem = args.matrix_file.stem
    path = _write(cfg, f"{stem}.curve.txt", format_curve_table(curve, meta))
    _write(cfg, f"{stem}.svg", render_svg(boundary, curve, np.linalg.eigvals(a)))
    print(f"{len(curve)} curve points written to {path}" + ("; degenerate segment" if degenerate else ""))
    return EXIT_OK


def cmd_toeplitz(args) -> int:
    cfg = _config(args)
    spec = ToeplitzSpec(args.n, args.a, args.b, args.c)
    rep = verify_prop_toes(spec, cfg)
    path = _write(cfg, f"toeplitz-n{args.n}.report.txt", format_toeplitz_report(rep))
    print(f"k(A) = {rep.k_a}, k(A') = {rep.k_a_swap}; report written to {path}")
    if not rep.passed:
        for c in rep.failures:
            print(f"check failed: {c.name}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "curve": cmd_curve, "toeplitz": cmd_toeplitz}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (MatrixFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ToeplitzHypothesisError, HypothesisError) as exc:
        print(f"error: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NUMERICAL_ERRORS as exc:
        print(f"error: numerical diagnostic: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        # invalid configuration values
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
