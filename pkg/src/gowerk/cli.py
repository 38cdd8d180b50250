"""``gowerk`` command line.

Exit codes: 0 ok, 1 a ``check`` failed, 2 invalid input, 3 kernel not
positive semidefinite, 4 bad ``k``, 5 reproduction failure.

Every report written to standard output is a single JSON document. Errors
go to standard error as ``{"error": <class name>, "message": ...}``.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import GowerkError, KTooLarge, NotPositiveSemidefinite
from .euclidesation import euclidise, max_triangle_violation
from .kkmeans import lloyd
from .matio import format_matrix, infer_format, read_matrix, read_vector, write_matrix, atomic_write
from .repro import SECTIONS, Tolerances, run_checks
from .symmat import as_kernel, sym_eigen, validate_dissimilarity
from .transforms import (
    EPS_PSD,
    centered_transform,
    embed,
    gower_transform,
    pairwise_distances,
    uniform_svector,
)

EXIT_OK, EXIT_CHECK, EXIT_INVALID, EXIT_NOT_PSD, EXIT_BAD_K, EXIT_REPRO = 0, 1, 2, 3, 4, 5


def _emit(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, allow_nan=False, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def _error(exc: Exception, code: int, **extra) -> int:
    _emit({"error": type(exc).__name__, "message": str(exc), **extra}, sys.stderr)
    return code


def _write_or_inline(args, report: dict, key: str, matrix) -> None:
    if args.output:
        write_matrix(args.output, matrix, args.format or infer_format(args.output))
        report["output"] = args.output
    else:
        report[key] = np.asarray(matrix).tolist()


def _load_kernel(args) -> np.ndarray:
    if args.kernel:
        return as_kernel(read_matrix(args.kernel))
    return centered_transform(read_matrix(args.input))


def cmd_transform(args) -> int:
    d = validate_dissimilarity(read_matrix(args.input))
    s = read_vector(args.s) if args.s else uniform_svector(d.shape[0])
    f = gower_transform(d, s)
    w = sym_eigen(f).eigenvalues
    lam_min = float(w[-1])
    euclid = lam_min >= -args.eps_psd * max(1.0, abs(float(w[0])))
    report = {"m": d.shape[0], "lambda_min": lam_min,
              "verdict": "euclidean" if euclid else "non-euclidean"}
    _write_or_inline(args, report, "kernel", f)
    _emit(report)
    return EXIT_OK


def cmd_embed(args) -> int:
    f = _load_kernel(args)
    try:
        emb = embed(f, args.eps_psd)
    except NotPositiveSemidefinite as exc:
        return _error(exc, EXIT_NOT_PSD, eigenvalue=exc.eigenvalue)
    report = {"m": f.shape[0], "rank": emb.rank,
              "retained_eigenvalues": emb.retained_eigenvalues.tolist()}
    _write_or_inline(args, report, "points", emb.points)
    _emit(report)
    return EXIT_OK


def cmd_check(args) -> int:
    d = validate_dissimilarity(read_matrix(args.input))
    w = sym_eigen(centered_transform(d)).eigenvalues
    lam_min = float(w[-1])
    report = {
        "m": d.shape[0],
        "lambda_min": lam_min,
        "euclidean": bool(lam_min >= -args.eps_psd * max(1.0, abs(float(w[0])))),
        "max_triangle_violation": max_triangle_violation(d),
    }
    report["metric"] = report["max_triangle_violation"] <= 0.0
    code = EXIT_OK
    if args.roundtrip:
        if not args.coords:
            raise GowerkError("--roundtrip needs --coords")
        y = read_matrix(args.coords)
        if y.shape[0] != d.shape[0]:
            raise GowerkError(f"--coords has {y.shape[0]} rows, distances have {d.shape[0]}")
        sse = float(np.sum((pairwise_distances(y) - d) ** 2))
        report["roundtrip_sse"] = sse
        report["roundtrip_ok"] = sse <= args.tol
        if not report["roundtrip_ok"]:
            code = EXIT_CHECK
    _emit(report)
    return code


def cmd_euclidise(args) -> int:
    d = validate_dissimilarity(read_matrix(args.input))
    rep = euclidise(d, mode=args.mode.replace("-", "_"), eps_psd=args.eps_psd)
    report = rep.to_dict()
    _write_or_inline(args, report, "repaired", rep.repaired)
    _emit(report)
    return EXIT_OK


def cmd_cluster(args) -> int:
    f = _load_kernel(args)
    try:
        res = lloyd(f, args.k, seed=args.seed, restarts=args.restarts,
                    max_iter=args.max_iter, init=args.init)
    except KTooLarge as exc:
        return _error(exc, EXIT_BAD_K)
    report = res.to_dict()
    if args.output:
        atomic_write(args.output, json.dumps(report, default=_jsonable) + "\n")
    _emit(report)
    return EXIT_OK


def cmd_paper_repro(args) -> int:
    tol = Tolerances(printed=args.print_tol, eps_psd=args.eps_psd)
    results = run_checks(only=args.only, tol=tol)
    if args.text:
        for r in results:
            print(r.line())
    else:
        _emit({
            "passed": all(r.passed for r in results),
            "checks": [{"name": r.name, "section": r.section, "criterion": r.criterion,
                        "status": "PASS" if r.passed else "FAIL", "detail": r.detail}
                       for r in results],
        })
    return EXIT_OK if results and all(r.passed for r in results) else EXIT_REPRO


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def _nonneg_float(text):
    v = float(text)
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gowerk",
        description="Distance-to-kernel transforms, Euclidean repair and kernel k-means.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--eps-psd", type=_nonneg_float, default=EPS_PSD,
                       help="relative tolerance for PSD / Euclidean tests (default 1e-8)")
        if output:
            p.add_argument("--output", help="write the result matrix here")
            p.add_argument("--format", choices=("csv", "json"),
                           help="output format (default: from --output extension)")

    def source(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--input", help="dissimilarity matrix (double-centred first)")
        g.add_argument("--kernel", help="kernel matrix")

    p = sub.add_parser("transform", help="dissimilarities -> kernel matrix")
    p.add_argument("--input", required=True, help="dissimilarity matrix file")
    p.add_argument("--s", help="projection vector file (default: uniform 1/m)")
    common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("embed", help="kernel -> coordinates Y with Y Y^T = F")
    source(p)
    common(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("check", help="Euclidean / metric diagnostics")
    p.add_argument("--input", required=True, help="dissimilarity matrix file")
    p.add_argument("--roundtrip", action="store_true",
                   help="compare distances between rows of --coords with --input")
    p.add_argument("--coords", help="coordinate matrix for --roundtrip")
    p.add_argument("--tol", type=_nonneg_float, default=1e-12,
                   help="max sum of squared differences for --roundtrip")
    common(p, output=False)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("euclidise", help="shift squared dissimilarities to a Euclidean matrix")
    p.add_argument("--input", required=True, help="dissimilarity matrix file")
    p.add_argument("--mode", choices=("corrected", "original-gower"), default="corrected")
    common(p)
    p.set_defaults(func=cmd_euclidise)

    p = sub.add_parser("cluster", help="kernel k-means")
    source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--restarts", type=_positive_int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=_positive_int, default=100)
    p.add_argument("--init", choices=("kmeans++", "random"), default="kmeans++")
    p.add_argument("--eps-psd", type=_nonneg_float, default=EPS_PSD)
    p.add_argument("--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("paper-repro", help="re-run every worked example and property suite")
    p.add_argument("--only", action="append", choices=SECTIONS,
                   help="restrict to a section (repeatable)")
    p.add_argument("--print-tol", type=_nonneg_float, default=0.05,
                   help="tolerance against one-decimal reference matrices")
    p.add_argument("--text", action="store_true", help="plain PASS/FAIL lines instead of JSON")
    p.add_argument("--eps-psd", type=_nonneg_float, default=EPS_PSD)
    p.set_defaults(func=cmd_paper_repro)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotPositiveSemidefinite as exc:
        return _error(exc, EXIT_NOT_PSD, eigenvalue=exc.eigenvalue)
    except KTooLarge as exc:
        return _error(exc, EXIT_BAD_K)
    except (GowerkError, OSError) as exc:
        return _error(exc, EXIT_INVALID)


if __name__ == "__main__":
    sys.exit(main())
