"""Command line front end over the exact modular data library."""

import argparse
import json
import os
import random
import sys
from math import gcd

from .galois_kernel import (
    bantay_sigma_S_identity,
    enumerate_kernel,
    genus,
    image_order,
    sigma_covariance_check,
    _is_prime,
)
from .modgroup import ResidueMatrix, decompose, format_matrix, lift, parse_matrix, random_matrix
from .qseries import (
    character,
    log_eta_expansion_check,
    numeric_eval,
    s_transform_check,
    verify_k1_identity,
    verify_t_parametrization,
)
from .wzwrep import (
    conductor,
    dispatch_path,
    evaluate_word,
    g_parity_check,
    rho_closed,
    rho_float,
    rho_S,
    rho_T,
    rho_theorem1,
)

__all__ = ["run", "main"]


class UsageError(Exception):
    pass


def _complex_str(z):
    return f"{z.real:+.12e}{z.imag:+.12e}j"


def _default_workers():
    try:
        w = int(os.environ.get("AFFINESL2_WORKERS", "1"))
    except ValueError:
        w = 1
    return max(w, 1)


def _matrix_lines(label, mat, fmt):
    lines = []
    if fmt in ("exact", "both"):
        for i in range(mat.dim):
            for j in range(mat.dim):
                rec = json.dumps(mat.entry(i, j).to_dict())
                lines.append(f"{label} {i + 1} {j + 1} {rec}")
    if fmt in ("float", "both"):
        arr = mat.to_floats()
        for i in range(mat.dim):
            for j in range(mat.dim):
                lines.append(f"{label}_float {i + 1} {j + 1} {_complex_str(arr[i, j])}")
    return lines


def _level_n(args):
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    return args.level + 2


def _cmd_st_matrices(args):
    n = _level_n(args)
    lines = [f"level {args.level}", f"n {n}", f"conductor {conductor(n)}"]
    lines += _matrix_lines("S", rho_S(n), args.format)
    lines += _matrix_lines("T", rho_T(n), args.format)
    return 0, lines


def _cmd_eval(args):
    n = _level_n(args)
    N = conductor(n)
    try:
        m = parse_matrix(args.matrix)
    except (ValueError, AssertionError) as exc:
        raise UsageError(f"bad --matrix: {exc}")
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det % N != 1 % N:
        raise UsageError(f"matrix determinant {det} is not 1 mod {N}")
    r = ResidueMatrix.from_list(N, m)
    if args.path == "closed":
        mat = rho_closed(r, n)
    elif args.path == "word":
        mat = evaluate_word(decompose(m if det == 1 else lift(r)), n)
    else:
        if gcd(r.c, N) != 1:
            raise UsageError(f"--path theorem1 needs gcd(c, {N}) = 1, got c = {r.c}")
        mat = rho_theorem1(r, n)
    lines = [
        f"level {args.level}",
        f"n {n}",
        f"conductor {N}",
        f"matrix {format_matrix(m)}",
        f"path {args.path}",
        f"dispatch {dispatch_path(r, n)}",
    ]
    lines += _matrix_lines("rho", mat, args.format)
    return 0, lines


def _cmd_kernel(args):
    n = _level_n(args)
    N = conductor(n)
    if N > args.bound:
        raise UsageError(f"conductor {N} exceeds --bound {args.bound}")
    report = enumerate_kernel(n, bound=args.bound, workers=args.workers)
    lines = []
    for line in report.to_text().splitlines():
        if not args.list and line.startswith(("kernel_element", "outside_unit_d_slice")):
            continue
        lines.append(line)
    code = 0 if all(gcd(r.c, 2 * n) != 1 for r in report.kernel) else 1
    if args.check_lists:
        if report.matches_known is None:
            lines.append("known_list_check not_applicable")
        else:
            lines.append(f"known_list_check {'pass' if report.matches_known else 'fail'}")
            if not report.matches_known:
                code = 1
    return code, lines


def _cmd_genus(args):
    p = args.prime
    if not (_is_prime(p) and p >= 7 and p % 4 == 3):
        raise UsageError("--prime must be a prime p >= 7 with p = 3 mod 4")
    return 0, [str(genus(p))]


def _cmd_image_order(args):
    n = _level_n(args)
    N = conductor(n)
    if N > args.bound:
        raise UsageError(f"conductor {N} exceeds --bound {args.bound}")
    return 0, [str(image_order(n, bound=args.bound, workers=args.workers))]


def _cmd_characters(args):
    n = _level_n(args)
    if args.terms < 0:
        raise UsageError("--terms must be nonnegative")
    tau = None
    if args.numeric is not None:
        try:
            tau = complex(args.numeric)
        except ValueError:
            raise UsageError(f"bad --numeric value {args.numeric!r}")
        if tau.imag <= 0:
            raise UsageError("--numeric tau must have positive imaginary part")
    lines = [f"level {args.level}", f"n {n}"]
    for lam in range(1, n):
        s = character(lam, n, args.terms)
        lead = s.leading_exponent()
        lines.append(f"chi {lam} exponent {lead.numerator}/{lead.denominator}")
        lines.append(f"chi {lam} coeffs " + " ".join(str(c) for c in s.table(args.terms + 1)))
        lines.append(f"chi {lam} series {s}")
        if tau is not None:
            lines.append(f"chi {lam} numeric {_complex_str(numeric_eval(s, tau))}")
    return 0, lines


def _check_line(name, ok):
    return f"{name} {'pass' if ok else 'fail'}"


def _cmd_verify_identities(args):
    n = _level_n(args)
    if args.terms < 1:
        raise UsageError("--terms must be at least 1")
    results = [("log_eta_expansion", log_eta_expansion_check(args.terms))]
    if args.level == 1:
        results.append(("k1_identity", verify_k1_identity(args.terms)))
        results.append(("t_parametrization", verify_t_parametrization(args.terms)))
    results.append(("s_transform", s_transform_check(n, 1j, truncation=300, tol=1e-8)))
    lines = [f"level {args.level}", f"n {n}"]
    lines += [_check_line(name, ok) for name, ok in results]
    ok_all = all(ok for _, ok in results)
    lines.append(_check_line("all", ok_all))
    return (0 if ok_all else 1), lines


def _cmd_verify_all(args):
    n = _level_n(args)
    N = conductor(n)
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    rng = random.Random(args.seed)
    mats = [random_matrix(N, rng) for _ in range(args.samples)]
    results = []

    ok = all(rho_closed(r, n) == evaluate_word(decompose(lift(r)), n) for r in mats)
    results.append((f"closed_vs_word samples={args.samples}", ok))

    dev = max(
        abs(rho_closed(r, n).to_floats() - rho_float(r, n)).max() for r in mats[: min(args.samples, 40)]
    )
    results.append((f"closed_vs_float dev={dev:.3e}", dev < 1e-9))

    ok = all(rho_closed(r, n).is_unitary() for r in mats[: min(args.samples, 20)])
    results.append(("unitarity", ok))

    ok = all(
        evaluate_word(decompose(lift(r, 0)), n) == evaluate_word(decompose(lift(r, 1)), n)
        for r in mats[: min(args.samples, 20)]
    )
    results.append(("lift_independence", ok))

    units = [L for L in range(1, N) if gcd(L, N) == 1]
    ok = all(sigma_covariance_check(L, r, n) for L in units for r in mats[: min(args.samples, 5)])
    results.append(("galois_covariance", ok))

    ok = all(bantay_sigma_S_identity(C, n) for C in units)
    results.append(("bantay_sigma_s", ok))

    if n % 2:
        results.append(("gauss_sum_parity", g_parity_check(n)))

    if N <= args.bound:
        report = enumerate_kernel(n, bound=args.bound, workers=args.workers)
        ok = all(gcd(r.c, 2 * n) != 1 for r in report.kernel)
        results.append((f"kernel size={len(report.kernel)} image={report.image_order}", ok))
        if report.matches_known is not None:
            results.append(("kernel_known_list", report.matches_known))

    results.append(("log_eta_expansion", log_eta_expansion_check(30)))
    if args.level == 1:
        results.append(("k1_identity", verify_k1_identity(30)))
        results.append(("t_parametrization", verify_t_parametrization(30)))
    results.append(("s_transform", s_transform_check(n, 1j, truncation=300, tol=1e-8)))

    lines = [f"level {args.level}", f"n {n}", f"seed {args.seed}"]
    lines += [_check_line(name, ok) for name, ok in results]
    ok_all = all(ok for _, ok in results)
    lines.append(_check_line("all", ok_all))
    return (0 if ok_all else 1), lines


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="affinesl2",
        description="Exact modular data of the affine sl2 representations of SL(2, Z/NZ).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = sub.add_parser("st-matrices", parents=[common], help="print the generator matrices rho(S), rho(T)")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--format", choices=("exact", "float", "both"), default="both")
    p.set_defaults(func=_cmd_st_matrices)

    p = sub.add_parser("eval", parents=[common], help="evaluate rho on a matrix")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--matrix", required=True, metavar="[[a,b],[c,d]]")
    p.add_argument("--path", choices=("closed", "word", "theorem1"), default="closed")
    p.add_argument("--format", choices=("exact", "float", "both"), default="both")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("kernel", parents=[common], help="enumerate the kernel of rho")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print every kernel element")
    p.add_argument("--check-lists", action="store_true", help="compare against the known kernel lists")
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("genus", parents=[common], help="genus of the modular curve for prime level")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("image-order", parents=[common], help="order of the image of rho")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=_cmd_image_order)

    p = sub.add_parser("characters", parents=[common], help="character q-expansions")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--numeric", metavar="TAU", help="also evaluate at tau, e.g. 0.25+1j")
    p.set_defaults(func=_cmd_characters)

    p = sub.add_parser("verify-identities", parents=[common], help="check the character identities")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.set_defaults(func=_cmd_verify_identities)

    p = sub.add_parser("verify-all", parents=[common], help="run every verification suite")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=20260101)
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.set_defaults(func=_cmd_verify_all)

    return parser


def run(argv=None):
    """Parse argv, run the selected subcommand, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        code, lines = args.func(args)
    except UsageError as exc:
        print(f"affinesl2: error: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())
