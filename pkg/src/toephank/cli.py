"""
Command-line front end.

Symbols are given as inline JSON or a path to a JSON file: ``{"a": [...],
"b": [...], "c": [...], "d": [...]}`` for the product form, or ``{"c0": ...,
"r": [...], "rho": [...], "delta": [...]}`` for the Day form.  Scalars are
strings such as ``"1/2"``, ``"i/2"``, ``"1/3-2/5i"`` or plain JSON numbers.

Exit codes: 0 success, 2 invalid input, 3 oracle mismatch or failed suite.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import fredholm, identities, spectra
from .day_toeplitz import bc_toeplitz_det, bocg_det_toeplitz, day_det
from .matrix_oracle import build_th, build_toeplitz, det_lu
from .scalars import format_scalar, is_exact
from .symbol import DayForm, RationalSymbolBC, SymbolError, day_to_bc
from .th_formula import perturb, terms_to_json, th_det

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3

ORACLE_RTOL = 1e-9


class UsageError(Exception):
    """Bad command-line input (exit code 2)."""


def _jsonify_numbers(obj):
    # JSON numbers go through the string parser so "exact" stays exact
    if isinstance(obj, dict):
        return {k: _jsonify_numbers(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_jsonify_numbers(v) for v in obj]
    if isinstance(obj, bool):
        raise UsageError("booleans are not scalars")
    if isinstance(obj, (int, float)):
        return repr(obj)
    return obj


def load_symbol(source: str, backend: str = "exact"):
    """Parse inline JSON or read a JSON file; returns a BC or Day-form symbol."""
    text = source
    if not source.lstrip().startswith("{"):
        if not os.path.exists(source):
            raise UsageError(f"symbol file not found: {source}")
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"symbol JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("symbol JSON must be an object")
    obj = _jsonify_numbers(obj)
    try:
        if "c0" in obj:
            return DayForm.from_json(obj, field=backend)
        return RationalSymbolBC.from_json(obj, field=backend)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None


def _bc(sym, what: str) -> RationalSymbolBC:
    if not isinstance(sym, RationalSymbolBC):
        raise UsageError(f"{what} needs a product-form symbol (keys a, b, c, d)")
    return sym


def _fmt(x) -> str:
    return format_scalar(x)


def _rel(x, y) -> float:
    x, y = complex(x), complex(y)
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


def _oracle_line(value, oracle) -> tuple[str, bool]:
    if is_exact(value) and is_exact(oracle):
        ok = value == oracle
        err = 0.0 if ok else _rel(value, oracle)
    else:
        err = _rel(value, oracle)
        ok = err <= ORACLE_RTOL
    if ok:
        return "oracle: match", True
    return f"oracle: mismatch ({_fmt(oracle)}, rel err {err:.3e})", False


def _float_only(args, what: str) -> None:
    if args.backend == "exact":
        raise UsageError(f"{what} runs in the float backend only")


def _write(path: str | None, writer, obj) -> None:
    if path is None or path == "-":
        writer(obj, sys.stdout)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer(obj, fh)


# ---------------------------------------------------------------------------
# commands


def cmd_det(args) -> int:
    sym = _bc(load_symbol(args.symbol, args.backend), "det")
    if args.perturb is not None:
        sym = perturb(sym, args.perturb if args.backend == "exact" else float(args.perturb))
    if args.terms:
        value, terms = th_det(sym, args.n, terms=True)
    else:
        value = th_det(sym, args.n)
    line = _fmt(value)
    status = EXIT_OK
    if args.oracle:
        msg, ok = _oracle_line(value, det_lu(build_th(sym, args.n)))
        line += " | " + msg
        status = EXIT_OK if ok else EXIT_MISMATCH
    print(line)
    if args.terms:
        print(json.dumps(terms_to_json(terms)))
    return status


def cmd_toeplitz_det(args) -> int:
    sym = load_symbol(args.symbol, args.backend)
    n = args.n
    if isinstance(sym, DayForm):
        value = day_det(sym, n)
        if args.oracle:
            conv = day_to_bc(sym)
            oracle = conv.prefactor(n) * det_lu(build_toeplitz(conv.symbol, n))
    else:
        if args.route == "fredholm":
            _float_only(args, "the Fredholm route")
            value = bocg_det_toeplitz(sym, n, args.M)
        else:
            value = bc_toeplitz_det(sym, n)
        if args.oracle:
            oracle = det_lu(build_toeplitz(sym, n))
    line = _fmt(value)
    status = EXIT_OK
    if args.oracle:
        msg, ok = _oracle_line(value, oracle)
        line += " | " + msg
        status = EXIT_OK if ok else EXIT_MISMATCH
    print(line)
    return status


def cmd_fredholm(args) -> int:
    _float_only(args, "fredholm")
    sym = _bc(load_symbol(args.symbol, "float"), "fredholm")
    value = fredholm.be_det(sym, args.n, args.M)
    line = _fmt(value)
    status = EXIT_OK
    if args.oracle:
        msg, ok = _oracle_line(value, th_det(sym, args.n))
        line += " | closed form " + msg.split(": ", 1)[1]
        status = EXIT_OK if ok else EXIT_MISMATCH
    print(line)
    return status


def cmd_identities(args) -> int:
    results = identities.run_all(args.seed, args.trials)
    print(identities.format_table(results, args.seed))
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


def cmd_conventions(args) -> int:
    rows = identities.exponent_report(args.seed)
    text = identities.format_exponent_report(rows, args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    shipped = [r for r in rows if r.variant in ("S^(n-1) T^n", "A^(2n+1)")]
    return EXIT_OK if all(r.match for r in shipped) else EXIT_MISMATCH


def _window(text: str):
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad window {text!r}") from None
    if len(parts) != 4 or parts[0] >= parts[1] or parts[2] >= parts[3]:
        raise UsageError("window is re_min,re_max,im_min,im_max with min < max")
    return tuple(parts)


def cmd_locus(args) -> int:
    _float_only(args, "locus")
    sym = load_symbol(args.symbol, "float")
    if args.kind == "th":
        sym = _bc(sym, "the T+H locus")
    scan = spectra.locus_scan(sym, args.kind, _window(args.window), args.res, args.threshold)
    _write(args.out, spectra.write_locus_csv, scan)
    if args.out:
        print(f"{int(scan.flag.sum())} of {scan.flag.size} cells flagged ({args.kind})")
    return EXIT_OK


def cmd_eigs(args) -> int:
    _float_only(args, "eigs")
    sym = _bc(load_symbol(args.symbol, "float"), "eigs")
    scan = None
    if args.window:
        kind = "th" if args.which == "th" else "toeplitz"
        scan = spectra.locus_scan(sym, kind, _window(args.window), args.res)
    cloud = spectra.eig_cloud(sym, args.n, args.which, scan)
    _write(args.out, spectra.write_eigs_csv, cloud)
    if args.out:
        print(f"n={cloud.n} {cloud.which}: max distance to curve {cloud.max_dist_curve:.6g}")
        print(f"phi(1) = {_fmt(cloud.phi1)}, nearest eigenvalue at distance {cloud.phi1_distance:.3e}")
    return EXIT_OK


def cmd_curve(args) -> int:
    _float_only(args, "curve")
    sym = load_symbol(args.symbol, "float")
    _write(args.out, spectra.write_curve_csv, spectra.image_curve(sym, args.m))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toephank", description="Toeplitz and Toeplitz+Hankel determinants of rational symbols")
    sub = p.add_subparsers(dest="command", required=True)

    def symbol_args(sp, backend_default="exact"):
        sp.add_argument("--symbol", required=True, help="inline JSON or path to a JSON file")
        sp.add_argument("--backend", choices=("exact", "float"), default=backend_default)

    sp = sub.add_parser("det", help="det(T_n + H_n) from the subset expansion")
    symbol_args(sp)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--terms", action="store_true", help="also print the per-(S, T) terms as JSON")
    sp.add_argument("--oracle", action="store_true", help="compare with the LU determinant")
    sp.add_argument("--perturb", default=None, help="nudge parameters apart by this epsilon")
    sp.set_defaults(func=cmd_det)

    sp = sub.add_parser("toeplitz-det", help="det T_n (Day form or product form)")
    symbol_args(sp)
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--route", choices=("closed", "fredholm"), default="closed")
    sp.add_argument("--M", type=_positive, default=None, help="Fredholm truncation size")
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(func=cmd_toeplitz_det)

    sp = sub.add_parser("fredholm", help="det(T_n + H_n) through the truncated operator determinant")
    symbol_args(sp, "float")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--M", type=_positive, default=None)
    sp.add_argument("--oracle", action="store_true", help="compare with the closed form")
    sp.set_defaults(func=cmd_fredholm)

    sp = sub.add_parser("identities", help="run the randomized identity suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=_positive, default=50)
    sp.set_defaults(func=cmd_identities)

    sp = sub.add_parser("conventions", help="exponent-convention report against the oracle")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_conventions)

    sp = sub.add_parser("locus", help="grid scan of the locus gap (CSV)")
    symbol_args(sp, "float")
    sp.add_argument("--kind", choices=("toeplitz", "th"), default="th")
    sp.add_argument("--window", required=True, help="re_min,re_max,im_min,im_max")
    sp.add_argument("--res", type=_positive, default=400)
    sp.add_argument("--threshold", type=float, default=None, help="absolute gap cut (default: adaptive)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_locus)

    sp = sub.add_parser("eigs", help="eigenvalues of T_n or T_n + H_n with distances (CSV)")
    symbol_args(sp, "float")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--which", choices=("t", "th"), default="th")
    sp.add_argument("--window", default=None, help="scan window for locus distances")
    sp.add_argument("--res", type=_positive, default=400)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_eigs)

    sp = sub.add_parser("curve", help="samples of the image curve phi(T) (CSV)")
    symbol_args(sp, "float")
    sp.add_argument("--m", type=int, default=4096)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_curve)
    return p


def _join_negative_values(argv: list) -> list:
    # "--window -1,2,..." would otherwise be read as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        return args.func(args)
    except (UsageError, SymbolError, ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
