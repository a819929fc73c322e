"""``waveset`` command-line interface.

Exit codes: 0 when the requested property holds, 1 when it does not, 2 for
malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import families
from .coefficients import CoefficientFamily, is_unitary_ae, synthesize
from .congruence import check_certificate, is_wavelet_set
from .errors import CriterionError, MapError, NotAWaveletSet, ParseError, WavesetError
from .interpolation import build_sigma, classify, default_torsion_bound
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    function_from_json,
    function_to_json,
    map_to_json,
    multiplier_from_json,
    parse_pi_multiple,
    parse_scalar,
    parse_set,
    set_to_json,
)
from .spectral import gram_check, msf_wavelet, parseval_check, time_samples

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(payload: dict, args, text_lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _write_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _read_json(source: str):
    """Inline JSON, or a path to a JSON file."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def _failure_lines(exc: NotAWaveletSet) -> list[str]:
    return [f"  {f.side} congruence failed ({f.kind}): {f}" for f in exc.failures]


def _failures_json(exc: NotAWaveletSet) -> list[dict]:
    return [
        {"side": f.side, "kind": f.kind, "message": str(f), "region": None if f.region is None else str(f.region)}
        for f in exc.failures
    ]


def cmd_verify(args) -> int:
    if args.certificate:
        cert = certificate_from_json(_read_json(args.certificate))
        ok = check_certificate(cert)
        _emit(
            {"verified": ok, "set": set_to_json(cert.set)},
            args,
            [f"certificate for {cert.set}: {'valid' if ok else 'INVALID'}"],
        )
        return EXIT_OK if ok else EXIT_FAIL
    if args.set is None:
        raise UsageError("verify needs a set expression or --certificate")
    E = parse_set(args.set)
    try:
        cert = is_wavelet_set(E, args.d)
    except NotAWaveletSet as exc:
        _emit(
            {"wavelet_set": False, "set": set_to_json(E), "failures": _failures_json(exc)},
            args,
            [f"{E}: not a wavelet set (d={args.d})", *_failure_lines(exc)],
        )
        return EXIT_FAIL
    payload = certificate_to_json(cert)
    if args.out:
        _write_json(args.out, payload)
    lines = [f"{E}: wavelet set (d={args.d})", "  translation witness (piece -> shift * 2pi):"]
    lines += [f"    {p} -> {s:+d}" for p, s in cert.translation.pieces]
    dw = cert.dilation
    lines.append(f"  dilation witness onto {dw.annulus.as_set()} (piece -> power of {dw.d}):")
    lines += [f"    {p} -> {k:+d}" for p, k in dw.pieces]
    _emit(payload, args, lines)
    return EXIT_OK


def _make_set(args):
    name = args.family.replace("-", "_")
    if name == "shannon":
        return families.shannon()
    if name == "journe":
        return families.journe()
    if name == "shannon_alpha":
        return families.shannon_alpha(parse_pi_multiple(_need(args.alpha, "--alpha")))
    if name == "journe_beta":
        return families.journe_beta(parse_pi_multiple(_need(args.beta, "--beta")))
    if name == "subset_through":
        return families.subset_through(parse_set(_need(args.subset, "--subset")))
    if name == "d_dilation":
        return families.d_dilation_set(args.d)
    raise UsageError(f"unknown family {args.family!r}")


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this family")
    return value


def cmd_make(args) -> int:
    E = _make_set(args)
    _emit({"set": set_to_json(E)}, args, [str(E)])
    return EXIT_OK


def cmd_sigma(args) -> int:
    E, F = parse_set(args.source), parse_set(args.target)
    sigma = build_sigma(E, F, args.d)
    info = classify(sigma)
    payload = map_to_json(sigma)
    payload["classification"] = {
        "involution": info.is_involution,
        "torsion_order": info.torsion_order,
        "congruence_powers_ok": info.congruence_powers_ok,
    }
    lines = [f"sigma: {E} -> {F}", "  base pieces (piece -> shift * 2pi):"]
    lines += [f"    {p} -> {m}" for p, m in sigma.pieces]
    lines.append(f"  torsion order: {info.torsion_order if info.torsion_order else 'none up to %d' % default_torsion_bound()}")
    lines.append(f"  involution: {'yes' if info.is_involution else 'no'}")
    if args.eval is not None:
        s = parse_scalar(args.eval)
        value = sigma.evaluate(s)
        payload["evaluation"] = {"s": str(s), "sigma(s)": str(value)}
        lines.append(f"  sigma({s}) = {value}")
    if args.out:
        _write_json(args.out, payload)
    _emit(payload, args, lines)
    return EXIT_OK


def cmd_check_pair(args) -> int:
    if args.family:
        if args.family.replace("_", "-") != "journe-beta":
            raise UsageError("only the journe-beta family is supported")
        E = families.journe_beta(parse_pi_multiple(_need(args.b1, "--b1")))
        F = families.journe_beta(parse_pi_multiple(_need(args.b2, "--b2")))
    elif args.set and args.target:
        E, F = parse_set(args.set), parse_set(args.target)
    else:
        raise UsageError("give --family journe-beta --b1 --b2, or --set and --target")
    info = classify(build_sigma(E, F, args.d))
    pair = info.is_involution and info.congruence_powers_ok
    if pair:
        verdict = "interpolation pair (involution)"
    elif info.torsion_order is None:
        verdict = f"not an interpolation pair: no torsion up to order {default_torsion_bound()}"
    else:
        verdict = f"not an interpolation pair: torsion order {info.torsion_order}"
    payload = {
        "source": set_to_json(E),
        "target": set_to_json(F),
        "interpolation_pair": pair,
        "torsion_order": info.torsion_order,
        "congruence_powers_ok": info.congruence_powers_ok,
    }
    _emit(payload, args, [verdict])
    return EXIT_OK if pair else EXIT_FAIL


def cmd_coeff(args) -> int:
    E, F = parse_set(args.set), parse_set(args.target)
    sigma = build_sigma(E, F, args.d)
    raw = _read_json(args.coeffs)
    if not isinstance(raw, list):
        raise ParseError("--coeffs must be a JSON list with one entry per multiplier")
    try:
        fam = CoefficientFamily([multiplier_from_json(item, args.d) for item in raw], sigma)
    except CriterionError as exc:
        raise UsageError(str(exc)) from None
    verdict = is_unitary_ae(fam)
    payload = {
        "unitary": verdict.unitary,
        "exact": verdict.exact,
        "pieces_checked": verdict.pieces_checked,
        "violation": None if verdict.violation is None else str(verdict.violation),
    }
    mode = "exact" if verdict.exact else "tolerance 1e-12"
    if verdict.unitary:
        lines = [f"coefficient matrix unitary a.e. ({verdict.pieces_checked} pieces, {mode})"]
    else:
        lines = [f"coefficient matrix not unitary on {verdict.violation} ({mode})"]
    if args.synthesize and (verdict.unitary or args.force):
        f = synthesize(fam, force=True)
        _write_json(args.synthesize, function_to_json(f))
        lines.append(f"synthesized function written to {args.synthesize}")
    _emit(payload, args, lines)
    return EXIT_OK if verdict.unitary else EXIT_FAIL


def _function_arg(args):
    if args.function:
        return function_from_json(_read_json(args.function))
    if args.set is None:
        raise UsageError("give a set expression or --function")
    return msf_wavelet(parse_set(args.set))


def cmd_gram(args) -> int:
    f = _function_arg(args)
    report = gram_check(f, args.nmax, args.lmax, args.tol, args.d)
    payload = {
        "passed": report.passed,
        "max_off_diagonal": report.max_off_diagonal,
        "max_diagonal_deviation": report.max_diagonal_deviation,
        "n_range": list(report.index_ranges[0]),
        "l_range": list(report.index_ranges[1]),
        "tol": args.tol,
    }
    lines = [
        f"gram check |n|<={args.nmax}, |l|<={args.lmax}: {'orthonormal' if report.passed else 'NOT orthonormal'}",
        f"  max off-diagonal {report.max_off_diagonal:.3e}, max diagonal deviation {report.max_diagonal_deviation:.3e}",
    ]
    _emit(payload, args, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_parseval(args) -> int:
    f = _function_arg(args)
    tests = [msf_wavelet(parse_set(t)) for t in args.test] if args.test else [f]
    report = parseval_check(f, tests, args.nmax, args.lmax, args.d)
    passed = report.max_deficiency < args.tol
    payload = {
        "passed": passed,
        "deficiencies": report.deficiencies,
        "norms_sq": report.norms_sq,
        "tail_bounds": report.tail_bounds,
        "uncovered_levels": report.uncovered_levels,
    }
    lines = [f"parseval check |n|<={args.nmax}, |l|<={args.lmax}: max deficiency {report.max_deficiency:.3e}"]
    for i, (dfc, tail) in enumerate(zip(report.deficiencies, report.tail_bounds)):
        lines.append(f"  test {i}: deficiency {dfc:.3e} (l-truncation bound {tail:.3e})")
    _emit(payload, args, lines)
    return EXIT_OK if passed else EXIT_FAIL


def _t_range(text: str) -> np.ndarray:
    try:
        a, b, n = text.split(":")
        n = int(n)
        if n < 1:
            raise ValueError
        return np.linspace(float(a), float(b), n)
    except ValueError:
        raise ParseError(f"--t-range must look like a:b:n, got {text!r}") from None


def cmd_samples(args) -> int:
    f = _function_arg(args)
    t = _t_range(args.t_range)
    values = time_samples(f, t)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["t", "re", "im"])
        for ti, v in zip(t, values):
            writer.writerow([repr(float(ti)), repr(float(v.real)), repr(float(v.imag))])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def _rational(text: str) -> Fraction:
    try:
        if "." in text:
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational such as 2 or 5/2, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="waveset", description="Exact verification of interval wavelet sets.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True):
        p.add_argument("--d", type=_rational, default=Fraction(2), help="dilation factor (rational >= 2)")
        if json_flag:
            p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("verify", help="certify a wavelet set")
    p.add_argument("set", nargs="?", help='set expression, e.g. "[-2pi,-pi)u[pi,2pi)"')
    p.add_argument("--certificate", help="re-verify a JSON certificate (file or inline JSON)")
    p.add_argument("--out", help="write the certificate JSON here")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("make", help="construct a classical wavelet set")
    p.add_argument("family", choices=["shannon", "shannon-alpha", "journe", "journe-beta", "subset-through", "d-dilation"])
    p.add_argument("--alpha", help="shift for shannon-alpha, in units of pi unless it mentions pi")
    p.add_argument("--beta", help="parameter for journe-beta, in units of pi unless it mentions pi")
    p.add_argument("--subset", help="set A inside [pi, 3pi/2) for subset-through")
    common(p)
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("sigma", help="build and classify the interpolation map between two wavelet sets")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--eval", help="evaluate sigma at this point")
    p.add_argument("--out", help="write the map JSON here")
    common(p)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("check-pair", help="decide whether two wavelet sets form an interpolation pair")
    p.add_argument("--family", help="journe-beta")
    p.add_argument("--b1", help="first beta, in units of pi")
    p.add_argument("--b2", help="second beta, in units of pi")
    p.add_argument("--set", help="first set expression")
    p.add_argument("--target", help="second set expression")
    common(p)
    p.set_defaults(func=cmd_check_pair)

    p = sub.add_parser("coeff", help="run the coefficient criterion")
    p.add_argument("--set", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--coeffs", required=True, help="JSON list of multipliers (inline or file)")
    p.add_argument("--synthesize", metavar="OUT", help="write the synthesized function JSON here")
    p.add_argument("--force", action="store_true", help="synthesize even when the criterion fails")
    common(p)
    p.set_defaults(func=cmd_coeff)

    for name, helptext, func in (
        ("gram", "orthonormality check of the dilation/translation system", cmd_gram),
        ("parseval", "Parseval deficiency against test functions", cmd_parseval),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("set", nargs="?")
        p.add_argument("--function", help="ModulatedPiecewise JSON instead of a set")
        p.add_argument("--nmax", type=int, default=3 if name == "gram" else 4)
        p.add_argument("--lmax", type=int, default=8 if name == "gram" else 64)
        p.add_argument("--tol", type=float, default=1e-8)
        if name == "parseval":
            p.add_argument("--test", action="append", help="test set expression (repeatable)")
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("samples", help="time-domain samples as CSV (t, re, im)")
    p.add_argument("set", nargs="?")
    p.add_argument("--function", help="ModulatedPiecewise JSON instead of a set")
    p.add_argument("--t-range", default="-8:8:161", help="a:b:n")
    p.add_argument("--out", help="CSV file (default stdout)")
    common(p, json_flag=False)
    p.set_defaults(func=cmd_samples)
    return parser


_SIGNED_VALUE_FLAGS = ("--b1", "--b2", "--alpha", "--beta", "--eval", "--t-range")


def _attach_signed_values(argv: list[str]) -> list[str]:
    """Rewrite ``--b1 -1/14`` as ``--b1=-1/14`` so negative rationals are not read as options."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _SIGNED_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2] != "-":
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = _attach_signed_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except NotAWaveletSet as exc:
        print("not a wavelet set:", file=sys.stderr)
        for line in _failure_lines(exc):
            print(line, file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, UsageError) as exc:
        print(f"waveset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CriterionError as exc:
        print(f"waveset: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (MapError, WavesetError, ValueError) as exc:
        print(f"waveset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
