"""Command-line front end.

Exit codes: 0 for success and true verdicts, 1 for refutations and false
verdicts, 2 for usage and validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .analysis import DecodeError, decode_strip, displacement_scan, smoothness_scan
from .conjugacy import (
    CertificateError,
    NotEquivalentError,
    build_certificate,
    build_witness,
    verify_certificate,
    verify_witness,
)
from .layout import LayoutParams
from .sequences import C0Verdict, SequenceSpec, c0_equivalent
from .serialization import RunReport, SchemaError, digest, dumps, from_json, loads
from .svg import render_displacement, render_layout, render_orbit
from .system import AssembledSystem, assemble
from .torus import (
    NotMinimalError,
    Refutation,
    apply_unimodular,
    decide_conjugacy,
    fixed_locus,
    is_minimal,
    orbit_sample,
    parse_rotation,
)

OK, REFUTED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a positive finite number, got {text}")
    return v


def _point(text):
    try:
        return np.array([float(Fraction(v.strip())) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse point {text!r}") from None


def _matrix(text):
    try:
        rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse matrix {text!r}") from None
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise argparse.ArgumentTypeError("matrix must be 2x2, written 'a,b;c,d'")
    return rows


# ---------------------------------------------------------------- file helpers


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_doc(path, kind=None):
    text = _read(path)
    try:
        return loads(text, kind), digest(text)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_spec_or_system(path):
    """Spec file or system file -> (spec, params or None, digest)."""
    text = _read(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    try:
        if isinstance(doc, dict) and "spec" in doc:
            S = from_json(doc, "system")
            return S.spec, S.params, digest(text)
        return from_json(doc, "spec"), None, digest(text)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _params_for(args, *found):
    params = [p for p in found if p is not None]
    if params and any(p != params[0] for p in params):
        raise UsageError("inputs disagree on layout parameters")
    if params:
        return params[0]
    return LayoutParams(args.d)


def _emit(args, text: str):
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report(rep: RunReport, args) -> None:
    _emit(args, dumps(rep.finish()))


def _system(args):
    S, dig = _load_doc(args.system, "system")
    if len(args.point) != S.d:
        raise UsageError(f"point must have {S.d} coordinates")
    if np.any(args.point < 0) or np.any(args.point > 1):
        raise UsageError("point must lie in the unit cube")
    return S, dig


# ---------------------------------------------------------------- commands


def cmd_encode(args):
    spec, params, _ = _load_spec_or_system(args.spec)
    params = params or LayoutParams(args.d)
    _emit(args, dumps(assemble(params, spec, args.profile)))
    return OK


def cmd_eval(args):
    S, _ = _system(args)
    _emit(args, json.dumps([float(v) for v in S.eval(args.point)]))
    return OK


def cmd_orbit(args):
    S, _ = _system(args)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k"] + [f"x{i + 1}" for i in range(S.d)])
    p = args.point
    w.writerow([0] + [repr(float(v)) for v in p])
    for k in range(1, args.iterations + 1):
        p = S.eval(p)
        w.writerow([k] + [repr(float(v)) for v in p])
    _emit(args, buf.getvalue())
    return OK


def cmd_decode(args):
    rep = RunReport.start("decode")
    S, dig = _load_doc(args.system, "system")
    rep.inputs["system"] = dig
    reports = []
    try:
        for j in range(1, args.N + 1):
            reports.append(decode_strip(S, S.params, 2 * j, args.tol))
    except DecodeError as exc:
        rep.verdicts["decoded"] = False
        rep.summary["error"] = str(exc)
        _report(rep, args)
        return REFUTED
    rep.verdicts["decoded"] = True
    rep.summary["values"] = [r.center for r in reports]
    rep.summary["strips"] = reports
    _report(rep, args)
    return OK


def cmd_c0(args):
    rep = RunReport.start("c0")
    a, _, da = _load_spec_or_system(args.a)
    b, _, db = _load_spec_or_system(args.b)
    dec = c0_equivalent(a, b)
    rep.inputs.update(a=da, b=db)
    rep.verdicts["verdict"] = dec.verdict.value
    rep.summary = {k: v for k, v in vars(dec).items() if k != "verdict" and v is not None}
    _report(rep, args)
    return OK if dec.verdict is C0Verdict.EQUIVALENT else REFUTED


def cmd_witness(args):
    a, pa, _ = _load_spec_or_system(args.a)
    b, pb, _ = _load_spec_or_system(args.b)
    params = _params_for(args, pa, pb)
    try:
        W = build_witness(a, b, params, args.profile)
    except NotEquivalentError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return REFUTED
    _emit(args, dumps(W))
    return OK


def cmd_verify_witness(args):
    rep = RunReport.start("verify-witness")
    W, dw = _load_doc(args.witness, "witness")
    a, pa, da = _load_spec_or_system(args.a)
    b, pb, db = _load_spec_or_system(args.b)
    params = _params_for(args, W.params, pa, pb)
    profile = W.transports[0][1].profile if W.transports else "smooth"
    defect = verify_witness(W, assemble(params, a, profile), assemble(params, b, profile), args.samples, args.seed)
    rep.inputs.update(witness=dw, a=da, b=db)
    rep.verdicts["conjugates"] = defect < args.threshold
    rep.summary.update(defect=defect, samples=args.samples, threshold=args.threshold)
    _report(rep, args)
    return OK if defect < args.threshold else REFUTED


def cmd_certificate(args):
    a, pa, _ = _load_spec_or_system(args.a)
    b, pb, _ = _load_spec_or_system(args.b)
    params = _params_for(args, pa, pb)
    try:
        C = build_certificate(a, b, params, args.K)
    except CertificateError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return REFUTED
    _emit(args, dumps(C))
    return OK


def cmd_verify_certificate(args):
    rep = RunReport.start("verify-certificate")
    C, dc = _load_doc(args.certificate, "certificate")
    a, pa, da = _load_spec_or_system(args.a)
    b, pb, db = _load_spec_or_system(args.b)
    params = _params_for(args, pa, pb)
    ok = verify_certificate(C, a, b, params)
    rep.inputs.update(certificate=dc, a=da, b=db)
    rep.verdicts["valid"] = ok
    _report(rep, args)
    return OK if ok else REFUTED


def cmd_smoothness(args):
    rep = RunReport.start("smoothness")
    S, dig = _load_doc(args.system, "system")
    if args.strip < 2:
        raise UsageError("--strip must be >= 2")
    res = smoothness_scan(S, args.strip, args.samples, args.seed)
    rep.inputs["system"] = dig
    rep.verdicts["within_bound"] = res.violations == 0
    rep.summary["report"] = res
    _report(rep, args)
    return OK if res.violations == 0 else REFUTED


def _rotation(text):
    try:
        return parse_rotation(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_torus_decide(args):
    T, T2 = _rotation(args.left), _rotation(args.right)
    try:
        res = decide_conjugacy(T, T2)
    except NotMinimalError as exc:
        raise UsageError(str(exc)) from None
    if isinstance(res, Refutation):
        print(f"not conjugate: {res}")
        return REFUTED
    assert apply_unimodular(res.A, res.m, T) == T2
    print(f"conjugate: A={[list(r) for r in res.A]} m={list(res.m)}")
    return OK


def cmd_torus_minimal(args):
    T = _rotation(args.rotation)
    ok = is_minimal(T)
    print(f"{T}: {'minimal' if ok else 'not minimal'}")
    return OK if ok else REFUTED


def cmd_torus_orbit(args):
    T = _rotation(args.rotation)
    for R in orbit_sample(T, args.height):
        print(f"{R.alpha},{R.beta}")
    return OK


def cmd_torus_fixed(args):
    print(fixed_locus(args.matrix))
    return OK


def cmd_plot_layout(args):
    if bool(args.system) == bool(args.witness):
        raise UsageError("pass exactly one of --system or --witness")
    obj, _ = _load_doc(args.system, "system") if args.system else _load_doc(args.witness, "witness")
    try:
        _emit(args, render_layout(obj, args.depth))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return OK


def cmd_plot_orbit(args):
    S, _ = _system(args)
    pts = [args.point]
    for _ in range(args.iterations):
        pts.append(S.eval(pts[-1]))
    _emit(args, render_orbit(np.array(pts), f"orbit of {len(pts)} points"))
    return OK


def cmd_plot_displacement(args):
    S, _ = _load_doc(args.system, "system")
    if args.strip < 2:
        raise UsageError("--strip must be >= 2")
    t, disp = displacement_scan(S, S.params, args.strip)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "displacement"])
            w.writerows([repr(float(a)), repr(float(b))] for a, b in zip(t, disp))
    _emit(args, render_displacement(t, disp, f"displacement scan, strip {args.strip}"))
    return OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="c0dynamo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        return p

    def out(p):
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = add("encode", cmd_encode, "spec JSON -> system JSON")
    p.add_argument("--spec", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--profile", choices=["smooth", "cubic"], default="smooth")
    out(p)

    for name, fn, help_ in (("eval", cmd_eval, "image of one point"), ("orbit", cmd_orbit, "orbit as CSV")):
        p = add(name, fn, help_)
        p.add_argument("--system", required=True)
        p.add_argument("--point", required=True, type=_point)
        if name == "orbit":
            p.add_argument("--iterations", type=_positive_int, default=16)
        out(p)

    p = add("decode", cmd_decode, "recover alpha(1..N) from the dynamics")
    p.add_argument("--system", required=True)
    p.add_argument("--N", type=_positive_int, default=8)
    p.add_argument("--tol", type=_positive_float, default=1e-9)
    out(p)

    p = add("c0", cmd_c0, "decide c0 equivalence of two specs")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    out(p)

    for name, fn, help_ in (
        ("witness", cmd_witness, "build a conjugacy witness"),
        ("certificate", cmd_certificate, "build a non-conjugacy certificate"),
    ):
        p = add(name, fn, help_)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        p.add_argument("--d", type=int, default=2)
        if name == "witness":
            p.add_argument("--profile", choices=["smooth", "cubic"], default="smooth")
        else:
            p.add_argument("--K", type=_positive_int, default=None)
        out(p)

    p = add("verify-witness", cmd_verify_witness, "max conjugacy defect over stratified samples")
    p.add_argument("--witness", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=_positive_float, default=1e-9)
    out(p)

    p = add("verify-certificate", cmd_verify_certificate, "check a non-conjugacy certificate")
    p.add_argument("--certificate", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--d", type=int, default=2)
    out(p)

    p = add("smoothness", cmd_smoothness, "difference-quotient and Jacobian scan of one strip")
    p.add_argument("--system", required=True)
    p.add_argument("--strip", type=_positive_int, required=True)
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    out(p)

    torus = sub.add_parser("torus", help="GL(2,Z) conjugacy of torus rotations")
    tsub = torus.add_subparsers(dest="torus_command", required=True)
    p = tsub.add_parser("decide")
    p.set_defaults(func=cmd_torus_decide)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p = tsub.add_parser("minimal")
    p.set_defaults(func=cmd_torus_minimal)
    p.add_argument("--rotation", required=True)
    p = tsub.add_parser("orbit")
    p.set_defaults(func=cmd_torus_orbit)
    p.add_argument("--rotation", required=True)
    p.add_argument("--height", type=_positive_int, default=1)
    p = tsub.add_parser("fixed-locus")
    p.set_defaults(func=cmd_torus_fixed)
    p.add_argument("--matrix", required=True, type=_matrix)

    plot = sub.add_parser("plot", help="SVG pictures")
    psub = plot.add_subparsers(dest="plot_command", required=True)
    p = psub.add_parser("layout")
    p.set_defaults(func=cmd_plot_layout)
    p.add_argument("--system")
    p.add_argument("--witness")
    p.add_argument("--depth", type=_positive_int, default=3)
    out(p)
    p = psub.add_parser("orbit")
    p.set_defaults(func=cmd_plot_orbit)
    p.add_argument("--system", required=True)
    p.add_argument("--point", required=True, type=_point)
    p.add_argument("--iterations", type=_positive_int, default=64)
    out(p)
    p = psub.add_parser("displacement")
    p.set_defaults(func=cmd_plot_displacement)
    p.add_argument("--system", required=True)
    p.add_argument("--strip", type=_positive_int, required=True)
    p.add_argument("--csv", help="also dump the scan as CSV")
    out(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
