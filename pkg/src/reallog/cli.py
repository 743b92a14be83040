"""Command-line front end over JSON files.

Exit codes: 0 success / verdict true, 1 verdict false (membership,
preservation, witness search, density), 2 input error, 3 numerical
failure.  Results go to stdout as JSON with 17-significant-digit floats;
diagnostics go to stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import gadgets, linalg, matfuncs, membership, preserver, spacemaps
from .errors import (
    ConvergenceFailure,
    DegenerateAngle,
    DimensionMismatch,
    NegativeAxisEigenvalue,
    NotInK,
    NotInKStar,
    NotScalarImage,
    Overflow,
    ReallogError,
    SampleBudgetExceeded,
    SingularMap,
    SingularMatrix,
    UnsupportedJordanStructure,
)

_DOMAIN_ERRORS = (
    NotInK,
    NotInKStar,
    UnsupportedJordanStructure,
    NegativeAxisEigenvalue,
    SingularMatrix,
    SingularMap,
    NotScalarImage,
    DegenerateAngle,
)
_NUMERICAL_ERRORS = (ConvergenceFailure, Overflow, SampleBudgetExceeded)


class _InputError(Exception):
    pass


def _dumps(obj, indent=0):
    """JSON with every float printed to 17 significant digits."""
    pad = " " * indent
    if isinstance(obj, dict):
        items = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {_dumps(v, indent + 2).lstrip()}'
            for k, v in obj.items()
        )
        return f"{pad}{{\n{items}\n{pad}}}" if obj else f"{pad}{{}}"
    if isinstance(obj, (list, tuple)):
        items = ",\n".join(_dumps(v, indent + 2) for v in obj)
        return f"{pad}[\n{items}\n{pad}]" if len(obj) else f"{pad}[]"
    if isinstance(obj, bool) or obj is None:
        return pad + json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return pad + format(float(obj), ".17g")
    return pad + json.dumps(str(obj))


def _emit(obj):
    print(_dumps(obj))


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_matrix(path):
    try:
        return spacemaps.matrix_from_dict(_load_json(path))
    except ValueError as exc:
        raise _InputError(str(exc)) from exc


def _load_map(path):
    try:
        return spacemaps.map_from_dict(_load_json(path))
    except ValueError as exc:
        raise _InputError(str(exc)) from exc


def _write_matrix(path, a):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dumps(spacemaps.matrix_to_dict(a)))
        fh.write("\n")


def _complex_pairs(values):
    return [[float(v.real), float(v.imag)] for v in values]


def _cmd_check(args):
    a = _load_matrix(args.infile)
    fn = {
        "K": membership.in_K,
        "Kstar": membership.in_K_star,
        "closure": membership.in_closure,
    }[args.set]
    verdict = fn(a)
    _emit({"set": args.set, "in_set": verdict.in_set, "witness": verdict.witness})
    return 0 if verdict.in_set else 1


def _cmd_logm(args):
    a = _load_matrix(args.infile)
    fn = matfuncs.logm_principal if args.mode == "principal" else matfuncs.real_log_paired
    res = fn(a)
    out = {"kind": res.kind.value, "roundtrip_residual": res.roundtrip_residual}
    if args.outfile:
        _write_matrix(args.outfile, res.log_matrix)
        out["out"] = args.outfile
    else:
        out["matrix"] = spacemaps.matrix_to_dict(res.log_matrix)
    _emit(out)
    return 0


def _cmd_expm(args):
    x = _load_matrix(args.infile)
    e = matfuncs.expm(x)
    out = {}
    if args.outfile:
        _write_matrix(args.outfile, e)
        out["out"] = args.outfile
    else:
        out["matrix"] = spacemaps.matrix_to_dict(e)
    _emit(out)
    return 0


def _witness_dict(w):
    if w is None:
        return None
    return {
        "matrix": spacemaps.matrix_to_dict(w.matrix),
        "image": spacemaps.matrix_to_dict(w.image),
        "target": w.target,
        "explanation": w.explanation,
    }


def _cmd_analyze_map(args):
    phi = _load_map(args.infile)
    res = preserver.analyze(phi, seed=args.seed)
    out = {"verdict": res.verdict.value, "detail": res.detail}
    if res.form is not None:
        out["form"] = {
            "c": res.form.c,
            "P": spacemaps.matrix_to_dict(res.form.p),
            "transposed": res.form.transposed,
        }
    out["witness"] = _witness_dict(res.witness)
    _emit(out)
    return {
        preserver.Verdict.STANDARD_PRESERVER: 0,
        preserver.Verdict.NOT_PRESERVER: 1,
        preserver.Verdict.NOT_BIJECTIVE: 2,
        preserver.Verdict.UNDETERMINED: 3,
    }[res.verdict]


def _cmd_falsify(args):
    phi = _load_map(args.infile)
    w = preserver.falsify_preservation(
        phi, args.set, budget=args.budget, seed=args.seed
    )
    _emit({"set": args.set, "witness": _witness_dict(w)})
    return 0 if w is not None else 1


def _cmd_gadgets(args):
    theta = args.theta
    a = gadgets.shear_A_theta(theta)
    b = gadgets.product_B_theta(theta)
    out = {
        "theta": theta,
        "A_theta": spacemaps.matrix_to_dict(a),
        "B_theta": spacemaps.matrix_to_dict(b),
        "A_eigenvalues": _complex_pairs(linalg.eigenvalues(a).values),
        "B_eigenvalues": _complex_pairs(linalg.eigenvalues(b).values),
        "B_trace": float(np.trace(b)),
        "B_det": float(np.linalg.det(b)),
        "A_in_Kstar": membership.in_K_star(a).in_set,
        "B_in_Kstar": membership.in_K_star(b).in_set,
    }
    _emit(out)
    return 0


def _cmd_density(args):
    witness = gadgets.zariski_density_witness(
        args.n, args.degree, args.samples, args.seed
    )
    _emit({"n": args.n, "degree": args.degree, "samples": args.samples, "witness": witness})
    return 0 if witness else 1


def _random_conjugator(rng, n):
    while True:
        p = rng.standard_normal((n, n))
        if np.linalg.cond(p) < 1e3:
            return p


def _cmd_verify_theorem(args):
    rng = np.random.default_rng(args.seed)
    n = args.n
    fwd = {"trials": args.trials, "recovered": 0, "max_c_relerr": 0.0,
           "max_p_err": 0.0, "membership_violations": 0}
    for _ in range(args.trials):
        c = float(np.exp(rng.uniform(-1.5, 1.5)))
        p = _random_conjugator(rng, n)
        transposed = bool(rng.integers(0, 2))
        form = spacemaps.make_standard_form(c, p, transposed)
        phi = spacemaps.from_standard(form)
        res = preserver.analyze(phi, seed=args.seed)
        if res.verdict is not preserver.Verdict.STANDARD_PRESERVER:
            continue
        c_err = abs(res.form.c - c) / c
        p_err = linalg.fro(res.form.p - form.p)
        fwd["max_c_relerr"] = max(fwd["max_c_relerr"], c_err)
        fwd["max_p_err"] = max(fwd["max_p_err"], p_err)
        if c_err <= 1e-9 and p_err <= 1e-8 and res.form.transposed == transposed:
            fwd["recovered"] += 1
        for _ in range(2):
            a = matfuncs.expm(rng.standard_normal((n, n)) / np.sqrt(n))
            img = spacemaps.apply(phi, a)
            if membership.in_K(a).in_set != membership.in_K(img).in_set:
                fwd["membership_violations"] += 1
            if membership.in_K_star(a).in_set != membership.in_K_star(img).in_set:
                fwd["membership_violations"] += 1
    contra = {"trials": args.trials, "witnesses_found": 0}
    for t in range(args.trials):
        p = _random_conjugator(rng, n)
        q = _random_conjugator(rng, n)
        m = q @ p
        if linalg.fro(m - (np.trace(m) / n) * np.eye(n)) < 0.05 * linalg.fro(m):
            q = q + np.diag(np.arange(1.0, n + 1.0))  # push away from scalar QP
            m = q @ p
        phi = spacemaps.from_two_sided(p, q, transposed=bool(rng.integers(0, 2)))
        w = preserver.falsify_preservation(phi, "Kstar", budget=10000, seed=args.seed + t)
        if w is not None:
            contra["witnesses_found"] += 1
    all_pass = (
        fwd["recovered"] == fwd["trials"]
        and fwd["membership_violations"] == 0
        and contra["witnesses_found"] == contra["trials"]
    )
    _emit({"n": n, "forward": fwd, "contrapositive": contra, "all_pass": all_pass})
    return 0 if all_pass else 3


def build_parser():
    ap = argparse.ArgumentParser(
        prog="reallog",
        description="Real matrix logarithm classes and their linear preservers",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="membership of a matrix in K, K*, or the closure")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--set", choices=["K", "Kstar", "closure"], default="Kstar")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("logm", help="real logarithm of a matrix")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.add_argument("--mode", choices=["principal", "paired"], default="principal")
    p.set_defaults(fn=_cmd_logm)

    p = sub.add_parser("expm", help="matrix exponential")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.set_defaults(fn=_cmd_expm)

    p = sub.add_parser("analyze-map", help="classify a matrix-space map")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_analyze_map)

    p = sub.add_parser("falsify", help="search for a membership witness against a map")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--set", choices=["K", "Kstar"], default="Kstar")
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_falsify)

    p = sub.add_parser("gadgets", help="shear/rotation product demo at an angle")
    p.add_argument("--theta", type=float, required=True)
    p.set_defaults(fn=_cmd_gadgets)

    p = sub.add_parser("verify-theorem", help="randomized two-direction theorem check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify_theorem)

    p = sub.add_parser("density", help="polynomial-density rank witness over K")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_density)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (DimensionMismatch, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except ReallogError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
