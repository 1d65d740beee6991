"""Command-line front end.

Subcommands:

* ``lift``    -- lift a model object to phase space and print its components
* ``verify``  -- run a named identity suite against the model's objects
* ``darboux`` -- build and verify Darboux-Nijenhuis coordinates for a tensor
* ``print``   -- print a model object's components as parsed

Exit codes: 0 all checks pass, 1 an identity or verdict check failed,
2 bad input (unreadable model, kind mismatch, unknown name).
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import JetliftError, ModelError, SamplingError
from .lifts import (
    complete_lift_cotangent,
    complete_lift_tensor11,
    complete_lift_vector,
    hlift_tensor11,
    momentum_function,
    vlift_oneform,
    vlift_tensor11,
    vlift_twoform,
)
from .model import load_model
from .pn import build_dn_transform, pn_check, verify_dn
from .report import DEFAULT_BOX, DEFAULT_POINTS, DEFAULT_SEED, DEFAULT_TOL
from .suites import SUITES, run_all_suites, run_suite

LIFT_KINDS = ("vertical", "complete", "horizontal", "momentum", "cotangent")


def _parse_domain(text: str):
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise ModelError(f"--domain expects 'lo,hi', got {text!r}")
    if not lo < hi:
        raise ModelError(f"--domain needs lo < hi, got {text!r}")
    return (lo, hi)


def _component_dict(obj) -> dict:
    """Flatten any of our geometric containers to name -> expression string."""
    space = obj.space
    if hasattr(obj, "entries"):
        return {f"{a},{b}": str(obj.entries[i][j])
                for i, a in enumerate(space.coords)
                for j, b in enumerate(space.coords)
                if str(obj.entries[i][j]) != "0"}
    if hasattr(obj, "comps"):
        return {a: str(obj.comps[i])
                for i, a in enumerate(space.coords)
                if str(obj.comps[i]) != "0"}
    return {"value": str(obj)}


def _emit_object(obj, label: str, as_json: bool):
    comps = _component_dict(obj)
    space_kind = obj.space.kind if hasattr(obj, "space") else "scalar"
    if as_json:
        print(json.dumps({"object": label, "space": space_kind,
                          "components": comps},
                         sort_keys=True, indent=2))
    else:
        print(f"{label} on {space_kind}:")
        if not comps:
            print("  0")
        for key in sorted(comps):
            print(f"  {key}: {comps[key]}")


def cmd_lift(args) -> int:
    model = load_model(args.model)
    kind, obj = model.get(args.object)
    lk = args.kind
    table = {
        ("momentum", "vector_E"): momentum_function,
        ("vertical", "oneform_E"): vlift_oneform,
        ("vertical", "tensor11_E"): vlift_tensor11,
        ("vertical", "twoform_E"): vlift_twoform,
        ("complete", "vector_E"): complete_lift_vector,
        ("complete", "tensor11_E"): complete_lift_tensor11,
        ("horizontal", "tensor11_E"): hlift_tensor11,
        ("cotangent", "tensor11_E"): complete_lift_cotangent,
    }
    op = table.get((lk, kind))
    if op is None:
        supported = sorted(k for lift, k in table if lift == lk)
        raise ModelError(f"cannot take the {lk} lift of a {kind} object; "
                         f"supported kinds: {supported}")
    lifted = op(obj)
    _emit_object(lifted, f"{lk} lift of {args.object}", args.json)
    return 0


def cmd_print(args) -> int:
    model = load_model(args.model)
    kind, obj = model.get(args.object)
    if kind == "transform":
        fwd = {f"Q{i + 1}": str(f) for i, f in enumerate(obj.q_fwd)}
        if args.json:
            print(json.dumps({"object": args.object, "kind": kind,
                              "forward": fwd}, sort_keys=True, indent=2))
        else:
            print(f"{args.object} (transform):")
            for key in sorted(fwd):
                print(f"  {key}: {fwd[key]}")
        return 0
    _emit_object(obj, args.object, args.json)
    return 0


def cmd_verify(args) -> int:
    model = load_model(args.model)
    inp = model.suite_inputs()
    box = _parse_domain(args.domain)
    if args.suite == "all":
        report = run_all_suites(inp, points=args.points, seed=args.seed,
                                tol=args.tol, box=box)
    else:
        if args.suite not in SUITES:
            raise ModelError(f"unknown suite {args.suite!r}; choose from "
                             f"{sorted(SUITES)} or 'all'")
        report = run_suite(args.suite, inp, points=args.points,
                           seed=args.seed, tol=args.tol, box=box)
    if args.json:
        print(report.to_json())
    else:
        for line in report.summary_lines():
            print(line)
        print(f"{'PASS' if report.passed else 'FAIL'}: "
              f"{sum(i.passed for i in report.items)}/{len(report.items)} "
              f"checks, max residual {report.max_residual:.3e}")
    return 0 if report.passed else 1


def cmd_darboux(args) -> int:
    model = load_model(args.model)
    kind, R = model.get(args.object)
    if kind != "tensor11_E":
        raise ModelError(f"darboux needs a tensor11_E object, "
                         f"{args.object!r} is {kind}")
    box = _parse_domain(args.domain)
    pn = pn_check(R, points=args.points, seed=args.seed, tol=args.tol)
    if not pn.is_pn:
        payload = {"object": args.object, "pn": pn.to_dict()}
        if args.json:
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            print(f"refusing {args.object}: verdict {pn.verdict} "
                  f"(torsion residual {pn.torsion_residual:.3e})")
        return 1
    T = build_dn_transform(R, box=box, seed=args.seed)
    report = verify_dn(R, T, seed=args.seed, box=box)
    from .errors import EigenError
    from .pn import eigen_analysis
    import random as _random
    rng = _random.Random(args.seed)
    samples = []
    tries = 0
    while len(samples) < 3 and tries < 100:
        tries += 1
        pt = tuple(rng.uniform(*box) for _ in range(R.space.dim))
        try:
            data = eigen_analysis(R, pt)
        except EigenError:
            continue
        samples.append({"point": list(pt),
                        "eigenvalues": [float(v) for v in data.eigenvalues]})
    if args.json:
        print(json.dumps({"object": args.object, "pn": pn.to_dict(),
                          "eigenvalue_samples": samples,
                          "checks": report.to_dict()},
                         sort_keys=True, indent=2))
    else:
        print(f"{args.object}: verdict {pn.verdict}")
        for s in samples:
            print(f"  eigenvalues at {tuple(s['point'])}: "
                  f"{s['eigenvalues']}")
        for line in report.summary_lines():
            print(line)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetlift",
        description="Lift, verify, and diagonalize (1,1) tensors on a "
                    "time-fibred bundle and its dual jet bundle.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_object=False, need_suite=False):
        p.add_argument("--model", required=True, help="model JSON file")
        if need_object:
            p.add_argument("--object", required=True,
                           help="name of the object in the model")
        if need_suite:
            p.add_argument("--suite", required=True,
                           help="suite name or 'all'")
        p.add_argument("--points", type=int, default=DEFAULT_POINTS)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--domain", default=f"{DEFAULT_BOX[0]:g},"
                                           f"{DEFAULT_BOX[1]:g}",
                       help="sampling box as 'lo,hi'")
        p.add_argument("--json", action="store_true",
                       help="emit a machine-readable JSON report")

    p = sub.add_parser("lift", help="print a lifted object's components")
    common(p, need_object=True)
    p.add_argument("--kind", required=True, choices=LIFT_KINDS)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("verify", help="run an identity suite")
    common(p, need_suite=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("darboux",
                       help="build Darboux-Nijenhuis coordinates")
    common(p, need_object=True)
    p.set_defaults(fn=cmd_darboux)

    p = sub.add_parser("print", help="print a model object")
    common(p, need_object=True)
    p.set_defaults(fn=cmd_print)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ModelError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except JetliftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
