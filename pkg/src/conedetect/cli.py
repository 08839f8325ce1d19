"""Command-line front end.

Every subcommand prints one JSON record (or a ``--format text`` rendering of
it). Exit codes: 0 verdict computed, 1 invalid input, 2 inconclusive
heuristic evidence (quantum backend only).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from conedetect import detection as dc
from conedetect import exact, quantum
from conedetect.audit import theorem_audit
from conedetect.io import (
    InputError,
    cone_record,
    dumps,
    load_json,
    matrix_record,
    parse_cone,
    parse_matrix,
    parse_pair,
    parse_point,
    to_jsonable,
    verdict_record,
)


class Inconclusive(Exception):
    def __init__(self, record: dict):
        self.record = record


def _matrix(path: str):
    return parse_matrix(load_json(path), where=path)


def _cone(path: str):
    return parse_cone(load_json(path), where=path)


def _pair_and_points(args, *names):
    pair = parse_pair(load_json(args.pair), where=args.pair)
    pts = [parse_point(load_json(getattr(args, n)), pair.space_dim, where=getattr(args, n)) for n in names]
    return pair, pts


def _quantum(args, *names):
    mats = [_matrix(getattr(args, n)) for n in names]
    dims = mats[0][1]
    for M, d in mats[1:]:
        if d != dims:
            raise InputError("matrices have different bipartite dimensions")
    pair = quantum.QuantumPair(dims, args.starts, args.seed, args.tol)
    return pair, dims, [M for M, _ in mats]


def _record(args, verdict, backend: str, **extra) -> dict:
    rec = verdict_record(verdict, tolerance=0 if backend == "exact" else args.tol, seed=args.seed, backend=backend)
    rec.update(to_jsonable(extra))
    return rec


# ---------------------------------------------------------------------------
# subcommands


def cmd_cone_check(args):
    cone = _cone(args.cone)
    rep = exact.cone_report(cone)
    rec = {"report": to_jsonable(rep), "is_proper": rep.is_proper}
    if rep.is_proper:
        rec["generators"] = cone_record(exact.canonical(cone))
        rec["inequalities"] = cone_record(exact.to_h_rep(exact.canonical(cone)))
    return rec


def cmd_cone_dual(args):
    return {"dual": cone_record(exact.dual_cone(_cone(args.cone)))}


def cmd_cone_member(args):
    cone = _cone(args.cone)
    x = parse_point(load_json(args.point), cone.space_dim, where=args.point)
    return to_jsonable(exact.membership(cone, x))


def cmd_cone_faces(args):
    faces = exact.enumerate_faces(_cone(args.cone), max_facets=args.max_facets)
    order = [[i, j] for i, g in enumerate(faces) for j, f in enumerate(faces) if i != j and exact.is_subface(g, f)]
    return {"faces": to_jsonable(faces), "subface_pairs": order}


def cmd_cone_face_of(args):
    cone = _cone(args.cone)
    x = parse_point(load_json(args.point), cone.space_dim, where=args.point)
    return {"face": to_jsonable(exact.face_of(cone, x))}


def cmd_detect(args):
    if args.backend == "exact":
        pair, (w, rho) = _pair_and_points(args, "w", "rho")
        return _record(args, dc.detects(pair, w, rho), "exact")
    pair, _, (w, rho) = _quantum(args, "w", "rho")
    return _record(args, dc.detects(pair, w, rho), "quantum")


def cmd_finer(args):
    if args.backend == "exact":
        pair, (w1, w2) = _pair_and_points(args, "w1", "w2")
        backend = "exact"
    else:
        pair, _, (w1, w2) = _quantum(args, "w1", "w2")
        backend = "quantum"
    v = dc.is_finer(pair, w1, w2)
    # "k" is the short name for the order certificate w2 - lam w1
    return _record(args, v, backend, k=v.k_certificate, verified=dc.verify_finer(pair, w1, w2, v))


def cmd_lambda_star(args):
    if args.backend == "exact":
        pair, (w1, w2) = _pair_and_points(args, "w1", "w2")
        backend = "exact"
    else:
        pair, _, (w1, w2) = _quantum(args, "w1", "w2")
        backend = "quantum"
    samples = pair.sample_Kstar(args.samples, args.seed)
    return _record(args, {"lambda_star": dc.lambda_star(pair, w1, w2, samples), "samples": args.samples}, backend)


def cmd_zero_set(args):
    if args.backend == "exact":
        pair, (w,) = _pair_and_points(args, "w")
        return _record(args, {"zero_set": dc.zero_set(pair, w)}, "exact")
    W, dims = _matrix(args.w)
    zs = quantum.witness_zero_set(W, dims, args.starts, args.seed, args.tol)
    return _record(args, zs, "quantum")


def cmd_optimal(args):
    if args.backend == "exact":
        pair, (w,) = _pair_and_points(args, "w")
        v = dc.is_optimal(pair, w, seed=args.seed)
        return _record(args, v, "exact", agree=v.agree, verified=dc.verify_optimality(pair, w, v))
    W, dims = _matrix(args.w)
    pair = quantum.QuantumPair(dims, args.starts, args.seed, args.tol)
    v = quantum.witness_optimality(W, dims, args.starts, args.seed, args.tol)
    rec = _record(args, v, "quantum", agree=v.agree, verified=dc.verify_optimality(pair, W, v))
    rec["zero_set"] = len(v.zero_set)
    if not v.agree:
        raise Inconclusive(rec)
    return rec


def cmd_improve(args):
    if args.backend == "exact":
        pair, (w, k) = _pair_and_points(args, "w", "k")
        backend = "exact"
    else:
        pair, dims, (w, k) = _quantum(args, "w", "k")
        w_new, lam = dc.improve(pair, w, k)
        return _record(args, {"w_improved": matrix_record(w_new, dims), "lambda_max": lam}, "quantum")
    w_new, lam = dc.improve(pair, w, k)
    return _record(args, {"w_improved": w_new, "lambda_max": lam}, backend)


def cmd_witness_classify(args):
    W, dims = _matrix(args.matrix)
    return _record(args, quantum.classify_witness(W, dims, args.starts, args.seed, args.tol), "quantum")


def cmd_ppt(args):
    rho, dims = _matrix(args.matrix)
    rec = {
        "ppt": quantum.is_ppt(rho, dims, args.tol),
        "min_eigenvalue": quantum.min_eigenvalue(rho),
        "min_gamma_eigenvalue": quantum.min_eigenvalue(quantum.partial_transpose(rho, dims)),
    }
    try:
        rec["separable"] = quantum.separability_small(rho, dims, args.tol)
    except quantum.UndecidableError:
        rec["separable"] = None
    return _record(args, rec, "quantum")


def cmd_nd_check(args):
    W, dims = _matrix(args.matrix)
    return _record(args, quantum.nd_optimality_necessary(W, dims, args.starts, args.seed, args.tol), "quantum")


def cmd_theorem_audit(args):
    if args.backend != "exact":
        raise InputError("theorem-audit runs on the exact backend only")
    rep = theorem_audit(args.trials, args.seed)
    rec = to_jsonable(rep)
    rec.update({"tolerance": 0, "backend": "exact"})
    return rec


COMMANDS = {
    "cone-check": (cmd_cone_check, ["cone"]),
    "cone-dual": (cmd_cone_dual, ["cone"]),
    "cone-member": (cmd_cone_member, ["cone", "point"]),
    "cone-faces": (cmd_cone_faces, ["cone"]),
    "cone-face-of": (cmd_cone_face_of, ["cone", "point"]),
    "detect": (cmd_detect, ["pair?", "w", "rho"]),
    "finer": (cmd_finer, ["pair?", "w1", "w2"]),
    "lambda-star": (cmd_lambda_star, ["pair?", "w1", "w2"]),
    "zero-set": (cmd_zero_set, ["pair?", "w"]),
    "optimal": (cmd_optimal, ["pair?", "w"]),
    "improve": (cmd_improve, ["pair?", "w", "k"]),
    "witness-classify": (cmd_witness_classify, ["matrix"]),
    "ppt": (cmd_ppt, ["matrix"]),
    "nd-check": (cmd_nd_check, ["matrix"]),
    "theorem-audit": (cmd_theorem_audit, []),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=quantum.DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--starts", type=int, default=None, help="see-saw starts (default 64*d1*d2)")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--backend", choices=["exact", "quantum"], default="exact")

    parser = argparse.ArgumentParser(prog="conedetect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, inputs) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        for inp in inputs:
            optional = inp.endswith("?")
            inp = inp.rstrip("?")
            p.add_argument(f"--{inp}", required=not optional, metavar="FILE")
        if name == "cone-faces":
            p.add_argument("--max-facets", type=int, default=12)
        if name == "lambda-star":
            p.add_argument("--samples", type=int, default=64)
        if name == "theorem-audit":
            p.add_argument("--trials", type=int, default=100)
        p.set_defaults(func=func)
    return parser


def _has_dict(v) -> bool:
    if isinstance(v, dict):
        return True
    return isinstance(v, list) and any(_has_dict(x) for x in v)


def _render_text(rec, prefix: str = "") -> list[str]:
    """Indented ``key: value`` lines; dict-free lists stay on one line."""
    lines = []
    if isinstance(rec, dict):
        for k in sorted(rec):
            v = rec[k]
            if _has_dict(v):
                lines.append(f"{prefix}{k}:")
                lines.extend(_render_text(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k}: {json.dumps(v)}")
    elif isinstance(rec, list):
        for v in rec:
            lines.append(f"{prefix}-")
            lines.extend(_render_text(v, prefix + "  "))
    else:
        lines.append(f"{prefix}{json.dumps(rec)}")
    return lines


def _emit(rec, fmt: str) -> None:
    if fmt == "text":
        print("\n".join(_render_text(rec)))
    else:
        print(dumps(rec))


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.backend == "exact" and args.command in {"detect", "finer", "lambda-star", "zero-set", "optimal", "improve"}:
        if args.pair is None:
            print("error: --pair is required with --backend exact", file=sys.stderr)
            return 1
    try:
        rec = args.func(args)
    except Inconclusive as exc:
        _emit(exc.record, args.format)
        return 2
    except (ValueError, KeyError) as exc:
        _emit({"error": str(exc), "command": args.command}, args.format)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(rec, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
