"""Batch front-end: construct families, classify sets, scan parameter
spaces, and emit JSON reports.

Exit codes: 0 on success, 1 when a verification suite finds a mismatch,
2 on usage errors.  All output is deterministic for fixed arguments and
seed (keys sorted, no timestamps), so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import kernels, suites
from .classify import auto_classify, classify, enumerate_intersections
from .codes import code_report, enumerator_divisibility_check, reduce_mod
from .constructions import (
    AdditiveMap,
    CurveParams,
    GeneralMap,
    complement,
    gamma_a,
    hermitian_intersection_count,
    hermitian_unital,
    interior_square_classes,
    lift,
    oval_set,
    touching_union,
    trace_norm_set,
)
from .galois import create_field, field_of_order
from .plane import PointSet
from .suites import DEFAULT_SEED, gamma_field


def _emit(payload, out_path=None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _int_list(value: str) -> list[int]:
    return [int(tok) for tok in value.split(",") if tok.strip() != ""]


def _field_for(args):
    """The plane field: GF(q^2) for the trace-norm families, GF(q) otherwise."""
    if args.family in ("gamma", "trace-norm", "hermitian"):
        return gamma_field(args.q) if args.family == "gamma" else _square_field(args.q)
    return field_of_order(args.q)


def _square_field(q: int):
    F = field_of_order(q)
    return create_field(F.p, 2 * F.n)


def _construct(args) -> PointSet:
    fam = args.family
    if fam == "gamma":
        if args.a is None:
            raise SystemExit2("--a is required for the gamma family")
        return gamma_a(_field_for(args), args.a)
    if fam == "hermitian":
        return hermitian_unital(_field_for(args))
    if fam == "trace-norm":
        F = _field_for(args)
        if args.f_coeffs is not None:
            return trace_norm_set(F, AdditiveMap(tuple(_pad(_int_list(args.f_coeffs), F.n))))
        if args.f_poly is not None:
            return trace_norm_set(F, GeneralMap(tuple(_int_list(args.f_poly))))
        return trace_norm_set(F)
    if fam == "touching":
        if args.B is None:
            raise SystemExit2("--B is required for the touching family")
        return touching_union(_field_for(args), _int_list(args.B))
    if fam == "interior":
        F = _field_for(args)
        return touching_union(F, interior_square_classes(F)[0],
                              label=f"conic interior over GF({F.order})")
    if fam == "oval":
        if args.variant is None:
            raise SystemExit2("--variant is required for the oval family")
        return oval_set(_field_for(args), args.variant)
    if fam == "lift":
        if args.infile is None:
            raise SystemExit2("--in is required for the lift family")
        base = PointSet.load(args.infile)
        basis = _int_list(args.basis) if args.basis else None
        return lift(base, h=args.h, basis=basis, s=args.s)
    if fam == "complement":
        if args.infile is None:
            raise SystemExit2("--in is required for the complement family")
        return complement(PointSet.load(args.infile))
    raise SystemExit2(f"unknown family {fam!r}")


def _pad(coeffs: list[int], n: int) -> list[int]:
    if len(coeffs) > n:
        raise SystemExit2(f"at most {n} additive coefficients fit this field")
    return coeffs + [0] * (n - len(coeffs))


class SystemExit2(SystemExit):
    def __init__(self, message: str):
        print(f"error: {message}", file=sys.stderr)
        super().__init__(2)


def _resolve_frame(X: PointSet, spec: str | None):
    if spec and spec != "auto":
        p0, l0 = (int(t) for t in spec.split(","))
        return p0, l0
    if X.frame is not None:
        return X.frame
    return None


def cmd_construct(args) -> int:
    X = _construct(args)
    if args.out:
        X.save(args.out)
    _emit({
        "family": args.family,
        "label": X.label,
        "Q": X.field.order,
        "size": X.size,
        "frame": list(X.frame) if X.frame else None,
        "out": args.out,
    })
    return 0


def cmd_classify(args) -> int:
    X = PointSet.load(args.infile) if args.infile else _construct(args)
    enum = enumerate_intersections(X, workers=args.workers)
    frame = _resolve_frame(X, args.frame)
    if frame is None or args.frame == "auto":
        reports = [r.to_dict() for r in auto_classify(X, enum)]
        payload = {"label": X.label, "size": X.size, "frames": reports}
        _emit(payload, args.out)
        return 0
    rep = classify(X, frame[0], frame[1], enum)
    _emit({"label": X.label, "size": X.size, **rep.to_dict()}, args.out)
    return 0


def cmd_spectrum(args) -> int:
    X = PointSet.load(args.infile) if args.infile else _construct(args)
    enum = enumerate_intersections(X, workers=args.workers)
    _emit({"label": X.label, **enum.to_dict(with_directions=args.by_direction)}, args.out)
    return 0


def cmd_code(args) -> int:
    X = PointSet.load(args.infile) if args.infile else _construct(args)
    enum = enumerate_intersections(X, workers=args.workers)
    rep = code_report(X, enum, exhaustive_check=args.exhaustive)
    payload = {"label": X.label, **rep.to_dict()}
    if args.mod:
        payload["reduction"] = reduce_mod(rep.weights, args.mod)
        payload["reduction"]["coeffs"] = {str(k): v for k, v in payload["reduction"]["coeffs"].items()}
        payload["reduction"]["signed"] = {str(k): v for k, v in payload["reduction"]["signed"].items()}
    if X.family:
        payload["congruences"] = enumerator_divisibility_check(X, enum)
    _emit(payload, args.out)
    return 0


def cmd_hermitian_scan(args) -> int:
    report = suites.suite_thm13((args.q,), seed=args.seed,
                                samples_large=args.sample or 10_000,
                                workers=args.workers)
    _emit(report, args.out)
    return 0 if report["ok"] else 1


def cmd_verify(args) -> int:
    report = suites.run_suite(args.suite, q=args.q, seed=args.seed, workers=args.workers)
    _emit(report, args.out)
    return 0 if report["ok"] else 1


def cmd_scan_f(args) -> int:
    report = suites.scan_f(args.q, workers=args.workers)
    if not args.full_rows:
        report = {k: v for k, v in report.items() if k != "rows"}
    _emit(report, args.out)
    return 0


def cmd_conjecture(args) -> int:
    report = suites.conjecture_scan(args.p, args.h, sample=args.sample,
                                    seed=args.seed, workers=args.workers)
    _emit(report, args.out)
    return 0 if report["ok"] else 1


def _add_construct_flags(p):
    p.add_argument("--family", choices=["gamma", "hermitian", "trace-norm", "touching",
                                        "interior", "oval", "lift", "complement"],
                   help="point-set family to build")
    p.add_argument("--q", type=int, help="base parameter q of the family")
    p.add_argument("--a", type=int, help="field element index a (gamma family)")
    p.add_argument("--B", type=str, help="comma list of field element indices (touching)")
    p.add_argument("--variant", type=int, choices=[1, 2, 3, 4], help="oval variant")
    p.add_argument("--f-coeffs", type=str, help="additive map coefficients, comma list")
    p.add_argument("--f-poly", type=str, help="general polynomial map, comma list")
    p.add_argument("--s", type=int, help="lift subspace dimension")
    p.add_argument("--h", type=int, help="lift extension degree")
    p.add_argument("--basis", type=str, help="explicit lift basis, comma list")
    p.add_argument("--in", dest="infile", type=str, help="input point-set file")


def _add_common(p):
    p.add_argument("--workers", type=int, default=max(1, min(4, os.cpu_count() or 1)),
                   help="worker threads for the counting kernels")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled scans")
    p.add_argument("--out", type=str, help="also write the JSON report to this path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="regsets",
        description="Point sets of small Desarguesian planes: construction, "
                    "classification, and their projective codes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a point-set family and save it")
    _add_construct_flags(p)
    _add_common(p)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("classify", help="type verdicts for a set (file or family)")
    _add_construct_flags(p)
    p.add_argument("--frame", type=str,
                   help="'P0,L0' point and line indices, or 'auto' for a frame search")
    _add_common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("spectrum", help="line-intersection enumerator of a set")
    _add_construct_flags(p)
    p.add_argument("--by-direction", action="store_true",
                   help="include the per-parallel-class multisets")
    _add_common(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("code", help="projective-code report for a set")
    _add_construct_flags(p)
    p.add_argument("--exhaustive", action="store_true",
                   help="cross-check weights against brute-force message enumeration")
    p.add_argument("--mod", type=int, help="also reduce the weight enumerator mod M")
    _add_common(p)
    p.set_defaults(fn=cmd_code)

    p = sub.add_parser("hermitian-scan", help="intersection counts with the hermitian curve")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--sample", type=int, help="sample count for large fields")
    _add_common(p)
    p.set_defaults(fn=cmd_hermitian_scan)

    p = sub.add_parser("verify", help="run a verification battery")
    p.add_argument("--suite", required=True,
                   choices=["thm12", "remark35", "thm13", "example26", "touching",
                            "lift", "codes", "conjecture", "all"])
    p.add_argument("--q", type=int, nargs="*", help="override the suite's q list")
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("scan-f", help="classify the trace-norm sets over additive maps")
    p.add_argument("--q", type=int, required=True, choices=[2, 3, 4])
    p.add_argument("--full-rows", action="store_true", help="include every map's verdict")
    _add_common(p)
    p.set_defaults(fn=cmd_scan_f)

    p = sub.add_parser("conjecture", help="1-mod-p scan against the hermitian curve")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--sample", type=int, help="sample count (omit for exhaustive)")
    _add_common(p)
    p.set_defaults(fn=cmd_conjecture)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
