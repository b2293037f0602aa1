"""
Command-line front end.

Exit status: 0 when every check passes, 1 when a verification fails,
2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import report as grid
from .errors import KakeyaError
from .fmt import decimal6, ratio, rational_json
from .geometry import Line
from .gf import field_new
from .kakeya import (
    LineSelection,
    PointSet,
    bounds,
    construct_almost_kakeya_odd,
    is_almost_kakeya,
    is_kakeya,
    minimal_kakeya_2d,
    recursive_construction,
)
from .poly import Polynomial, schwartz_zippel_audit
from .proofcheck import (
    dim_v_closed_form,
    disjoint_union_identity,
    monomial_set_3d,
    monomial_set_general,
    polytope_count,
    polytope_volume_exact,
    theorem_inequality_audit,
    verify_lemma_3dim,
    verify_zero_lemma,
    PolytopeRegion,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output -----------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return rational_json(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _text_lines(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _text_lines(v, f"{prefix}{k}.")
        return
    key = prefix[:-1]
    if isinstance(obj, Fraction):
        yield f"{key}: {ratio(obj)} = {decimal6(obj)}"
    elif isinstance(obj, list) and obj and isinstance(obj[0], (list, dict)):
        yield f"{key}: {json.dumps(_jsonable(obj))}"
    else:
        yield f"{key}: {json.dumps(_jsonable(obj)) if isinstance(obj, (list, tuple)) else obj}"


def render(payload: dict, fmt: str, csv_rows=None) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(payload), indent=2) + "\n"
    if fmt == "csv":
        if csv_rows is None:
            raise UsageError("csv output is only available for tables")
        return csv_rows
    return "\n".join(_text_lines(payload)) + "\n"


def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------

def bounds_csv(rep) -> str:
    lines = ["q,n,bound_name,numerator,denominator,decimal"]
    for name, v in rep.rows():
        lines.append(f"{rep.q},{rep.n},{name},{v.numerator},{v.denominator},{decimal6(v)}")
    return "\n".join(lines) + "\n"


def cmd_bounds(args) -> int:
    rep = bounds(args.q, args.n)
    payload = {"q": rep.q, "n": rep.n, **{name: v for name, v in rep.rows()}}
    emit(render(payload, args.format, bounds_csv(rep)), args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    f = field_new(args.q)
    rep = bounds(args.q, args.n)
    payload: dict = {"kind": args.kind, "q": args.q, "n": args.n}
    if args.kind == "almost":
        K, L = construct_almost_kakeya_odd(f, args.n)
        verified = is_almost_kakeya(K).ok
        payload["size"] = len(K)
        payload["verified"] = verified
    else:
        rec = recursive_construction(f, args.n, args.strategy, args.seed, args.trials)
        K, L = rec.set, None
        verified = is_kakeya(K).ok
        payload.update({"strategy": args.strategy, "seed": args.seed,
                        "size": len(K), "verified": verified,
                        "shift": list(rec.shift) if rec.shift else None,
                        "expectation": rec.expectation,
                        "dkss_bound": rep.dkss_bound})
    payload["bound"] = rep.new_bound
    payload["slack"] = len(K) - rep.new_bound
    payload["set"] = K.to_json()
    if L is not None:
        payload["lines"] = L.to_json()
    emit(render(payload, args.format), args.out)
    return EXIT_OK if verified else EXIT_FAIL


def _load_set(path: str) -> tuple[PointSet, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        body = data["set"] if "set" in data else data
        return PointSet.from_json(body), data
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read point set from {path}: {exc}") from exc


def cmd_verify(args) -> int:
    K, data = _load_set(args.file)
    k = is_kakeya(K)
    a = is_almost_kakeya(K)
    require = args.require or ("almost" if data.get("kind") == "almost" else "kakeya")
    payload = {
        "q": K.field.q, "n": K.n, "size": len(K),
        "kakeya": k.ok, "kakeya_failing_direction": list(k.failing_direction) if k.failing_direction else None,
        "almost_kakeya": a.ok, "almost_failing_direction": list(a.failing_direction) if a.failing_direction else None,
        "require": require,
    }
    if "lines" in data:
        try:
            L = LineSelection.from_json(K.field, data["lines"])
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad line selection: {exc}") from exc
        payload["witness_lines_contained"] = all(p in K for l in L for p in l.points())
    emit(render(payload, args.format), args.out)
    passed = k.ok if require == "kakeya" else a.ok
    return EXIT_OK if passed else EXIT_FAIL


def _maybe_emit_matrix(args, system):
    if getattr(args, "emit_matrix", None):
        with open(args.emit_matrix, "w", encoding="utf-8") as fh:
            fh.write(system.to_text())


def audit_lemma3(args):
    f = field_new(args.q)
    if args.set:
        K, _ = _load_set(args.set)
    elif args.recursive:
        K = recursive_construction(f, 3).set
    else:
        K = PointSet.full_space(f, 3)
    rep = verify_lemma_3dim(K)
    _maybe_emit_matrix(args, rep.system)
    payload = {"q": K.field.q, "size": len(K), "basis_size": rep.basis_size, "rows": rep.n_rows,
               "rank": rep.rank, "kernel_dim": rep.kernel_dim, **rep.checks}
    return payload, rep.ok and all(rep.checks.values())


def audit_zerolemma(args):
    f = field_new(args.q)
    r = args.r if args.r is not None else args.q
    L = None
    if args.set:
        K, data = _load_set(args.set)
        if "lines" in data:
            L = LineSelection.from_json(K.field, data["lines"])
    elif args.almost:
        K, L = construct_almost_kakeya_odd(f, args.n)
    else:
        K = PointSet.full_space(f, args.n)
    rep = verify_zero_lemma(K, L, r)
    _maybe_emit_matrix(args, rep.system)
    payload = {"q": K.field.q, "n": K.n, "r": r, "size": len(K), "basis_size": rep.basis_size,
               "rows": rep.n_rows, "rank": rep.rank, "kernel_dim": rep.kernel_dim, **rep.checks}
    checks_ok = all(v for k, v in rep.checks.items() if isinstance(v, bool))
    return payload, rep.ok and checks_ok


def audit_polytopes(args):
    r = args.r if args.r is not None else args.q
    ident = disjoint_union_identity(args.n, args.q, r)
    vols = {name: polytope_volume_exact(name, args.n, args.q) for name in ident.counts}
    vol_identity = vols["parallelogramoid"] == vols["cylinder"] - vols["simplex1"] + vols["simplex2"]
    density = Fraction(polytope_count(PolytopeRegion("parallelogramoid", args.n, args.q), r), r ** args.n)
    payload = {"n": args.n, "q": args.q, "r": r, "counts": ident.counts,
               "disjoint_union_identity": ident.ok, "volumes": vols,
               "volume_identity": vol_identity, "density": density,
               "density_error": abs(density - vols["parallelogramoid"])}
    return payload, ident.ok and vol_identity


def audit_dimv(args):
    payload: dict = {"n": args.n, "q": args.q}
    ok = True
    if args.n == 3:
        size = len(monomial_set_3d(args.q))
        payload["dim3_enumerated"] = size
        payload["dim3_closed_form"] = args.q ** 3 + args.q ** 2
        ok &= size == args.q ** 3 + args.q ** 2
    rs = [args.r] if args.r is not None else [args.q, 2 * args.q]
    for r in rs:
        size = len(monomial_set_general(args.n, args.q, r))
        closed = dim_v_closed_form(args.n, args.q, r)
        payload[f"r={r}"] = {"enumerated": size, "closed_form": closed}
        ok &= size == closed
    return payload, ok


def audit_minimal2d(args):
    m = minimal_kakeya_2d(field_new(args.q))
    sharp = bounds(args.q, 2).sharp_2d
    payload = {"q": args.q, "minimum": m.size, "sharp_bound": sharp, "example": m.example.to_json()}
    return payload, m.size == sharp and is_kakeya(m.example).ok


def audit_inequality(args):
    a = theorem_inequality_audit(args.q, args.n)
    payload = {"q": args.q, "n": args.n, "threshold": a.threshold, "agree": a.ok,
               "samples": [[ratio(x), o, r] for x, o, r in a.samples]}
    return payload, a.ok


AUDITS = {
    "lemma3": audit_lemma3,
    "zerolemma": audit_zerolemma,
    "polytopes": audit_polytopes,
    "dimv": audit_dimv,
    "minimal2d": audit_minimal2d,
    "inequality": audit_inequality,
}


def cmd_audit(args) -> int:
    payload, ok = AUDITS[args.which](args)
    payload["pass"] = bool(ok)
    emit(render(payload, args.format), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_vector(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc


def cmd_poly(args) -> int:
    f = field_new(args.q)
    P = Polynomial.from_text(f, args.poly, args.nvars)
    payload: dict = {"q": args.q, "poly": P.to_text(), "degree": P.degree if not P.is_zero() else None}
    ok = True
    if args.action == "eval":
        payload["value"] = P.evaluate(_parse_vector(args.point))
    elif args.action == "hasse":
        payload["derivative"] = P.hasse_derivative(_parse_vector(args.index)).to_text()
    elif args.action == "mult":
        m = P.multiplicity(_parse_vector(args.point))
        payload["multiplicity"] = "inf" if m == float("inf") else m
        if args.line:
            base, _, direction = args.line.partition(":")
            line = Line(f, _parse_vector(base), _parse_vector(direction))
            ml = P.mult_along_line(line, _parse_vector(args.point))
            payload["mult_along_line"] = "inf" if ml == float("inf") else ml
            ok = ml >= m
    else:
        S = sorted(_parse_vector(args.subset)) if args.subset else list(f.elements())
        audit = schwartz_zippel_audit(P, S)
        payload.update({"sum": audit.sum, "bound": audit.bound, "ok": audit.ok})
        ok = audit.ok
    emit(render(payload, args.format), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_report(args) -> int:
    if not args.all:
        raise UsageError("report currently requires --all")
    rows = grid.run_grid(args.qmax, args.nmax)
    if args.format == "json":
        text = json.dumps([dict(zip(grid.HEADER, r)) for r in rows], indent=2) + "\n"
    else:
        text = grid.to_csv(rows)
    emit(text, args.out)
    return EXIT_OK if all(r[-1] == "1" for r in rows) else EXIT_FAIL


# -- argument parsing ------------------------------------------------------------

def _add_output(p, formats=("json", "text"), default="json"):
    p.add_argument("--format", choices=formats, default=default, help=f"output format (default {default})")
    p.add_argument("--out", metavar="FILE", help="write to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqkakeya",
        description="Kakeya sets over finite fields: constructions, bounds and proof checks.",
        epilog="Environment: KAKEYA_THREADS caps worker processes for `report` (default 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="size bounds for Kakeya sets in F_q^n")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output(p, ("json", "csv", "text"), "text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build and self-verify an (almost) Kakeya set")
    p.add_argument("--kind", choices=("almost", "kakeya"), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=("exhaustive", "sampled"), default="exhaustive",
                   help="shift search for --kind kakeya (default exhaustive)")
    p.add_argument("--seed", type=int, default=0, help="seed for --strategy sampled (default 0)")
    p.add_argument("--trials", type=int, default=64, help="shifts tried by --strategy sampled (default 64)")
    _add_output(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a point-set JSON file")
    p.add_argument("file")
    p.add_argument("--require", choices=("kakeya", "almost"),
                   help="property needed for exit 0 (default: the file's kind, else kakeya)")
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("audit", help="run one proof-machinery check")
    p.add_argument("which", choices=sorted(AUDITS))
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--r", type=int, default=None, help="vanishing order scale (default q)")
    p.add_argument("--set", metavar="FILE", help="point-set JSON (lemma3, zerolemma)")
    p.add_argument("--recursive", action="store_true", help="lemma3: use the recursive Kakeya set")
    p.add_argument("--almost", action="store_true", help="zerolemma: use the almost-Kakeya construction")
    p.add_argument("--emit-matrix", metavar="FILE", help="dump the condition matrix (lemma3, zerolemma)")
    _add_output(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("poly", help="evaluate, differentiate or audit a polynomial")
    p.add_argument("action", choices=("eval", "hasse", "mult", "sz"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--poly", required=True, help="e.g. '3*x1^2*x2+x3+1'")
    p.add_argument("--nvars", type=int, default=None)
    p.add_argument("--point", help="comma-separated coordinates")
    p.add_argument("--index", help="comma-separated Hasse multi-index")
    p.add_argument("--line", help="base:dir, each comma-separated (mult)")
    p.add_argument("--subset", help="comma-separated S for sz (default all of F_q)")
    _add_output(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("report", help="run the whole reproduction grid")
    p.add_argument("--all", action="store_true")
    p.add_argument("--qmax", type=int, default=5)
    p.add_argument("--nmax", type=int, default=3)
    _add_output(p, ("csv", "json"), "csv")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "poly":
        needed = {"eval": "point", "hasse": "index", "mult": "point"}.get(args.action)
        if needed and getattr(args, needed) is None:
            parser.error(f"poly {args.action} needs --{needed}")
    try:
        return args.func(args)
    except (UsageError, KakeyaError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
