"""``qplab`` command line.

Reports go to stdout as canonical JSON (sorted keys); one-line summaries go
to stderr.  Exit codes: 0 ok, 1 parse or usage error, 2 invalid or
unsuitable drawing, 3 no crossings, 4 duplicate x-coordinates, 5 missing
constant or unknown formula, 6 size limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, docio, drawing, dsseq, lab, pipeline
from ._json import dumps, jsonable
from .errors import (CoincidentCrossing, DocumentError, DuplicateX, InvalidDrawing, InvalidK,
                     MissingConstant, NoCrossings, OrderViolation, QplabError, RetryBudget,
                     SizeLimit)

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_NO_CROSSINGS, EXIT_DUPLICATE_X = 0, 1, 2, 3, 4
EXIT_MISSING_CONSTANT, EXIT_SIZE_LIMIT = 5, 6
DEFAULT_K = 3
GOLDEN_PATH = Path(__file__).resolve().parents[2] / "tests" / "data" / "extremal_golden.json"

_EXIT_FOR = [
    (DocumentError, EXIT_PARSE),
    (InvalidDrawing, EXIT_INVALID),
    (NoCrossings, EXIT_NO_CROSSINGS),
    (DuplicateX, EXIT_DUPLICATE_X),
    (MissingConstant, EXIT_MISSING_CONSTANT),
    (SizeLimit, EXIT_SIZE_LIMIT),
    (CoincidentCrossing, EXIT_INVALID),
    (OrderViolation, EXIT_INVALID),
    (RetryBudget, EXIT_INVALID),
    (InvalidK, EXIT_PARSE),
]


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_valid(path):
    d = docio.load_drawing(path)
    d.ensure_valid()
    return d


def _find_edge(d, u: int, v: int) -> int:
    for i, e in enumerate(d.edges):
        if {e.u, e.v} == {u, v}:
            return i
    raise UsageError(f"no edge between vertices {u} and {v}")


def _parse_detect(spec: str):
    kind, _, args = spec.partition(":")
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise UsageError(f"bad --detect value {spec!r}") from None
    if kind == "up" and len(nums) == 2:
        return "up", nums[0], nums[1]
    if kind == "udu" and len(nums) == 1:
        return "udu", nums[0], None
    raise UsageError(f"bad --detect value {spec!r}; use up:l,t or udu:l")


def _parse_int(text: str) -> int:
    """Integer or power written as ``2^e``."""
    text = text.strip()
    try:
        if "^" in text:
            base, exp = text.split("^")
            return int(base) ** int(exp)
        return int(text)
    except ValueError:
        raise UsageError(f"bad integer {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_parse_int(t) for t in text.split(",") if t.strip()]


# -- commands -----------------------------------------------------------------

def cmd_validate(args) -> int:
    d = docio.load_drawing(args.path)
    rep = d.report
    _emit(rep)
    if rep.valid:
        _say(f"valid: {d.n} vertices, {d.m} edges, simple={rep.simple}, x-monotone={rep.x_monotone}")
        return EXIT_OK
    _say(f"invalid: {len(rep.violations)} violation(s): "
         + ", ".join(sorted({v.kind for v in rep.violations})))
    return EXIT_INVALID


def cmd_analyze(args) -> int:
    d = _load_valid(args.path)
    k = DEFAULT_K if args.k is None else args.k
    size, witness = drawing.max_pairwise_crossing(d)
    quasi, qwit = drawing.is_k_quasiplanar(d, k)
    out = {
        "k": k,
        "k_is_default": args.k is None,
        "n": d.n,
        "edges": d.m,
        "simple": d.report.simple,
        "x_monotone": d.report.x_monotone,
        "crossing_count": drawing.crossing_count(d),
        "max_pairwise_crossing": {"size": size, "witness": list(witness)},
        "quasiplanar": quasi,
        "quasiplanar_witness": qwit,
        "bisection_report": None,
    }
    if 2 <= d.n <= args.bisection_limit:
        out["bisection_report"] = drawing.check_bisection_inequality(d, limit=args.bisection_limit)
    else:
        out["bisection_skipped"] = f"n={d.n} outside [2, {args.bisection_limit}]"
    _emit(out)
    _say(f"crossings={out['crossing_count']} max clique={size} {k}-quasi-planar={quasi}")
    return EXIT_OK


def cmd_sequences(args) -> int:
    d = _load_valid(args.path)
    if args.auto:
        edge, _ = pipeline.heaviest_edge(d)
    elif args.edge:
        edge = _find_edge(d, *args.edge)
    else:
        raise UsageError("give --edge U V or --auto")
    detects = [_parse_detect(s) for s in args.detect]
    seqs = pipeline.build_crossing_sequences(d, edge, reverse=args.reverse)
    tr = seqs.traversal
    out = {
        "edge": {"index": edge, "from": tr.u, "to": tr.v},
        "S1": list(seqs.s1),
        "S2": list(seqs.s2),
        "traversal": [{"edge": t.edge, "endpoints": [d.edges[t.edge].u, d.edges[t.edge].v],
                       "location": t.location, "left": t.left, "right": t.right}
                      for t in tr.entries],
    }
    if args.check_regular:
        out["regular"] = [pipeline.check_lemma_regular(seqs.s1, seqs.s2, l, args.mode)
                          for l in args.check_regular]
    if detects:
        found = []
        for kind, l, t in detects:
            for name, s in (("S1", seqs.s1), ("S2", seqs.s2)):
                if kind == "up":
                    occ = dsseq.contains_up(s, l, t, args.mode)
                else:
                    occ = dsseq.contains_up_down_up(s, l, args.mode)
                found.append({"pattern": f"{kind}:{l}" + (f",{t}" if t is not None else ""),
                              "sequence": name, "occurrence": occ})
        out["detect"] = found
    if args.forbidden_up is not None:
        out["forbidden_up"] = pipeline.check_forbidden_up(d, edge, args.forbidden_up)
    _emit(out)
    _say(f"edge {edge} ({tr.u}->{tr.v}): {len(seqs.s1)} crossings")
    return EXIT_OK


def cmd_xmono(args) -> int:
    d = _load_valid(args.path)
    if not all(e.curve.is_x_monotone() for e in d.edges):
        _emit({"error": "not-x-monotone", "message": "every edge must be x-monotone"})
        _say("error: every edge must be x-monotone")
        return EXIT_INVALID
    rep = pipeline.check_forbidden_udu(d, args.k, explore_l=args.explore_l)
    out = jsonable(rep)
    out["retention"] = {"E_cross": rep.split["E_cross"], "retained": len(rep.right.retained),
                        "required": rep.retention_required, "ok": rep.retention_ok}
    _emit(out)
    _say(f"E'={rep.split['E_cross']} retained={len(rep.right.retained)} "
         f"(need {rep.retention_required}) up-down-up({rep.l}): {rep.status}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    formulas = args.formulas.split(",") if args.formulas else sorted(bounds.FORMULAS)
    ks, ns = _int_list(args.k), _int_list(args.n)
    rows = bounds.bounds_table(formulas, ks, ns)
    text = bounds.table_csv(rows)
    ledger = bounds.DEFAULT_CONSTANTS.to_json()
    if args.out:
        Path(args.out).write_text(text)
        _emit({"constants": ledger, "rows": len(rows), "out": args.out})
    else:
        sys.stdout.write(text)
        _say("constants: " + json.dumps(ledger, sort_keys=True))
    _say(f"{len(rows)} row(s), logs base 2")
    return EXIT_OK


def _read_points(path):
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read points from {path}: {exc}") from None
    if isinstance(raw, dict):
        raw = raw.get("points")
    if not isinstance(raw, list) or not all(isinstance(p, list) and len(p) == 2 for p in raw):
        raise DocumentError("points: expected a list of [x, y] pairs")
    try:
        return lab.parse_points(raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise DocumentError(f"points: {exc}") from None


def update_golden(record: dict, path: Path = GOLDEN_PATH) -> None:
    data = json.loads(path.read_text()) if path.exists() else {"records": []}
    recs = [r for r in data["records"] if r["name"] != record["name"] or r["k"] != record["k"]]
    recs.append(record)
    recs.sort(key=lambda r: (r["name"], r["k"]))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"records": recs}, sort_keys=True, indent=2) + "\n")


def cmd_extremal(args) -> int:
    if args.convex is not None:
        if args.convex > args.limit:
            raise SizeLimit(f"extremal search limited to {args.limit} points, got {args.convex}")
        pts, name = lab.convex_points(args.convex), f"convex{args.convex}"
    elif args.points:
        pts, name = _read_points(args.points), Path(args.points).stem
    else:
        raise UsageError("give --points FILE or --convex N")
    try:
        res = lab.extremal_max_edges(pts, args.k, limit=args.limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = {"name": args.name or name, **res.to_json()}
    if args.update_golden:
        target = Path(args.golden_file) if args.golden_file else GOLDEN_PATH
        update_golden(record, target)
        _say(f"golden record {record['name']} k={args.k} written to {target}")
    _emit(record)
    _say(f"{len(pts)} points, k={args.k}: max_edges={res.max_edges}")
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = lab.GeneratorSpec(args.kind, n=args.n, seed=args.seed, coord_range=args.coord_range,
                             edge_prob=args.edge_prob, name=args.name)
    try:
        d = lab.generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.quasiplanar is not None:
        d = lab.make_k_quasiplanar(d, args.quasiplanar)
    if args.out:
        docio.save_drawing(d, args.out)
        _say(f"wrote {args.out}")
    else:
        sys.stdout.write(docio.dumps_document(d) + "\n")
    _say(f"{args.kind}: {d.n} vertices, {d.m} edges")
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qplab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a drawing document")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("analyze", help="crossings, quasi-planarity and bisection of a drawing")
    s.add_argument("path")
    s.add_argument("--k", type=int, default=None, help=f"clique size to forbid (default {DEFAULT_K})")
    s.add_argument("--bisection-limit", type=int, default=drawing.DEFAULT_BISECTION_LIMIT)
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("sequences", help="left/right endpoint sequences along a crossed edge")
    s.add_argument("path")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--edge", nargs=2, type=int, metavar=("U", "V"))
    g.add_argument("--auto", action="store_true", help="use the most crossed edge")
    s.add_argument("--reverse", action="store_true", help="walk the edge from its higher vertex id")
    s.add_argument("--check-regular", type=int, action="append", default=[], metavar="L")
    s.add_argument("--detect", action="append", default=[], metavar="up:L,T|udu:L")
    s.add_argument("--mode", choices=("exact", "greedy"), default="exact")
    s.add_argument("--forbidden-up", type=int, default=None, metavar="K")
    s.set_defaults(func=cmd_sequences)

    s = sub.add_parser("xmono", help="vertical-split pipeline on an x-monotone drawing")
    s.add_argument("path")
    s.add_argument("--k", type=int, default=DEFAULT_K)
    s.add_argument("--explore-l", type=int, default=None)
    s.set_defaults(func=cmd_xmono)

    s = sub.add_parser("bounds", help="tabulate edge-count bounds as CSV")
    s.add_argument("--k", default="5", help="comma list, e.g. 5,6")
    s.add_argument("--n", default="2^10,2^20", help="comma list; 2^e allowed")
    s.add_argument("--formulas", default=None, help=f"comma list from {','.join(sorted(bounds.FORMULAS))}")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("extremal", help="most straight edges on a point set with no k pairwise crossing")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--points", default=None, help="JSON list of [x, y] pairs")
    g.add_argument("--convex", type=int, default=None, metavar="N")
    s.add_argument("--k", type=int, default=DEFAULT_K)
    s.add_argument("--limit", type=int, default=lab.DEFAULT_EXTREMAL_LIMIT)
    s.add_argument("--name", default=None)
    s.add_argument("--update-golden", action="store_true")
    s.add_argument("--golden-file", default=None)
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("generate", help="deterministic test drawings")
    s.add_argument("--kind", choices=lab.KINDS, default="random-geometric")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--coord-range", type=int, default=100)
    s.add_argument("--edge-prob", type=float, default=0.5)
    s.add_argument("--name", default="figure1", help="figure fixture name")
    s.add_argument("--quasiplanar", type=int, default=None, metavar="K",
                   help="drop edges until no K pairwise cross")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, QplabError) as exc:
        code = EXIT_PARSE
        for cls, c in _EXIT_FOR:
            if isinstance(exc, cls):
                code = c
                break
        out = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, InvalidDrawing):
            out["violations"] = exc.violations
        _emit(out)
        _say(f"error: {exc}")
        return code


if __name__ == "__main__":
    sys.exit(main())
