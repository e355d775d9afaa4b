"""Command line interface.

Exit codes: 0 everything passed, 1 a verification failed (or a sweep found
a violation), 2 bad usage or input, unmet hypotheses, or an exceeded budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import verify
from .blowup import BudgetExceeded, Weighting, WeightingError, count_cliques_formula
from .families import (
    FamilyError,
    MultipartiteSpec,
    build_multipartite,
    build_sperner,
    chordal_corpus,
    graph_corpus,
    is_sperner_graph,
)
from .graph import Graph, GraphError, complete_graph, cycle_graph, empty_graph, path_graph, prism_graph
from .reports import dumps
from .search import (
    DEFAULT_MAX_WEIGHTINGS,
    NotChordal,
    NotMultipartite,
    SweepRow,
    brute_force_min,
    conjecture_sweep,
    minimize_chordal,
    minimize_multipartite,
    minimize_sperner,
)
from .shifting import ShiftError, ShiftSpec, apply_shift, build_injection_certificate, validate_shift

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(path: str | None) -> Graph:
    if not path:
        raise UsageError("--graph FILE is required")
    try:
        return Graph.from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_weights(text: str | None, g: Graph | None = None) -> Weighting | None:
    if text is None:
        return None
    p = Path(text)
    if not text.strip().startswith("{") and "," not in text and p.suffix == ".json" and p.exists():
        text = p.read_text()
    w = Weighting.parse(text)
    if g is not None and len(w) != g.n:
        raise UsageError(f"weighting has {len(w)} entries but graph has {g.n} vertices")
    return w


def _ints(text: str | None) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")


def _report_exit(rep) -> int:
    if not rep.hypotheses_met:
        return EXIT_USAGE
    return EXIT_OK if rep.passed else EXIT_FAIL


# subcommands


def cmd_family(args) -> int:
    kind = args.kind
    if kind == "sperner":
        _require(args, "n")
        g = build_sperner(args.n).graph
    elif kind == "multipartite":
        _require(args, "sizes")
        g = build_multipartite(MultipartiteSpec.parse(args.sizes))
    elif kind == "path":
        _require(args, "n")
        g = path_graph(args.n)
    elif kind == "cycle":
        _require(args, "n")
        g = cycle_graph(args.n)
    elif kind == "complete":
        _require(args, "n")
        g = complete_graph(args.n)
    elif kind == "empty":
        _require(args, "n")
        g = empty_graph(args.n)
    elif kind == "prism":
        g = prism_graph()
    elif kind == "corpus":
        _require(args, "n", "out")
        graphs = chordal_corpus(args.n) if args.chordal else graph_corpus(args.n, connected=args.connected)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            (outdir / f"g{i:04d}_n{g.n}.json").write_text(g.to_json() + "\n")
        sys.stdout.write(dumps({"written": len(graphs), "dir": str(outdir)}))
        return EXIT_OK
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {kind}")
    _emit(g.to_json() + "\n", args.out)
    return EXIT_OK


def cmd_shift(args) -> int:
    g = _load_graph(args.graph)
    _require(args, "weights")
    w = _load_weights(args.weights, g)
    mode = args.mode
    if args.spec:
        d = json.loads(Path(args.spec).read_text())
        spec = ShiftSpec.from_dict(d)
        mode = d.get("mode", mode)
    else:
        spec = ShiftSpec(_ints(args.A), _ints(args.B))
    ks = list(_ints(args.k)) if args.k else [2, 3]
    validation = validate_shift(g, w, spec, mode)
    out = {
        "instance": {"graph": g.digest(), "weights": list(w), "A": list(spec.a_list), "B": list(spec.b_list), "mode": mode},
        "validation": validation.to_dict(),
        "before": {str(k): str(count_cliques_formula(g, w, k)) for k in ks},
    }
    if validation.valid:
        w_new = apply_shift(w, spec)
        out["after_weights"] = list(w_new)
        out["after"] = {str(k): str(count_cliques_formula(g, w_new, k)) for k in ks}
        if args.certificate:
            out["certificates"] = {
                str(k): build_injection_certificate(g, w, spec, k, mode, args.max_blowup).to_dict() for k in ks
            }
    _emit(dumps(out), args.out)
    return EXIT_OK if validation.valid else EXIT_FAIL


def cmd_minimize(args) -> int:
    _require(args, "m", "k")
    method = args.method
    if method == "sperner" and not args.graph:
        _require(args, "n")
        b = build_sperner(args.n)
        g = b.graph
    else:
        g = _load_graph(args.graph)
        b = None
    start = _load_weights(args.weights, g)
    instance = {"graph": g.digest(), "n": g.n, "m": args.m, "k": args.k, "method": method}
    if method == "brute":
        res = brute_force_min(g, args.m, args.k, max_weightings=args.max_weightings)
        body = res.to_dict()
    elif method == "sperner":
        if b is None:
            b = is_sperner_graph(g)
            if b is None:
                raise UsageError("method 'sperner' needs a Sperner graph B_n (use `family sperner`)")
        body = minimize_sperner(b, args.m, args.k, start).to_dict()
    elif method == "multipartite":
        body = minimize_multipartite(g, None, args.m, args.k, start).to_dict()
    elif method == "chordal":
        body = minimize_chordal(g, args.m, args.k, start).to_dict()
    else:  # pragma: no cover
        raise UsageError(f"unknown method {method}")
    body["instance"] = instance
    _emit(dumps(body), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    t = args.claim
    mw = args.max_weightings
    if t == "t3":
        _require(args, "m")
        rep = verify.check_uniform_alpha_edges(_load_graph(args.graph), args.m, mw)
    elif t == "t4":
        _require(args, "n", "m", "k")
        rep = verify.check_sperner_middle(args.n, args.m, args.k, mw)
    elif t == "t5":
        _require(args, "sizes", "m", "k")
        rep = verify.check_multipartite(MultipartiteSpec.parse(args.sizes), args.m, args.k, mw)
    elif t == "t6":
        _require(args, "m", "k")
        rep = verify.check_chordal(_load_graph(args.graph), args.m, args.k, mw)
    elif t == "t8":
        _require(args, "n", "k")
        rep = verify.check_sperner_gap(args.n, args.m, args.k, args.max_blowup)
    elif t == "t9":
        _require(args, "sizes", "k")
        rep = verify.check_multipartite_gap(MultipartiteSpec.parse(args.sizes), args.m, args.k, args.max_blowup)
    elif t == "lemma1":
        _require(args, "n", "m", "k")
        rep = verify.check_edgeless_balance(args.n, args.m, args.k, mw)
    elif t == "lemma2":
        _require(args, "m", "k")
        rep = verify.check_independent_supports(_load_graph(args.graph), args.m, args.k, mw)
    elif t == "lemma3":
        _require(args, "weights", "k")
        g = _load_graph(args.graph)
        w = _load_weights(args.weights, g)
        mode = args.mode
        if args.spec:
            d = json.loads(Path(args.spec).read_text())
            spec = ShiftSpec.from_dict(d)
            mode = d.get("mode", mode)
        else:
            spec = ShiftSpec(_ints(args.A), _ints(args.B))
        rep = verify.check_shift(g, w, spec, args.k, mode, args.max_blowup)
    elif t == "lemma8":
        _require(args, "n", "r")
        rep = verify.check_level_matching(args.n, args.r, args.direction)
    else:  # pragma: no cover
        raise UsageError(f"unknown claim {t}")
    _emit(rep.to_json(), args.out)
    return _report_exit(rep)


def cmd_reproduce(args) -> int:
    rep = verify.reproduce(args.claim, k=args.k_single, m=args.m, n=args.n, max_blowup=args.max_blowup)
    _emit(rep.to_json(), args.out)
    return _report_exit(rep)


def cmd_sweep(args) -> int:
    _require(args, "corpus")
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise UsageError(f"corpus directory {corpus} does not exist")
    files = sorted(corpus.glob("*.json"))
    graphs = [Graph.from_json(f.read_text()) for f in files]
    names = [f.stem for f in files]
    report = conjecture_sweep(
        graphs,
        range(args.m_min, args.m_max + 1),
        range(args.k_min, args.k_max + 1),
        max_weightings=args.max_weightings,
        names=names,
    )
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SweepRow.CSV_FIELDS)
        for row in report.rows:
            writer.writerow(row.csv_row())
        text = buf.getvalue()
    else:
        text = dumps(report.to_dict())
    _emit(text, args.out)
    if args.format == "csv":
        sys.stderr.write(
            f"{len(report.rows)} instances, {len(report.violations)} violations, "
            f"{len(report.uniform_alpha_nonminimal)} with no minimal uniform-alpha weighting, "
            f"{len(report.skipped)} skipped\n"
        )
    return EXIT_FAIL if report.violations else EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kclique", description="k-cliques of weighted graph blow-ups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, k_list=False):
        p.add_argument("--graph", help="graph JSON file")
        p.add_argument("--weights", help="weights as '3,0,3', inline JSON, or a .json file")
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        if k_list:
            p.add_argument("--k", help="clique size(s), comma separated")
        else:
            p.add_argument("--k", type=int)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--max-weightings", type=int, default=DEFAULT_MAX_WEIGHTINGS)
        p.add_argument("--max-blowup", type=int, default=verify.DEFAULT_MAX_BLOWUP)

    p = sub.add_parser("family", help="emit a graph from a named family")
    p.add_argument("kind", choices=["sperner", "multipartite", "path", "cycle", "complete", "empty", "prism", "corpus"])
    p.add_argument("--n", type=int)
    p.add_argument("--sizes", help="part sizes, e.g. 2,1")
    p.add_argument("--connected", action="store_true", help="corpus: connected graphs only")
    p.add_argument("--chordal", action="store_true", help="corpus: chordal graphs only")
    p.add_argument("--out", help="output file (or directory for corpus)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("shift", help="validate and apply a multi-edge weight shift")
    common(p, k_list=True)
    p.add_argument("--A", help="source vertices a_1,...,a_r")
    p.add_argument("--B", help="target vertices b_1,...,b_r")
    p.add_argument("--spec", help='shift JSON {"A": [...], "B": [...], "mode": ...}')
    p.add_argument("--mode", choices=["lemma3", "lemma4"], default="lemma3")
    p.add_argument("--certificate", action="store_true", help="also build and check the clique injection")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("minimize", help="minimise pi_k over m-weightings")
    common(p)
    p.add_argument("--method", choices=["brute", "sperner", "multipartite", "chordal"], default="brute")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("verify", help="check one claim on one instance")
    p.add_argument("claim", choices=verify.VERIFY_CLAIMS)
    common(p)
    p.add_argument("--sizes", help="part sizes for t5/t9")
    p.add_argument("--r", type=int, help="source level for the level matching check")
    p.add_argument("--direction", choices=["up", "down"], default="up")
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--spec")
    p.add_argument("--mode", choices=["lemma3", "lemma4"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="recompute a worked example")
    p.add_argument("claim", choices=verify.REPRODUCE_CLAIMS)
    p.add_argument("--k", dest="k_single", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.add_argument("--max-blowup", type=int, default=verify.DEFAULT_MAX_BLOWUP)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("sweep", help="conjecture sweep over a directory of graph files")
    p.add_argument("--corpus", help="directory of graph JSON files")
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=6)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.add_argument("--max-weightings", type=int, default=DEFAULT_MAX_WEIGHTINGS)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GraphError, WeightingError, FamilyError, ShiftError, NotChordal, NotMultipartite,
            verify.UnknownClaim, json.JSONDecodeError, OSError, IndexError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: budget exceeded: {exc} (required {exc.required})\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
