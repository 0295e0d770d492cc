"""Command line front end.

    cgrefine gen --graph K7 --source random --seed 42 --out k7.json
    cgrefine verify k7.json
    cgrefine census k6.json
    cgrefine batch --graph K6 --trials 200 --seed 7
    cgrefine search --seed 0 --budget 5000

Exit codes: 0 success, 1 I/O or internal error, 2 usage error, 3 a
mathematical identity or census claim failed (a pipeline bug, not bad data).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .errors import CGError
from .geometry import (
    SpatialEmbedding,
    dumps,
    embedding_from_dict,
    graph_by_name,
    moment_curve_embedding,
    random_polyline,
    random_rectilinear,
    validate_embedding,
    generic_projection,
)
from .graphs import D4Graph, LabeledK5, LabeledK33, complete_bipartite_33
from .invariants import alpha_omega, d4_linking_numbers, simon_invariant
from .theorems import (
    IdentityReport,
    all_identities,
    census,
    invariant_report,
    report_json,
    search_minimal_k7,
)

EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2, 3
GRAPHS = ("K5", "K33", "K6", "K7", "D4")


class UsageError(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get("CGREFINE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CGREFINE_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise UsageError("CGREFINE_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> SpatialEmbedding:
    try:
        with open(path) as fh:
            data = json.load(fh)
        e = embedding_from_dict(data)
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise OSError(f"cannot read embedding {path}: {exc}") from exc
    rep = validate_embedding(e)
    if not rep.ok:
        raise OSError(f"{path} is not an embedding: {list(rep.violations)[:5]}")
    return e


# ------------------------------------------------------------------ gen


def make_embedding(graph: str, source: str, seed: int, span: int) -> SpatialEmbedding:
    g = graph_by_name(graph)
    if source == "moment":
        if graph == "D4":
            raise UsageError("the moment curve has no doubled edges; use --source random for D4")
        if graph == "K33":
            base = moment_curve_embedding(6)
            return SpatialEmbedding(complete_bipartite_33(), base.vertex_pos)
        return moment_curve_embedding(g.n)
    if graph == "D4":
        return random_polyline(D4Graph(), seed, span=min(span, 50), bends=(1, 3))
    return random_rectilinear(g, seed, span)


def cmd_gen(a) -> int:
    e = make_embedding(a.graph, a.source, a.seed, a.span)
    rep = validate_embedding(e)
    _emit(dumps(e), a.out)
    state = "ok" if rep.ok else f"INVALID {list(rep.violations)[:3]}"
    print(f"{a.graph} {a.source} seed={a.seed}: {state}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_IO


# --------------------------------------------------------------- verify


def small_graph_checks(e: SpatialEmbedding, seed: int) -> list[IdentityReport]:
    p = generic_projection(e, seed)
    name = e.graph.name
    if name == "D4":
        l1, l2 = d4_linking_numbers(p)
        a = alpha_omega(p, "D4")
        return [IdentityReport("d4-alpha-lk", abs(a), abs(l1 * l2), {"alpha": a, "lk": [l1, l2]})]
    lab = LabeledK5((1, 2, 3, 4, 5)) if name == "K5" else LabeledK33((1, 2, 3, 4, 5, 6))
    L = simon_invariant(p, lab)
    a = alpha_omega(p, lab)
    return [
        IdentityReport(f"{name.lower()}-simon-alpha", L * L, 8 * a + 1, {"simon": L, "alpha": a}),
        IdentityReport(f"{name.lower()}-simon-odd", L % 2, 1, {"simon": L}),
    ]


def verify_embedding(e: SpatialEmbedding, proj_seed: int):
    """(report or None, identity reports) for any supported graph."""
    if e.graph.name in ("K6", "K7"):
        r = invariant_report(e, proj_seed)
        return r, all_identities(r, e, proj_seed)
    return None, small_graph_checks(e, proj_seed)


def cmd_verify(a) -> int:
    e = _load(a.file)
    r, ids = verify_embedding(e, a.proj_seed)
    ok = all(x.holds for x in ids)
    if a.format == "csv":
        if r is None:
            raise UsageError("CSV output covers the K6/K7 cycle tables only")
        _emit(r.to_csv(), a.out)
    elif a.format == "text":
        lines = [f"{x.to_dict()['identity']}: lhs={x.to_dict().get('lhs')} rhs={x.to_dict().get('rhs')} "
                 f"{'holds' if x.holds else 'FAILS'}" for x in ids]
        _emit("\n".join(lines) + "\n", a.out)
    else:
        doc = {"graph": e.graph.name, "holds": ok, "identities": [x.to_dict() for x in ids]}
        _emit(report_json(doc), a.out)
    if not ok:
        for x in ids:
            if not x.holds:
                print(f"identity violated: {json.dumps(x.to_dict(), sort_keys=True)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


# --------------------------------------------------------------- census


def cmd_census(a) -> int:
    e = _load(a.file)
    if e.graph.name not in ("K6", "K7"):
        raise UsageError("census covers rectilinear K6 and K7 embeddings")
    if not e.rectilinear:
        raise UsageError("census needs a rectilinear embedding (stick bounds)")
    r = invariant_report(e, a.proj_seed)
    c = census(r)
    if a.format == "csv":
        _emit(r.to_csv(), a.out)
    else:
        _emit(report_json(c.to_dict()), a.out)
    if e.graph.name == "K6":
        print(f"case ({c.case[0]},{c.case[1]})", file=sys.stderr)
    else:
        print(f"sum a2 over 7-cycles = {c.sum_a2_gamma7}; hopf {c.n43_hopf}+{c.n33_hopf}, "
              f"(2,4)-torus {c.n43_torus24}", file=sys.stderr)
    return EXIT_OK if c.holds else EXIT_VIOLATION


# ---------------------------------------------------------------- batch


def run_trial(graph: str, seed: int, span: int, proj_seed: int) -> dict:
    """Generate, verify and census one seeded rectilinear embedding."""
    out = {"seed": seed}
    try:
        e = make_embedding(graph, "random", seed, span)
        r, ids = verify_embedding(e, proj_seed)
        out["failed"] = [x.to_dict() for x in ids if not x.holds]
        if r is not None:
            c = census(r)
            out["census"] = c.to_dict()
            if not c.holds:
                out["failed"].append({"identity": "census", **c.to_dict()})
    except CGError as exc:
        out["failed"] = [{"identity": "error", "error": f"{type(exc).__name__}: {exc}"}]
    return out


def cmd_batch(a) -> int:
    if a.trials < 1:
        raise UsageError("--trials must be at least 1")
    seeds = list(range(a.seed, a.seed + a.trials))
    workers = _threads()
    args = [(a.graph, s, a.span, a.proj_seed) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_trial, *zip(*args)))
    else:
        results = [run_trial(*x) for x in args]
    results.sort(key=lambda x: x["seed"])
    freq: dict = {}
    for res in results:
        c = res.get("census")
        if c is None:
            continue
        key = f"({c['case'][0]},{c['case'][1]})" if a.graph == "K6" else str(c["sum_a2_gamma7"])
        freq[key] = freq.get(key, 0) + 1
    failures = [res for res in results if res["failed"]]
    doc = {
        "graph": a.graph,
        "trials": a.trials,
        "first_seed": a.seed,
        "span": a.span,
        "frequencies": freq,
        "failures": failures,
        "holds": not failures,
    }
    _emit(report_json(doc), a.out)
    for f in failures:
        print(f"seed {f['seed']} failed: {f['failed'][0].get('identity')}", file=sys.stderr)
    return EXIT_OK if not failures else EXIT_VIOLATION


# --------------------------------------------------------------- search


def cmd_search(a) -> int:
    if a.budget < 1:
        raise UsageError("--budget must be at least 1")
    found = search_minimal_k7(a.seed, a.budget, a.span)
    if found is None:
        _emit(report_json({"found": False, "budget": a.budget, "seed": a.seed}), a.out)
        return EXIT_OK
    e, trial = found
    r = invariant_report(e, a.proj_seed)
    c = census(r)
    doc = {"found": True, "trial": trial, "census": c.to_dict(), "embedding": json.loads(dumps(e))}
    _emit(report_json(doc), a.out)
    print(f"found at trial {trial}: hopf {c.n43_hopf}+{c.n33_hopf}, torus {c.n43_torus24}", file=sys.stderr)
    return EXIT_OK if c.holds else EXIT_VIOLATION


# ----------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cgrefine", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True):
        if graph:
            sp.add_argument("--graph", choices=GRAPHS, required=True)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--span", type=int, default=1000)
        sp.add_argument("--proj-seed", type=int, default=0)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--out")

    g = sub.add_parser("gen", help="write an embedding as JSON")
    common(g)
    g.add_argument("--source", choices=("moment", "random"), default="moment")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check every applicable identity")
    v.add_argument("file")
    common(v, graph=False)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="classify knots and links of a rectilinear K6/K7")
    c.add_argument("file")
    common(c, graph=False)
    c.set_defaults(func=cmd_census)

    b = sub.add_parser("batch", help="gen + verify + census over consecutive seeds")
    common(b)
    b.add_argument("--trials", type=int, default=1)
    b.set_defaults(func=cmd_batch)

    s = sub.add_parser("search", help="look for a K7 whose 7-cycles have a2 summing to 1")
    common(s, graph=False)
    s.add_argument("--budget", type=int, default=5000)
    s.set_defaults(func=cmd_search, span=30)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.span < 8:
        parser.error("--span must be at least 8")
    try:
        return a.func(a)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CGError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
