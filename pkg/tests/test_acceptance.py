"""End-to-end acceptance sweep.

Every check is an exact integer comparison.  Each test records a one-line
verdict that the terminal summary prints as ``criterion N: PASS/FAIL``.
"""

import json
import time

import pytest

from cgrefine import cli
from cgrefine.diagram import diagram_for_walks
from cgrefine.geometry import generic_projection, load, moment_curve_embedding, random_rectilinear
from cgrefine.graphs import (
    LabeledK5,
    LabeledK33,
    complete_bipartite_33,
    complete_graph,
    cycles_of_length,
    disjoint_cycle_pairs,
    k5_subgraphs_of_k6,
    k33_subgraphs_of_k6,
)
from cgrefine.invariants import (
    alpha_omega,
    conway_a2_skein,
    conway_skein,
    d4_linking_numbers,
    simon_invariant,
)
from cgrefine.theorems import (
    census,
    invariant_report,
    verify_fm_bounds,
    verify_k6_parity,
    verify_k7_lemma,
    verify_k7_parity,
    verify_main1,
    verify_main2,
    verify_main3,
    verify_simon_lemma,
)

from conftest import ACCEPTANCE, FIXTURES

K6_SEEDS = range(7, 207)  # 200 trials, first seed 7
K7_SEEDS = range(25)
SMALL_SEEDS = range(100)


def record(n, ok, detail):
    ACCEPTANCE[n] = (bool(ok), detail)
    assert ok, f"criterion {n}: {detail}"


def _process(e):
    """Reports along two projection directions; the first is timed."""
    t = time.perf_counter()
    r = invariant_report(e, 0)
    c = census(r) if e.rectilinear else None
    elapsed = time.perf_counter() - t
    r2 = invariant_report(e, 1)
    return {"e": e, "r": r, "r2": r2, "census": c, "time": elapsed}


@pytest.fixture(scope="module")
def k6_runs():
    t = time.perf_counter()
    runs = [_process(moment_curve_embedding(6))]
    runs += [_process(random_rectilinear(6, s)) for s in K6_SEEDS]
    return runs, time.perf_counter() - t


@pytest.fixture(scope="module")
def k6_polyline():
    return [_process(load(p)) for p in sorted(FIXTURES.glob("k6_*.json"))]


@pytest.fixture(scope="module")
def k7_runs():
    runs = [_process(moment_curve_embedding(7))]
    runs += [_process(random_rectilinear(7, s)) for s in K7_SEEDS]
    return runs


def _small_graph_cases():
    """(name, embedding, labeled subgraph) for criterion 5."""
    lab5, lab33 = LabeledK5((1, 2, 3, 4, 5)), LabeledK33((1, 2, 3, 4, 5, 6))
    out = [(f"K5 seed {s}", random_rectilinear(5, s), lab5) for s in SMALL_SEEDS]
    out += [(f"K33 seed {s}", random_rectilinear(complete_bipartite_33(), s), lab33) for s in SMALL_SEEDS]
    out += [(p.name, load(p), lab5) for p in sorted(FIXTURES.glob("k5_*.json"))]
    out += [(p.name, load(p), lab33) for p in sorted(FIXTURES.glob("k33_*.json"))]
    return out


@pytest.fixture(scope="module")
def small_runs():
    runs = []
    for name, e, lab in _small_graph_cases():
        views = []
        for seed in (0, 1):
            p = generic_projection(e, seed)
            views.append({
                "simon": simon_invariant(p, lab),
                "alpha": alpha_omega(p, lab),
                "alpha_skein": alpha_omega(p, lab, a2=conway_a2_skein),
                "direction": p.direction.d,
            })
        runs.append({"name": name, "rectilinear": e.rectilinear, "views": views})
    return runs


@pytest.fixture(scope="module")
def d4_runs():
    runs = []
    for path in sorted(FIXTURES.glob("d4_*.json")):
        e = load(path)
        g = e.graph
        views = []
        for seed in (0, 1):
            p = generic_projection(e, seed)
            skein_lk = [conway_skein(diagram_for_walks(p, [g.walk(a), g.walk(b)]), max_degree=1)[1]
                        for a, b in g.linked_pairs()]
            views.append({
                "lk": list(d4_linking_numbers(p)),
                "skein_lk": skein_lk,
                "alpha": alpha_omega(p, "D4"),
                "alpha_skein": alpha_omega(p, "D4", a2=conway_a2_skein),
                "direction": p.direction.d,
            })
        runs.append({"name": path.name, "views": views})
    return runs


# ------------------------------------------------------------------ criteria


def test_criterion_01_k6_identity(k6_runs):
    runs, elapsed = k6_runs
    bad = [i for i, x in enumerate(runs) if not verify_main1(x["r"]).holds]
    moment = verify_main1(runs[0]["r"])
    ok = not bad and (moment.lhs, moment.rhs) == (0, 0) and len(runs) == 201 and elapsed < 60
    record(1, ok, f"{len(runs)} K6 embeddings, {len(bad)} failures, moment lhs=rhs={moment.lhs}, "
                  f"{elapsed:.1f}s including a second projection each")


def test_criterion_02_k7_identities(k7_runs):
    failures = []
    for i, x in enumerate(k7_runs):
        r = x["r"]
        for rep in (verify_main2(r), *verify_main3(r), verify_k7_lemma(r)):
            if not rep.holds:
                failures.append((i, rep.identity))
    sizes = {k: len(v) for k, v in k7_runs[0]["r"].a2.items() if k >= 5}
    links = sum(len(v) for v in k7_runs[0]["r"].lk.values())
    slowest = max(x["time"] for x in k7_runs)
    ok = not failures and sizes == {5: 252, 6: 420, 7: 360} and links == 175 and slowest < 10
    record(2, ok, f"{len(k7_runs)} K7 embeddings x 4 identities, {len(failures)} failures, "
                  f"slowest {slowest:.2f}s")


def test_criterion_03_parity(k6_runs, k6_polyline, k7_runs):
    k6 = k6_runs[0] + k6_polyline
    bad6 = sum(not verify_k6_parity(x["r"]).holds for x in k6)
    bad7 = sum(not verify_k7_parity(x["r"]).holds for x in k7_runs)
    record(3, bad6 == 0 and bad7 == 0,
           f"sum lk over G33 odd on {len(k6) - bad6}/{len(k6)} K6, sum a2 over G7 odd on "
           f"{len(k7_runs) - bad7}/{len(k7_runs)} K7")


def test_criterion_04_simon_lemma(k6_runs, k6_polyline):
    cases = [x["e"] for x in k6_runs[0]] + [x["e"] for x in k6_polyline]
    bad = [i for i, e in enumerate(cases) if not verify_simon_lemma(e).holds]
    n_poly = sum(not e.rectilinear for e in cases)
    record(4, not bad and n_poly >= 3, f"{len(cases)} K6 embeddings ({n_poly} polyline), {len(bad)} failures")


def test_criterion_05_simon_alpha(small_runs):
    bad = []
    for x in small_runs:
        v = x["views"][0]
        if v["simon"] % 2 != 1 or v["simon"] ** 2 != 8 * v["alpha"] + 1:
            bad.append(x["name"])
    n5 = sum(x["name"].startswith("K5 seed") for x in small_runs)
    n33 = sum(x["name"].startswith("K33 seed") for x in small_runs)
    p5 = sum(x["name"].startswith("k5_") and x["views"][0]["alpha"] != 0 for x in small_runs)
    p33 = sum(x["name"].startswith("k33_") and x["views"][0]["alpha"] != 0 for x in small_runs)
    ok = not bad and n5 == n33 == 100 and p5 >= 3 and p33 >= 3
    record(5, ok, f"{n5} K5 + {n33} K33 rectilinear, {p5} + {p33} knotted polyline fixtures, "
                  f"{len(bad)} failures")


def test_criterion_06_d4(d4_runs):
    bad = []
    combos = set()
    for x in d4_runs:
        v = x["views"][0]
        l1, l2 = v["lk"]
        combos.add((abs(l1), abs(l2)))
        if abs(v["alpha"]) != abs(l1 * l2):
            bad.append(x["name"])
    spans = {a for a, _ in combos} >= {0, 1, 2} and {b for _, b in combos} >= {0, 1, 2}
    ok = not bad and len(d4_runs) >= 20 and spans
    record(6, ok, f"{len(d4_runs)} D4 fixtures, {len(combos)} |lk| combinations, {len(bad)} failures")


def test_criterion_07_link_bounds(k7_runs):
    reports = [verify_fm_bounds(x["r"]) for x in k7_runs]
    bad = sum(not b.holds for b in reports)
    low33 = min(b.odd_G33 for b in reports)
    low43 = min(b.odd_G43 for b in reports)
    record(7, bad == 0, f"{len(reports)} K7: min odd pairs G33={low33}, G43={low43}, "
                        f"min sums {min(b.sum_lk2_G33 for b in reports)}/{min(b.sum_lk2_G43 for b in reports)}")


def test_criterion_08_minimal_k7(k7_runs, tmp_path):
    sums = [x["census"].sum_a2_gamma7 for x in k7_runs]
    all_pos_odd = all(s > 0 and s % 2 == 1 for s in sums)
    out = tmp_path / "search.json"
    code = cli.main(["search", "--budget", "5000", "--seed", "0", "--out", str(out)])
    doc = json.loads(out.read_text())
    found = doc.get("found", False)
    counts = None
    if found:
        c = doc["census"]
        counts = (c["sum_a2_gamma7"], c["n43_hopf"], c["n33_hopf"], c["n43_torus24"])
        # re-derive from the written embedding, through a fresh projection
        emb = json.dumps(doc["embedding"])
        again = census(invariant_report(cli.embedding_from_dict(json.loads(emb)), 3))
        counts_again = (again.sum_a2_gamma7, again.n43_hopf, again.n33_hopf, again.n43_torus24)
        found = counts == counts_again
    ok = all_pos_odd and code == 0 and found and counts == (1, 14, 7, 0)
    record(8, ok, f"sums over G7 {sorted(set(sums))}; search exit {code}, "
                  f"(sum, n43 Hopf, n33 Hopf, n43 torus) = {counts}")


def test_criterion_09_k6_census(k6_runs):
    runs = k6_runs[0][1:]
    cases = [x["census"].case for x in runs]
    legal = all(c in ((0, 1), (1, 3)) for c in cases)
    iff = all((x["census"].n_trefoil > 0) == (x["census"].n33_hopf == 3) for x in runs)
    seen = {c: cases.count(c) for c in sorted(set(cases))}
    ok = legal and iff and set(seen) == {(0, 1), (1, 3)} and len(runs) == 200
    record(9, ok, f"200 random K6 (seeds {K6_SEEDS.start}..{K6_SEEDS.stop - 1}): {seen}")


def test_criterion_10_oracles(k6_runs, k6_polyline, k7_runs, small_runs, d4_runs):
    graph_runs = k6_runs[0] + k6_polyline + k7_runs
    # invariant_report ran with the skein cross-check on every knot and link
    checked = all(x["r"].oracle_checked and x["r2"].oracle_checked for x in graph_runs)
    knots = sum(len(v) for x in graph_runs for v in x["r"].a2.values())
    links = sum(len(v) for x in graph_runs for v in x["r"].lk.values())
    two_dirs = all(x["r"].direction != x["r2"].direction for x in graph_runs)
    same = all(x["r"].signature() == x["r2"].signature() for x in graph_runs)
    small_ok = all(
        x["views"][0]["direction"] != x["views"][1]["direction"]
        and all(v["alpha"] == v["alpha_skein"] for v in x["views"])
        and x["views"][0]["simon"] == x["views"][1]["simon"]
        and x["views"][0]["alpha"] == x["views"][1]["alpha"]
        for x in small_runs
    )
    d4_ok = all(
        x["views"][0]["direction"] != x["views"][1]["direction"]
        and all(v["lk"] == v["skein_lk"] and v["alpha"] == v["alpha_skein"] for v in x["views"])
        and x["views"][0]["lk"] == x["views"][1]["lk"]
        and x["views"][0]["alpha"] == x["views"][1]["alpha"]
        for x in d4_runs
    )
    ok = checked and two_dirs and same and small_ok and d4_ok
    record(10, ok, f"{2 * knots} knot and {2 * links} link diagrams cross-checked in K6/K7 reports; "
                   f"direction agreement K6/K7={same}, K5/K33={small_ok}, D4={d4_ok}")


def test_criterion_11_enumeration():
    k6, k7 = complete_graph(6), complete_graph(7)
    counts = (
        len(disjoint_cycle_pairs(k6, 3, 3)),
        len(k33_subgraphs_of_k6()),
        len(k5_subgraphs_of_k6()),
        len(cycles_of_length(k7, 7)),
        len(disjoint_cycle_pairs(k7, 4, 3)),
        len(disjoint_cycle_pairs(k7, 3, 3)),
    )
    h = [set(s.cycles()) for s in k33_subgraphs_of_k6()]
    g = [set(s.cycles()) for s in k5_subgraphs_of_k6()]
    mult = (
        {sum(c in x for x in h) for c in cycles_of_length(k6, 6)},
        {sum(c in x for x in g) for c in cycles_of_length(k6, 5)},
        {sum(c in x for x in h) for c in cycles_of_length(k6, 4)},
        {sum(c in x for x in g) for c in cycles_of_length(k6, 4)},
    )
    ok = counts == (10, 10, 6, 360, 105, 70) and mult == ({1}, {1}, {2}, {2})
    record(11, ok, f"counts {counts}, incidence multiplicities {[sorted(m) for m in mult]}")
