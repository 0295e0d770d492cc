"""Regenerate the polyline fixtures under tests/fixtures.

Each fixture is a seeded random polyline embedding picked for its invariants.
The frozen values in manifest.json come from the skein route, so the tests
compare the Seifert route and the Simon sums against an independent oracle.

    python3 tools/make_fixtures.py
"""

import json
import sys
from pathlib import Path

from cgrefine.diagram import diagram_for_cycle, diagram_for_walks
from cgrefine.geometry import generic_projection, random_polyline, save
from cgrefine.graphs import (
    D4Graph,
    LabeledK5,
    LabeledK33,
    complete_bipartite_33,
    complete_graph,
    disjoint_cycle_pairs,
)
from cgrefine.invariants import alpha_omega, conway_a2_skein, conway_skein, simon_invariant

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def d4_values(e):
    p = generic_projection(e, 0)
    g = e.graph
    lks = [conway_skein(diagram_for_walks(p, [g.walk(a), g.walk(b)]), max_degree=1)[1] for a, b in g.linked_pairs()]
    return {"lk": lks, "alpha": alpha_omega(p, "D4", a2=conway_a2_skein)}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    manifest = {}

    # D4: cover every (|lk|, |lk'|) combination in {0,1,2}^2 three times; (2,2) is rare, once
    want = {(a, b): 3 for a in range(3) for b in range(3)}
    want[(2, 2)] = 1
    found = 0
    for seed in range(8000):
        if not any(want.values()):
            break
        e = random_polyline(D4Graph(), seed, span=10, bends=(2, 4))
        v = d4_values(e)
        key = (abs(v["lk"][0]), abs(v["lk"][1]))
        if want.get(key, 0) > 0:
            want[key] -= 1
            name = f"d4_{found:02d}.json"
            save(e, OUT / name)
            manifest[name] = {"seed": seed, **v}
            found += 1
    missing = {k: n for k, n in want.items() if n}
    if missing:
        print("D4 combinations not found:", missing, file=sys.stderr)

    # K5 / K3,3: knotted or linked polyline embeddings (alpha != 0)
    for kind, graph, lab in (
        ("k5", complete_graph(5), LabeledK5((1, 2, 3, 4, 5))),
        ("k33", complete_bipartite_33(), LabeledK33((1, 2, 3, 4, 5, 6))),
    ):
        got = 0
        for seed in range(5000):
            e = random_polyline(graph, seed, span=12, bends=1)
            p = generic_projection(e, 0)
            a = alpha_omega(p, lab, a2=conway_a2_skein)
            if a == 0:
                continue
            name = f"{kind}_{got:02d}.json"
            save(e, OUT / name)
            manifest[name] = {"seed": seed, "simon_abs": abs(simon_invariant(p, lab)), "alpha": a}
            got += 1
            if got == 4:
                break

    # K6 with bent edges: some knotted cycles or links beyond the rectilinear regime
    got = 0
    k6 = complete_graph(6)
    for seed in range(5000):
        e = random_polyline(k6, seed, span=12, bends=1)
        p = generic_projection(e, 0)
        lks = [conway_skein(diagram_for_walks(p, [c.walk() for c in (q.first, q.second)]), max_degree=1)[1]
               for q in disjoint_cycle_pairs(k6, 3, 3)]
        knotted = sum(1 for c in _six_cycles(k6) if conway_a2_skein(diagram_for_cycle(p, c)))
        if max(abs(x) for x in lks) < 2 and knotted == 0:
            continue
        name = f"k6_{got:02d}.json"
        save(e, OUT / name)
        manifest[name] = {"seed": seed, "sum_lk2_G33": sum(x * x for x in lks), "knotted_6_cycles": knotted}
        got += 1
        if got == 4:
            break

    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(manifest)} fixtures to {OUT}")


def _six_cycles(g):
    from cgrefine.graphs import cycles_of_length
    return cycles_of_length(g, 6)


if __name__ == "__main__":
    main()
