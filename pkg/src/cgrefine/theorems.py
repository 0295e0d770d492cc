"""Evaluate the refined Conway-Gordon identities and the rectilinear census
claims on concrete embeddings of K6 and K7.

One projection per report: ``invariant_report`` computes every a2 and lk
once, and every verifier reads its sums from that report.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
from dataclasses import asdict, dataclass, field

from .diagram import diagram_for_cycle, diagram_for_pair
from .errors import InternalError
from .geometry import (
    SpatialEmbedding,
    dumps,
    project,
    random_generic_direction,
    random_rectilinear,
)
from .graphs import (
    SimpleGraph,
    cycles_of_length,
    disjoint_cycle_pairs,
    k5_subgraphs_of_k6,
    k33_subgraphs_of_k6,
)
from .invariants import (
    classify_knot,
    classify_link,
    conway_a2,
    conway_skein,
    KnotClass,
    LinkClass,
    linking_number,
    simon_invariant,
)

PAIR_FAMILIES = {6: [(3, 3)], 7: [(4, 3), (3, 3)]}


def embedding_hash(e: SpatialEmbedding) -> str:
    return hashlib.sha256(dumps(e).encode()).hexdigest()[:16]


@dataclass
class InvariantReport:
    graph: str
    embedding_id: str
    direction: tuple
    rectilinear: bool
    a2: dict  # cycle length -> list of (Cycle, a2), canonical order
    lk: dict  # (k, l) -> list of (CyclePair, lk), canonical order
    oracle_checked: bool = False

    @property
    def n(self) -> int:
        return int(self.graph[1:])

    def sum_a2(self, k: int) -> int:
        return sum(v for _, v in self.a2[k])

    def sum_lk2(self, k: int, l: int) -> int:
        return sum(v * v for _, v in self.lk[(k, l)])

    def sum_lk(self, k: int, l: int) -> int:
        return sum(v for _, v in self.lk[(k, l)])

    def signature(self) -> tuple:
        """Everything except the projection; equal across generic directions."""
        return (
            tuple((k, tuple(v for _, v in rows)) for k, rows in sorted(self.a2.items())),
            tuple((k, tuple(v for _, v in rows)) for k, rows in sorted(self.lk.items())),
        )

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "embedding_id": self.embedding_id,
            "direction": [str(c) for c in self.direction],
            "rectilinear": self.rectilinear,
            "oracle_checked": self.oracle_checked,
            "cycles": {str(k): [[str(c), v] for c, v in rows] for k, rows in sorted(self.a2.items())},
            "pairs": {f"{k},{l}": [[str(p), v] for p, v in rows] for (k, l), rows in sorted(self.lk.items())},
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "family", "item", "value"])
        for k, rows in sorted(self.a2.items()):
            for c, v in rows:
                w.writerow(["a2", f"G{k}", str(c), v])
        for (k, l), rows in sorted(self.lk.items()):
            for p, v in rows:
                w.writerow(["lk", f"G{k},{l}", str(p), v])
        return buf.getvalue()


def invariant_report(e: SpatialEmbedding, seed: int = 0, check: bool = True) -> InvariantReport:
    """a2 of every cycle of length 4..n and lk of every disjoint pair.

    With ``check`` each knot's a2 is recomputed by the skein recursion and each
    link's lk is compared with the skein z coefficient; any disagreement is a
    bug and raises InternalError.
    """
    g = e.graph
    if not isinstance(g, SimpleGraph) or g.name not in ("K6", "K7"):
        raise ValueError("invariant reports cover embeddings of K6 and K7")
    d = random_generic_direction(e, seed)
    proj = project(e, d)
    a2 = {}
    for k in range(4, g.n + 1):
        rows = []
        for c in cycles_of_length(g, k):
            diag = diagram_for_cycle(proj, c)
            v = conway_a2(diag)
            if check and diag.crossing_count and conway_skein(diag, max_degree=2)[2] != v:
                raise InternalError(f"a2 routes disagree on {c}: {diag}")
            rows.append((c, v))
        a2[k] = rows
    lk = {}
    for k, l in PAIR_FAMILIES[g.n]:
        rows = []
        for p in disjoint_cycle_pairs(g, k, l):
            diag = diagram_for_pair(proj, p)
            v = linking_number(diag)
            if check and conway_skein(diag, max_degree=1)[1] != v:
                raise InternalError(f"lk routes disagree on {p}: {diag}")
            rows.append((p, v))
        lk[(k, l)] = rows
    return InvariantReport(g.name, embedding_hash(e), d.d, e.rectilinear, a2, lk, check)


# ------------------------------------------------------------- identities


@dataclass
class IdentityReport:
    identity: str
    lhs: int
    rhs: int
    breakdown: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {"identity": self.identity, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds, "breakdown": dict(self.breakdown)}


def _need(r: InvariantReport, graph: str):
    if r.graph != graph:
        raise ValueError(f"expected a {graph} report, got {r.graph}")


def verify_main1(r: InvariantReport) -> IdentityReport:
    """2 (sum_G6 a2 - sum_G5 a2) = sum_G33 lk^2 - 1 on K6."""
    _need(r, "K6")
    s6, s5, l33 = r.sum_a2(6), r.sum_a2(5), r.sum_lk2(3, 3)
    return IdentityReport("k6-a2-lk", 2 * (s6 - s5), l33 - 1,
                          {"sum_a2_G6": s6, "sum_a2_G5": s5, "sum_lk2_G33": l33})


def verify_k6_parity(r: InvariantReport) -> IdentityReport:
    _need(r, "K6")
    s = r.sum_lk(3, 3)
    return IdentityReport("k6-lk-parity", s % 2, 1, {"sum_lk_G33": s})


def _k7_sums(r):
    return {
        "sum_a2_G7": r.sum_a2(7), "sum_a2_G6": r.sum_a2(6), "sum_a2_G5": r.sum_a2(5),
        "sum_lk2_G43": r.sum_lk2(4, 3), "sum_lk2_G33": r.sum_lk2(3, 3),
    }


def verify_main2(r: InvariantReport) -> IdentityReport:
    """7 sum_G7 a2 - 6 sum_G6 a2 - 2 sum_G5 a2 = 2 sum_G43 lk^2 - 21 on K7."""
    _need(r, "K7")
    s = _k7_sums(r)
    lhs = 7 * s["sum_a2_G7"] - 6 * s["sum_a2_G6"] - 2 * s["sum_a2_G5"]
    return IdentityReport("k7-a2-lk", lhs, 2 * s["sum_lk2_G43"] - 21, s)


def verify_k7_parity(r: InvariantReport) -> IdentityReport:
    _need(r, "K7")
    s = r.sum_a2(7)
    return IdentityReport("k7-a2-parity", s % 2, 1, {"sum_a2_G7": s})


def verify_main3(r: InvariantReport) -> tuple[IdentityReport, IdentityReport]:
    """The K7 identity split into its two halves."""
    _need(r, "K7")
    s = _k7_sums(r)
    a = IdentityReport(
        "k7-split-a",
        14 * (s["sum_a2_G7"] - s["sum_a2_G6"]),
        4 * s["sum_lk2_G43"] - s["sum_lk2_G33"] - 35,
        s,
    )
    b = IdentityReport(
        "k7-split-b",
        7 * (s["sum_a2_G7"] - 2 * s["sum_a2_G5"]),
        2 * s["sum_lk2_G43"] + 3 * s["sum_lk2_G33"] - 42,
        s,
    )
    return a, b


def verify_k7_lemma(r: InvariantReport) -> IdentityReport:
    """2 (sum_G6 a2 - 2 sum_G5 a2) = sum_G33 lk^2 - 7 on K7."""
    _need(r, "K7")
    s = _k7_sums(r)
    return IdentityReport("k7-g6-g5", 2 * (s["sum_a2_G6"] - 2 * s["sum_a2_G5"]), s["sum_lk2_G33"] - 7, s)


def verify_split_combination(r: InvariantReport) -> IdentityReport:
    """The two halves recombine (first + 3 * second) into 7 times the full identity."""
    a, b = verify_main3(r)
    m = verify_main2(r)
    lhs = (a.lhs - a.rhs) + 3 * (b.lhs - b.rhs)
    return IdentityReport("k7-split-combination", lhs, 7 * (m.lhs - m.rhs),
                          {"split_a_defect": a.lhs - a.rhs, "split_b_defect": b.lhs - b.rhs,
                           "full_defect": m.lhs - m.rhs})


def verify_simon_lemma(e: SpatialEmbedding, seed: int = 0) -> IdentityReport:
    """Over K6: sum of Simon^2 over the K3,3 subgraphs minus over the K5
    subgraphs equals 4 times the sum of lk^2 over the triangle pairs."""
    g = e.graph
    if not isinstance(g, SimpleGraph) or g.name != "K6":
        raise ValueError("the Simon identity is stated for K6")
    proj = project(e, random_generic_direction(e, seed))
    h = [simon_invariant(proj, lab) for lab in k33_subgraphs_of_k6()]
    gg = [simon_invariant(proj, lab) for lab in k5_subgraphs_of_k6()]
    lks = [linking_number(diagram_for_pair(proj, p)) for p in disjoint_cycle_pairs(g, 3, 3)]
    return IdentityReport(
        "k6-simon",
        sum(x * x for x in h) - sum(x * x for x in gg),
        4 * sum(x * x for x in lks),
        {"simon_K33": h, "simon_K5": gg, "lk_G33": lks},
    )


@dataclass
class BoundsReport:
    odd_G33: int
    odd_G43: int
    sum_lk2_G33: int
    sum_lk2_G43: int

    @property
    def holds(self) -> bool:
        return (self.odd_G33 >= 7 and self.odd_G43 >= 14
                and self.sum_lk2_G33 >= 7 and self.sum_lk2_G43 >= 14)

    def to_dict(self) -> dict:
        return {"identity": "k7-odd-link-bounds", **asdict(self), "holds": self.holds}


def verify_fm_bounds(r: InvariantReport) -> BoundsReport:
    _need(r, "K7")
    return BoundsReport(
        sum(1 for _, v in r.lk[(3, 3)] if v % 2),
        sum(1 for _, v in r.lk[(4, 3)] if v % 2),
        r.sum_lk2(3, 3),
        r.sum_lk2(4, 3),
    )


def all_identities(r: InvariantReport, e: SpatialEmbedding | None = None, seed: int = 0) -> list:
    """Every identity that applies to the report's graph."""
    if r.graph == "K6":
        out = [verify_main1(r), verify_k6_parity(r)]
        if e is not None:
            out.append(verify_simon_lemma(e, seed))
        return out
    return [verify_main2(r), *verify_main3(r), verify_k7_lemma(r), verify_split_combination(r),
            verify_k7_parity(r), verify_fm_bounds(r)]


# ---------------------------------------------------------------- census


@dataclass
class CensusReport:
    graph: str
    n6_trefoil: int = 0
    n33_hopf: int = 0
    n43_hopf: int = 0
    n43_torus24: int = 0
    n_trefoil: int = 0
    figure_eight: int = 0
    sum_a2_gamma7: int | None = None
    checks: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    @property
    def case(self) -> tuple[int, int]:
        return (self.n6_trefoil, self.n33_hopf)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["holds"] = self.holds
        if self.graph == "K6":
            d["case"] = list(self.case)
        else:
            del d["n6_trefoil"]
        return d


def _classified(r: InvariantReport):
    knots = {k: [classify_knot(v, k) for _, v in rows] for k, rows in r.a2.items()}
    links = {kl: [classify_link(v, sum(kl)) for _, v in rows] for kl, rows in r.lk.items()}
    return knots, links


def _require_rectilinear(r: InvariantReport):
    if not r.rectilinear:
        raise ValueError("census claims need a rectilinear embedding (stick bounds)")


def census_k6(r: InvariantReport) -> CensusReport:
    _need(r, "K6")
    _require_rectilinear(r)
    knots, links = _classified(r)
    c = CensusReport("K6")
    c.n6_trefoil = knots[6].count(KnotClass.TREFOIL)
    c.n_trefoil = sum(v.count(KnotClass.TREFOIL) for v in knots.values())
    c.figure_eight = sum(v.count(KnotClass.FIGURE_EIGHT) for v in knots.values())
    c.n33_hopf = links[(3, 3)].count(LinkClass.HOPF)
    c.checks = {
        "case_is_0_1_or_1_3": c.case in ((0, 1), (1, 3)),
        "no_trefoil_iff_one_hopf": (c.n_trefoil == 0) == (c.n33_hopf == 1),
        "trefoil_iff_three_hopf": (c.n_trefoil > 0) == (c.n33_hopf == 3),
    }
    return c


def census_k7(r: InvariantReport) -> CensusReport:
    _need(r, "K7")
    _require_rectilinear(r)
    knots, links = _classified(r)
    c = CensusReport("K7")
    c.n6_trefoil = knots[6].count(KnotClass.TREFOIL)
    c.n_trefoil = knots[7].count(KnotClass.TREFOIL)
    c.figure_eight = knots[7].count(KnotClass.FIGURE_EIGHT)
    c.n33_hopf = links[(3, 3)].count(LinkClass.HOPF)
    c.n43_hopf = links[(4, 3)].count(LinkClass.HOPF)
    c.n43_torus24 = links[(4, 3)].count(LinkClass.TORUS24)
    s = r.sum_a2(7)
    c.sum_a2_gamma7 = s
    minimal = c.n43_torus24 == 0 and c.n43_hopf == 14 and c.n33_hopf == 7
    c.checks = {
        "sum_a2_G7_positive_odd": s > 0 and s % 2 == 1,
        "sum_one_iff_minimal_links": (s == 1) == minimal,
        "sum_one_iff_21_hopf": (s == 1) == (c.n43_torus24 == 0 and c.n43_hopf + c.n33_hopf == 21),
    }
    return c


def census(r: InvariantReport) -> CensusReport:
    return census_k6(r) if r.graph == "K6" else census_k7(r)


def search_minimal_k7(seed: int, budget: int, span: int = 30):
    """First rectilinear K7 (trial seeds derived from ``seed``) whose 7-cycles
    have a2 summing to 1.  Returns (embedding, trial index) or None."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    stream = random.Random(seed)
    for trial in range(budget):
        e = random_rectilinear(7, stream.getrandbits(63), span)
        proj = project(e, random_generic_direction(e, trial))
        total = 0
        for c in cycles_of_length(e.graph, 7):
            total += conway_a2(diagram_for_cycle(proj, c))
        if total == 1:
            return e, trial
    return None


def report_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
