"""Exact piecewise-linear embeddings in 3-space and their generic projections.

Every coordinate is a :class:`fractions.Fraction`; no predicate here ever
rounds.  A projection along a rational direction ``d`` uses a rational basis
``(u, v)`` with ``det(u, v, d) > 0``, so the image plane keeps the orientation
seen by a viewer looking down ``-d``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import lcm
from typing import Union

from .errors import GenericityError, InternalError
from .graphs import D4Graph, SimpleGraph, complete_bipartite_33, complete_graph

Point3 = tuple[Fraction, Fraction, Fraction]
Graph = Union[SimpleGraph, D4Graph]

MAX_ATTEMPTS = 10_000


def point(x, y, z) -> Point3:
    return (Fraction(x), Fraction(y), Fraction(z))


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def _dot(p, q):
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def _cross(p, q):
    return (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0])


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def _is_zero(p):
    return p[0] == 0 and p[1] == 0 and p[2] == 0


@dataclass(frozen=True)
class Segment:
    edge: object
    index: int
    start: tuple  # node id
    end: tuple
    p: Point3
    q: Point3


@dataclass(frozen=True)
class SpatialEmbedding:
    """Vertex positions plus optional interior bend points for each edge.

    ``edge_path[e]`` lists the interior points of edge ``e`` from its tail to
    its head; an empty (or missing) entry means a straight segment.
    """

    graph: Graph
    vertex_pos: dict
    edge_path: dict = field(default_factory=dict)

    def __post_init__(self):
        pos = {int(v): tuple(Fraction(c) for c in p) for v, p in self.vertex_pos.items()}
        if set(pos) != set(self.graph.vertices):
            raise ValueError("vertex positions do not match the graph's vertex set")
        ends = self.graph.edge_ends()
        paths = {}
        for e, pts in self.edge_path.items():
            if e not in ends:
                raise ValueError(f"edge path for unknown edge {e!r}")
            if pts:
                paths[e] = tuple(tuple(Fraction(c) for c in p) for p in pts)
        object.__setattr__(self, "vertex_pos", pos)
        object.__setattr__(self, "edge_path", paths)

    @property
    def rectilinear(self) -> bool:
        return not self.edge_path

    def polyline(self, e) -> list[Point3]:
        a, b = self.graph.edge_ends()[e]
        return [self.vertex_pos[a], *self.edge_path.get(e, ()), self.vertex_pos[b]]

    @cached_property
    def segments(self) -> tuple[Segment, ...]:
        out = []
        for e, (a, b) in self.graph.edge_ends().items():
            pts = self.polyline(e)
            nodes = [("v", a)] + [("b", e, k) for k in range(len(pts) - 2)] + [("v", b)]
            for k in range(len(pts) - 1):
                out.append(Segment(e, k, nodes[k], nodes[k + 1], pts[k], pts[k + 1]))
        return tuple(out)

    @cached_property
    def nodes(self) -> dict:
        out = {("v", v): p for v, p in self.vertex_pos.items()}
        for e, pts in self.edge_path.items():
            for k, p in enumerate(pts):
                out[("b", e, k)] = p
        return out

    @cached_property
    def int_nodes(self) -> dict:
        """Node positions scaled by the common denominator, as Python ints."""
        dens = [c.denominator for p in self.nodes.values() for c in p]
        m = lcm(*dens) if dens else 1
        return {k: tuple(int(c * m) for c in p) for k, p in self.nodes.items()}

    def scaled(self, factor) -> "SpatialEmbedding":
        f = Fraction(factor)
        return SpatialEmbedding(
            self.graph,
            {v: tuple(c * f for c in p) for v, p in self.vertex_pos.items()},
            {e: [tuple(c * f for c in p) for p in pts] for e, pts in self.edge_path.items()},
        )


# -------------------------------------------------------------- validation


@dataclass(frozen=True)
class GenericityReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _segments_meet_3d(p1, p2, q1, q2) -> bool:
    """Closed segments p1p2 and q1q2 share a point (integer coordinates)."""
    for k in range(3):
        if max(p1[k], p2[k]) < min(q1[k], q2[k]) or max(q1[k], q2[k]) < min(p1[k], p2[k]):
            return False
    r = _sub(p2, p1)
    s = _sub(q2, q1)
    w = _sub(q1, p1)
    n = _cross(r, s)
    if not _is_zero(n):
        if _dot(w, n) != 0:
            return False
        nn = _dot(n, n)
        t = _dot(_cross(w, s), n)
        u = _dot(_cross(w, r), n)
        return 0 <= t <= nn and 0 <= u <= nn
    if not _is_zero(_cross(w, r)):
        return False
    rr = _dot(r, r)
    t0 = _dot(w, r)
    t1 = _dot(_sub(q2, p1), r)
    return max(t0, t1) >= 0 and min(t0, t1) <= rr


def _shared_nodes(s: Segment, t: Segment) -> set:
    return {s.start, s.end} & {t.start, t.end}


def validate_embedding(e: SpatialEmbedding) -> GenericityReport:
    """Exact check that ``e`` is injective: distinct node positions, disjoint
    non-adjacent segments, adjacent segments meeting only at their common node."""
    bad = []
    seen = {}
    pos = e.int_nodes
    for nid, p in pos.items():
        if p in seen:
            bad.append(("coincident-vertex-images", (seen[p], nid)))
        seen.setdefault(p, nid)
    for s, t in combinations(e.segments, 2):
        shared = _shared_nodes(s, t)
        witness = ((s.edge, s.index), (t.edge, t.index))
        if len(shared) == 2:
            bad.append(("adjacent-edge-overlap", witness))
        elif shared:
            (c,) = shared
            pc = pos[c]
            a = pos[s.end] if s.start == c else pos[s.start]
            b = pos[t.end] if t.start == c else pos[t.start]
            da, db = _sub(a, pc), _sub(b, pc)
            if _is_zero(_cross(da, db)) and _dot(da, db) > 0:
                bad.append(("adjacent-edge-overlap", witness))
        elif _segments_meet_3d(pos[s.start], pos[s.end], pos[t.start], pos[t.end]):
            bad.append(("segment-intersection", witness))
    return GenericityReport(tuple(bad))


# -------------------------------------------------------------- generators


def moment_curve_embedding(n: int) -> SpatialEmbedding:
    g = complete_graph(n)
    return SpatialEmbedding(g, {i: point(i, i * i, i ** 3) for i in g.vertices})


def rectilinear_embedding(graph: Graph, positions) -> SpatialEmbedding:
    return SpatialEmbedding(graph, dict(positions))


def _lattice_point(rng: random.Random, span: int) -> Point3:
    return point(rng.randint(-span, span), rng.randint(-span, span), rng.randint(-span, span))


def random_rectilinear(n_or_graph, seed: int, span: int = 1000) -> SpatialEmbedding:
    """Vertices uniform on the lattice cube [-span, span]^3, resampled until the
    straight-edge embedding is valid.  Fully determined by (graph, seed, span)."""
    graph = complete_graph(n_or_graph) if isinstance(n_or_graph, int) else n_or_graph
    if span < 8:
        raise ValueError("span must be at least 8")
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        pos = {v: _lattice_point(rng, span) for v in graph.vertices}
        emb = SpatialEmbedding(graph, pos)
        if validate_embedding(emb).ok:
            return emb
    raise InternalError(f"no valid embedding after {MAX_ATTEMPTS} attempts")


def random_polyline(graph: Graph, seed: int, span: int = 20, bends=1, bent_edges=None) -> SpatialEmbedding:
    """Random lattice embedding where the chosen edges (all by default) carry
    ``bends`` interior points each.  ``bends`` may be an int or a (lo, hi) range."""
    rng = random.Random(seed)
    ends = graph.edge_ends()
    chosen = list(ends) if bent_edges is None else list(bent_edges)
    lo, hi = (bends, bends) if isinstance(bends, int) else bends
    for _ in range(MAX_ATTEMPTS):
        pos = {v: _lattice_point(rng, span) for v in graph.vertices}
        paths = {e: [_lattice_point(rng, span) for _ in range(rng.randint(lo, hi))] for e in chosen}
        emb = SpatialEmbedding(graph, pos, paths)
        if validate_embedding(emb).ok:
            return emb
    raise InternalError(f"no valid embedding after {MAX_ATTEMPTS} attempts")


def graph_by_name(name: str) -> Graph:
    if name == "K33":
        return complete_bipartite_33()
    if name == "D4":
        return D4Graph()
    if name.startswith("K") and name[1:].isdigit():
        return complete_graph(int(name[1:]))
    raise ValueError(f"unknown graph {name!r}")


# -------------------------------------------------------------- projection


@dataclass(frozen=True)
class Direction:
    d: tuple
    u: tuple
    v: tuple

    def __post_init__(self):
        for name in ("d", "u", "v"):
            object.__setattr__(self, name, tuple(Fraction(c) for c in getattr(self, name)))
        if _det3(self.u, self.v, self.d) <= 0:
            raise ValueError("projection basis must satisfy det(u, v, d) > 0")

    @classmethod
    def along(cls, d) -> "Direction":
        """Complete ``d`` to a positively oriented rational frame."""
        d = tuple(Fraction(c) for c in d)
        if _is_zero(d):
            raise ValueError("zero direction")
        for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            u = _cross(axis, d)
            if not _is_zero(u):
                return cls(d, u, _cross(d, u))
        raise AssertionError("unreachable")

    @cached_property
    def int_frame(self) -> tuple:
        """(u, v, d) each rescaled to integers by a positive factor."""
        out = []
        for vec in (self.u, self.v, self.d):
            m = lcm(*(c.denominator for c in vec))
            out.append(tuple(int(c * m) for c in vec))
        return tuple(out)

    def coordinates(self, p) -> tuple:
        """(x, y, height) of ``p`` in the frame, all scaled by det(u, v, d) > 0."""
        return (_det3(p, self.v, self.d), _det3(self.u, p, self.d), _det3(self.u, self.v, p))


@dataclass(frozen=True)
class CrossingRecord:
    over: tuple  # (edge, segment index)
    under: tuple
    t_over: Fraction  # parameter along the over segment, in edge orientation
    t_under: Fraction
    sign: int
    point: tuple  # (x, y) image, frame-scaled


@dataclass(frozen=True)
class Projection:
    embedding: SpatialEmbedding
    direction: Direction
    crossings: tuple

    def crossings_between(self, edges_a, edges_b=None):
        ea = set(edges_a)
        eb = ea if edges_b is None else set(edges_b)
        for c in self.crossings:
            x, y = c.over[0], c.under[0]
            if (x in ea and y in eb) or (x in eb and y in ea):
                yield c


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment_2d(p, a, b) -> bool:
    if not (min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])):
        return False
    return _orient(a, b, p) == 0


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _analyse(e: SpatialEmbedding, d: Direction):
    """Shared pass for is_generic and project: returns (violations, crossings)."""
    fu, fv, fd = d.int_frame
    # positive rescaling of each frame vector keeps every predicate and sign
    img = {nid: (_det3(p, fv, fd), _det3(fu, p, fd), _det3(fu, fv, p)) for nid, p in e.int_nodes.items()}
    bad = []
    seen = {}
    for nid, c in img.items():
        key = c[:2]
        if key in seen:
            bad.append(("coincident-vertex-images", (seen[key], nid)))
        seen.setdefault(key, nid)
    segs = e.segments
    for s in segs:
        a, b = img[s.start], img[s.end]
        for nid, c in img.items():
            if nid in (s.start, s.end):
                continue
            if _on_segment_2d(c, a, b):
                bad.append(("vertex-on-edge", (nid, (s.edge, s.index))))
    crossings = []
    points = {}
    for s, t in combinations(segs, 2):
        p1, p2 = img[s.start], img[s.end]
        q1, q2 = img[t.start], img[t.end]
        witness = ((s.edge, s.index), (t.edge, t.index))
        shared = _shared_nodes(s, t)
        r = (p2[0] - p1[0], p2[1] - p1[1])
        w = (q2[0] - q1[0], q2[1] - q1[1])
        denom = r[0] * w[1] - r[1] * w[0]
        if not shared and (
            max(p1[0], p2[0]) < min(q1[0], q2[0]) or max(q1[0], q2[0]) < min(p1[0], p2[0])
            or max(p1[1], p2[1]) < min(q1[1], q2[1]) or max(q1[1], q2[1]) < min(p1[1], p2[1])
        ):
            continue
        if shared:
            if len(shared) == 2 or denom == 0:
                # collinear images of segments sharing a node
                if len(shared) == 2:
                    bad.append(("adjacent-edge-overlap", witness))
                else:
                    (c,) = shared
                    pc = img[c]
                    a = p2 if s.start == c else p1
                    b = q2 if t.start == c else q1
                    if (a[0] - pc[0]) * (b[0] - pc[0]) + (a[1] - pc[1]) * (b[1] - pc[1]) > 0:
                        bad.append(("adjacent-edge-overlap", witness))
            continue
        if denom == 0:
            if _orient(p1, p2, q1) == 0 and (
                _on_segment_2d(q1, p1, p2) or _on_segment_2d(q2, p1, p2)
                or _on_segment_2d(p1, q1, q2) or _on_segment_2d(p2, q1, q2)
            ):
                bad.append(("tangency", witness))
            continue
        qp = (q1[0] - p1[0], q1[1] - p1[1])
        ns = qp[0] * w[1] - qp[1] * w[0]
        nt = qp[0] * r[1] - qp[1] * r[0]
        if denom < 0:
            ns, nt, dd = -ns, -nt, -denom
        else:
            dd = denom
        if not (0 <= ns <= dd and 0 <= nt <= dd):
            continue
        if ns in (0, dd) or nt in (0, dd):
            # an endpoint image on the other segment; reported as vertex-on-edge
            continue
        ts, tt = Fraction(ns, dd), Fraction(nt, dd)
        hs = p1[2] + ts * (p2[2] - p1[2])
        ht = q1[2] + tt * (q2[2] - q1[2])
        if hs == ht:
            bad.append(("tangency", witness))
            continue
        xy = (p1[0] + ts * r[0], p1[1] + ts * r[1])
        if xy in points:
            bad.append(("triple-point", (points[xy], witness)))
        points.setdefault(xy, witness)
        if hs > ht:
            rec = CrossingRecord((s.edge, s.index), (t.edge, t.index), ts, tt, _sign(denom), xy)
        else:
            rec = CrossingRecord((t.edge, t.index), (s.edge, s.index), tt, ts, -_sign(denom), xy)
        crossings.append(rec)
    return bad, crossings


def is_generic(e: SpatialEmbedding, d: Direction) -> GenericityReport:
    bad, _ = _analyse(e, d)
    return GenericityReport(tuple(bad))


def project(e: SpatialEmbedding, d: Direction) -> Projection:
    bad, crossings = _analyse(e, d)
    if bad:
        raise GenericityError(f"direction {d.d} is not generic: {bad[0]}")
    return Projection(e, d, tuple(crossings))


def random_generic_direction(e: SpatialEmbedding, seed: int, span: int = 97) -> Direction:
    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        vec = (rng.randint(-span, span), rng.randint(-span, span), rng.randint(-span, span))
        if vec == (0, 0, 0):
            continue
        d = Direction.along(vec)
        if not _analyse(e, d)[0]:
            return d
    raise InternalError(f"no generic direction after {MAX_ATTEMPTS} attempts")


def generic_projection(e: SpatialEmbedding, seed: int = 0) -> Projection:
    return project(e, random_generic_direction(e, seed))


# ------------------------------------------------------------- file format


def _fmt(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _edge_label(graph: Graph, e) -> str:
    return f"e{e}" if isinstance(graph, D4Graph) else f"{e[0]}-{e[1]}"


def _parse_edge(graph: Graph, label: str):
    if isinstance(graph, D4Graph):
        if not label.startswith("e"):
            raise ValueError(f"bad D4 edge label {label!r}")
        return int(label[1:])
    a, b = (int(x) for x in label.split("-"))
    return (a, b) if a < b else (b, a)


def embedding_to_dict(e: SpatialEmbedding) -> dict:
    out = {
        "graph": e.graph.name,
        "vertices": {str(v): [_fmt(c) for c in e.vertex_pos[v]] for v in sorted(e.vertex_pos)},
    }
    if e.edge_path:
        out["edge_paths"] = {
            _edge_label(e.graph, k): [[_fmt(c) for c in p] for p in e.edge_path[k]]
            for k in sorted(e.edge_path)
        }
    return out


def embedding_from_dict(data: dict) -> SpatialEmbedding:
    graph = graph_by_name(data["graph"])
    verts = {int(k): tuple(Fraction(c) for c in v) for k, v in data["vertices"].items()}
    if any(len(p) != 3 for p in verts.values()):
        raise ValueError("vertex coordinates must be 3-vectors")
    paths = {}
    for label, pts in (data.get("edge_paths") or {}).items():
        key = _parse_edge(graph, label)
        pts = [tuple(Fraction(c) for c in p) for p in pts]
        if not isinstance(graph, D4Graph):
            lo, hi = (int(x) for x in label.split("-"))
            if lo > hi:
                pts.reverse()
        paths[key] = pts
    return SpatialEmbedding(graph, verts, paths)


def dumps(e: SpatialEmbedding) -> str:
    return json.dumps(embedding_to_dict(e), indent=2, sort_keys=False) + "\n"


def loads(text: str) -> SpatialEmbedding:
    return embedding_from_dict(json.loads(text))


def save(e: SpatialEmbedding, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(e))


def load(path) -> SpatialEmbedding:
    with open(path) as fh:
        return loads(fh.read())
