"""Combinatorial layer: complete graphs, cycles, disjoint cycle pairs and the
distinguished subgraph families (K5 and K3,3 inside K6, the doubled square D4).

Vertices are positive integers.  Simple-graph edges are stored as sorted
pairs ``(i, j)`` with ``i < j`` and are oriented ``i -> j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

MIN_N = 3
MAX_N = 12


def _edge(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[int, ...]
    edges: frozenset

    def __post_init__(self):
        vs = set(self.vertices)
        for i, j in self.edges:
            if i >= j or i not in vs or j not in vs:
                raise ValueError(f"bad edge {(i, j)}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def name(self) -> str:
        m = len(self.edges)
        if m == self.n * (self.n - 1) // 2:
            return f"K{self.n}"
        if self == complete_bipartite_33():
            return "K33"
        return f"G{self.n}"

    def has_edge(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return sorted(w for e in self.edges if v in e for w in e if w != v)

    def edge_ends(self) -> dict:
        """Edge key -> (tail, head); simple edges run from the smaller label."""
        return {e: e for e in sorted(self.edges)}


def complete_graph(n: int) -> SimpleGraph:
    if not isinstance(n, int) or not MIN_N <= n <= MAX_N:
        raise ValueError(f"n must be an integer in {MIN_N}..{MAX_N}, got {n!r}")
    vs = tuple(range(1, n + 1))
    return SimpleGraph(vs, frozenset(combinations(vs, 2)))


def complete_bipartite_33() -> SimpleGraph:
    """K3,3 on 1..6 with an edge between i and j exactly when i + j is odd."""
    vs = tuple(range(1, 7))
    return SimpleGraph(vs, frozenset((i, j) for i, j in combinations(vs, 2) if (i + j) % 2))


def vertex_deleted(g: SimpleGraph, v: int) -> SimpleGraph:
    if v not in g.vertices:
        raise ValueError(f"vertex {v} not in graph")
    return SimpleGraph(tuple(w for w in g.vertices if w != v),
                       frozenset(e for e in g.edges if v not in e))


def induced_subgraph(g: SimpleGraph, vertices) -> SimpleGraph:
    vs = tuple(sorted(vertices))
    keep = set(vs)
    return SimpleGraph(vs, frozenset(e for e in g.edges if e[0] in keep and e[1] in keep))


# ---------------------------------------------------------------- cycles


def canonical_cycle(vertices) -> tuple[int, ...]:
    """Rotate to the minimum vertex, then take the smaller of the two directions."""
    vs = tuple(vertices)
    if len(set(vs)) != len(vs):
        raise ValueError(f"repeated vertex in cycle {vs}")
    i = vs.index(min(vs))
    fwd = vs[i:] + vs[:i]
    back = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, back)


@dataclass(frozen=True, order=True)
class Cycle:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("a simple-graph cycle needs at least 3 vertices")
        object.__setattr__(self, "vertices", canonical_cycle(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __str__(self):
        return "[" + "".join(str(v) for v in self.vertices) + "]"

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def oriented_edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edges(self) -> frozenset:
        return frozenset(_edge(a, b) for a, b in self.oriented_edges())

    def walk(self) -> list[tuple[tuple[int, int], bool]]:
        """(edge key, traversed in stored direction) along the canonical orientation."""
        return [(_edge(a, b), a < b) for a, b in self.oriented_edges()]


@dataclass(frozen=True, order=True)
class CyclePair:
    first: Cycle
    second: Cycle

    def __post_init__(self):
        if self.first.vertex_set & self.second.vertex_set:
            raise ValueError(f"cycles {self.first} and {self.second} are not disjoint")
        a, b = self.first, self.second
        if (len(a), a) < (len(b), b):
            object.__setattr__(self, "first", b)
            object.__setattr__(self, "second", a)

    def __str__(self):
        return f"{self.first}u{self.second}"


def _cycles_from(g: SimpleGraph, k: int) -> Iterator[tuple[int, ...]]:
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def extend():
            last = path[-1]
            if len(path) == k:
                if s in adj[last] and path[1] < path[-1]:
                    yield tuple(path)
                return
            for w in sorted(adj[last]):
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend()
                    path.pop()
                    on_path.discard(w)

        yield from extend()


def cycles_of_length(g: SimpleGraph, k: int) -> list[Cycle]:
    if not 3 <= k <= g.n:
        raise ValueError(f"cycle length {k} outside 3..{g.n}")
    return sorted(Cycle(c) for c in _cycles_from(g, k))


def disjoint_cycle_pairs(g: SimpleGraph, k: int, l: int) -> list[CyclePair]:
    if k + l > g.n:
        raise ValueError(f"{k} + {l} exceeds vertex count {g.n}")
    big, small = max(k, l), min(k, l)
    out = set()
    smalls = cycles_of_length(g, small)
    for c in cycles_of_length(g, big):
        for d in smalls:
            if not (c.vertex_set & d.vertex_set):
                out.add(CyclePair(c, d))
    return sorted(out)


# ------------------------------------------------------ labeled subgraphs

# Template edges, oriented.  K5: pentagon sides e_i = i -> i+1 and diagonals
# d_i = i -> i+2 (mod 5).  K3,3: hexagon sides c_i = i -> i+1 (mod 6) and the
# three long diagonals, with template vertex p sitting at hexagon position p.
K5_TEMPLATE = {f"e{i}": (i, i % 5 + 1) for i in range(1, 6)}
K5_TEMPLATE.update({f"d{i}": (i, (i + 1) % 5 + 1) for i in range(1, 6)})

K33_TEMPLATE = {f"c{i}": (i, i % 6 + 1) for i in range(1, 7)}
K33_TEMPLATE.update({"b1": (1, 4), "b2": (5, 2), "b3": (3, 6)})

# The long diagonals all run from the odd part to the even part.  With that
# orientation the sign of a (c_i, b_k) pair is (-1)**i: c_i is parallel to the
# diagonal it misses for even i and anti-parallel for odd i.  The vertex-balance
# check in tests/test_graphs.py pins this choice.


def template_epsilon(kind: str, x: str, y: str) -> int:
    """Sign weighting a pair of disjoint template edges in the Simon sum."""
    if kind == "K5":
        if x[0] == y[0]:
            return 1 if x[0] == "e" else -1
        return -1
    if kind == "K33":
        if x[0] == y[0]:
            return 1
        c = x if x[0] == "c" else y
        return 1 if int(c[1:]) % 2 == 0 else -1
    raise ValueError(f"unknown template {kind}")


@dataclass(frozen=True)
class LabeledSubgraph:
    """A K5 or K3,3 template placed into a host graph.

    ``vertex_map[p - 1]`` is the host vertex playing template vertex ``p``.
    """

    kind: str
    vertex_map: tuple[int, ...]
    template: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        size = {"K5": 5, "K33": 6}.get(self.kind)
        if size is None or len(self.vertex_map) != size or len(set(self.vertex_map)) != size:
            raise ValueError(f"bad {self.kind} vertex map {self.vertex_map}")
        object.__setattr__(self, "template", K5_TEMPLATE if self.kind == "K5" else K33_TEMPLATE)

    def host(self, p: int) -> int:
        return self.vertex_map[p - 1]

    def edge_classes(self) -> dict[str, tuple[int, int]]:
        """Template edge name -> oriented host edge (tail, head)."""
        return {name: (self.host(a), self.host(b)) for name, (a, b) in self.template.items()}

    def disjoint_edge_pairs(self) -> list[tuple[str, str, int]]:
        out = []
        for (x, (a, b)), (y, (c, d)) in combinations(self.template.items(), 2):
            if not {a, b} & {c, d}:
                out.append((x, y, template_epsilon(self.kind, x, y)))
        return out

    def graph(self) -> SimpleGraph:
        vs = tuple(sorted(self.vertex_map))
        return SimpleGraph(vs, frozenset(_edge(a, b) for a, b in self.edge_classes().values()))

    def cycles(self) -> list[Cycle]:
        g = self.graph()
        return [c for k in range(3, g.n + 1) for c in cycles_of_length(g, k)]

    def cycle_weight(self, cycle: Cycle) -> int:
        k = len(cycle)
        if self.kind == "K5":
            return {5: 1, 4: -1}.get(k, 0)
        return {6: 1, 4: -1}.get(k, 0)


def LabeledK5(vertex_map) -> LabeledSubgraph:
    return LabeledSubgraph("K5", tuple(vertex_map))


def LabeledK33(vertex_map) -> LabeledSubgraph:
    return LabeledSubgraph("K33", tuple(vertex_map))


def k5_subgraphs_of_k6() -> list[LabeledSubgraph]:
    return [LabeledK5([w for w in range(1, 7) if w != v]) for v in range(6, 0, -1)]


def k33_subgraphs_of_k6() -> list[LabeledSubgraph]:
    out = []
    for pair in combinations(range(2, 7), 2):
        odd = (1,) + pair
        even = tuple(v for v in range(1, 7) if v not in odd)
        hexagon = [odd[0], even[0], odd[1], even[1], odd[2], even[2]]
        out.append(LabeledK33(hexagon))
    return out


# --------------------------------------------------------------------- D4


@dataclass(frozen=True)
class D4Graph:
    """Four vertices in a square with every side doubled.

    Edges 1..8: {1,2} join v1-v2, {3,4} v2-v3, {5,6} v3-v4, {7,8} v4-v1, each
    oriented along the square 1 -> 2 -> 3 -> 4 -> 1.
    """

    vertices: tuple[int, ...] = (1, 2, 3, 4)
    name: str = "D4"

    @property
    def n(self) -> int:
        return 4

    def ends(self, e: int) -> tuple[int, int]:
        if not 1 <= e <= 8:
            raise ValueError(f"D4 has no edge {e}")
        a = (e - 1) // 2 + 1
        return (a, a % 4 + 1)

    def edge_ends(self) -> dict:
        return {e: self.ends(e) for e in range(1, 9)}

    def two_cycles(self) -> list[tuple[int, int]]:
        return [(1, 2), (3, 4), (5, 6), (7, 8)]

    def four_cycles(self) -> list[tuple[int, int, int, int]]:
        return list(product((1, 2), (3, 4), (5, 6), (7, 8)))

    @staticmethod
    def walk(cycle) -> list[tuple[int, bool]]:
        if len(cycle) == 2:
            return [(cycle[0], True), (cycle[1], False)]
        return [(e, True) for e in cycle]

    @staticmethod
    def weight(cycle) -> int:
        if len(cycle) == 2:
            return 0
        return 1 if sum(cycle) % 2 == 0 else -1

    def linked_pairs(self):
        """The two pairs of disjoint 2-cycles: (e1 e2, e5 e6) and (e3 e4, e7 e8)."""
        return [((1, 2), (5, 6)), ((3, 4), (7, 8))]
