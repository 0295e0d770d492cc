"""Combinatorial link diagrams and Seifert matrices.

A diagram is a tuple of components; each component is the cyclic sequence of
crossing visits ``(cid, is_over, sign)`` met along its orientation.  Once a
diagram is extracted from a projection the coordinates are gone; everything
below works on these sequences alone.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .geometry import Projection
from .graphs import Cycle, CyclePair, D4Graph

Visit = tuple  # (cid, is_over, sign)


@dataclass(frozen=True)
class LinkDiagram:
    components: tuple

    def __post_init__(self):
        comps = tuple(tuple((int(c), bool(o), int(s)) for c, o, s in comp) for comp in self.components)
        object.__setattr__(self, "components", comps)
        roles: dict = {}
        signs: dict = {}
        for comp in comps:
            for c, o, s in comp:
                if s not in (1, -1):
                    raise ValueError(f"crossing {c} has sign {s}")
                roles.setdefault(c, []).append(o)
                if signs.setdefault(c, s) != s:
                    raise ValueError(f"crossing {c} carries two different signs")
        for c, r in roles.items():
            if sorted(r) != [False, True]:
                raise ValueError(f"crossing {c} must be visited once over and once under")

    def __len__(self):
        return len(self.components)

    @property
    def crossing_ids(self) -> list[int]:
        return sorted({c for comp in self.components for c, _, _ in comp})

    @property
    def crossing_count(self) -> int:
        return sum(len(comp) for comp in self.components) // 2

    def sign(self, cid: int) -> int:
        for comp in self.components:
            for c, _, s in comp:
                if c == cid:
                    return s
        raise ValueError(f"no crossing {cid}")

    def locate(self, cid: int) -> list[tuple[int, int, bool]]:
        """(component, position, is_over) of both visits to ``cid``."""
        out = [(k, i, o) for k, comp in enumerate(self.components) for i, (c, o, _) in enumerate(comp) if c == cid]
        if not out:
            raise ValueError(f"no crossing {cid}")
        return out

    def inter_crossings(self, a: int = 0, b: int = 1) -> list[int]:
        ca = {c for c, _, _ in self.components[a]}
        return sorted(ca & {c for c, _, _ in self.components[b]})

    def reversed_component(self, k: int) -> "LinkDiagram":
        """Reverse the orientation of component ``k``; every crossing it meets
        exactly once flips sign."""
        comps = list(self.components)
        once = {c for c, _, _ in comps[k]}
        own = {c for c, _, _ in comps[k] if sum(1 for x in comps[k] if x[0] == c) == 2}
        flip = once - own
        comps[k] = tuple(reversed(comps[k]))
        comps = [tuple((c, o, -s if c in flip else s) for c, o, s in comp) for comp in comps]
        return LinkDiagram(tuple(comps))

    def mirror(self) -> "LinkDiagram":
        return LinkDiagram(tuple(tuple((c, not o, -s) for c, o, s in comp) for comp in self.components))

    def __str__(self):
        return to_gauss(self)


# ------------------------------------------------------------ extraction


def _walk_of(graph, cycle) -> list[tuple[object, bool]]:
    if isinstance(graph, D4Graph):
        cyc = tuple(cycle)
        edges = graph.edge_ends()
        if len(cyc) not in (2, 4) or any(e not in edges for e in cyc):
            raise ValueError(f"{cycle!r} is not a D4 cycle")
        if cyc not in graph.two_cycles() and cyc not in graph.four_cycles():
            raise ValueError(f"{cycle!r} is not a D4 cycle")
        return graph.walk(cyc)
    cyc = cycle if isinstance(cycle, Cycle) else Cycle(tuple(cycle))
    for e in cyc.edges():
        if e not in graph.edges:
            raise ValueError(f"cycle {cyc} uses edge {e} missing from the graph")
    return cyc.walk()


def diagram_for_walks(proj: Projection, walks: Iterable[list]) -> LinkDiagram:
    """Restrict ``proj`` to the edges of the given closed walks."""
    walks = [list(w) for w in walks]
    owner = {}
    direction = {}
    for k, w in enumerate(walks):
        for e, fwd in w:
            if e in owner:
                raise ValueError(f"edge {e} used twice")
            owner[e] = k
            direction[e] = fwd
    keep = [(i, c) for i, c in enumerate(proj.crossings) if c.over[0] in owner and c.under[0] in owner]
    on_edge: dict = {e: [] for e in owner}
    for i, c in keep:
        on_edge[c.over[0]].append(((c.over[1], c.t_over), i, True))
        on_edge[c.under[0]].append(((c.under[1], c.t_under), i, False))
    signs = {}
    for i, c in keep:
        s = c.sign
        if not direction[c.over[0]]:
            s = -s
        if not direction[c.under[0]]:
            s = -s
        signs[i] = s
    comps = []
    for w in walks:
        seq = []
        for e, fwd in w:
            visits = sorted(on_edge[e], reverse=not fwd)
            seq.extend((i, over, signs[i]) for _, i, over in visits)
        comps.append(tuple(seq))
    return LinkDiagram(tuple(comps))


def diagram_for_cycle(proj: Projection, cycle) -> LinkDiagram:
    return diagram_for_walks(proj, [_walk_of(proj.embedding.graph, cycle)])


def diagram_for_pair(proj: Projection, pair) -> LinkDiagram:
    g = proj.embedding.graph
    if isinstance(pair, CyclePair):
        a, b = pair.first, pair.second
    else:
        a, b = pair
    if isinstance(g, D4Graph):
        if set(a) & set(b):
            raise ValueError("cycles share an edge")
    else:
        a = a if isinstance(a, Cycle) else Cycle(tuple(a))
        b = b if isinstance(b, Cycle) else Cycle(tuple(b))
        if a.vertex_set & b.vertex_set:
            raise ValueError(f"cycles {a} and {b} are not disjoint")
    return diagram_for_walks(proj, [_walk_of(g, a), _walk_of(g, b)])


# ------------------------------------------------------------ skein moves


def switch_crossing(d: LinkDiagram, cid: int) -> LinkDiagram:
    d.locate(cid)
    return LinkDiagram(tuple(
        tuple((c, not o, -s) if c == cid else (c, o, s) for c, o, s in comp) for comp in d.components
    ))


def smooth_crossing(d: LinkDiagram, cid: int) -> LinkDiagram:
    """Oriented smoothing at ``cid``."""
    (k1, i, _), (k2, j, _) = d.locate(cid)
    comps = list(d.components)
    if k1 == k2:
        s = comps[k1]
        inner = s[i + 1:j]
        outer = s[j + 1:] + s[:i]
        new = comps[:k1] + [outer, inner] + comps[k1 + 1:]
    else:
        s1, s2 = comps[k1], comps[k2]
        merged = s2[j + 1:] + s2[:j] + s1[i + 1:] + s1[:i]
        new = [c for k, c in enumerate(comps) if k not in (k1, k2)]
        new.insert(k1, merged)
    return LinkDiagram(tuple(new))


def canonical_key(d: LinkDiagram) -> tuple:
    """Rotate each component to its least renumbered form; ids renumbered by
    first appearance.  Equal keys mean the same diagram up to relabeling."""
    comps = d.components
    rotated = []
    for comp in comps:
        best = None
        for r in range(max(1, len(comp))):
            cand = comp[r:] + comp[:r]
            local: dict = {}
            enc = tuple((local.setdefault(c, len(local)), o, s) for c, o, s in cand)
            if best is None or enc < best[0]:
                best = (enc, cand)
        rotated.append(best[1] if best else comp)
    ids: dict = {}
    return tuple(tuple((ids.setdefault(c, len(ids)), o, s) for c, o, s in comp) for comp in rotated)


# ------------------------------------------------------------ gauss text


def to_gauss(d: LinkDiagram) -> str:
    ids: dict = {}
    lines = []
    for comp in d.components:
        toks = [f"{'O' if o else 'U'}{ids.setdefault(c, len(ids) + 1)}{'+' if s > 0 else '-'}" for c, o, s in comp]
        lines.append(" ".join(toks))
    return "\n".join(lines)


def from_gauss(text: str) -> LinkDiagram:
    """Inverse of to_gauss: one line per component, so "" is a crossingless knot."""
    comps = []
    for line in text.split("\n"):
        comp = []
        for tok in line.split():
            if tok[0] not in "OU" or tok[-1] not in "+-":
                raise ValueError(f"bad Gauss token {tok!r}")
            comp.append((int(tok[1:-1]), tok[0] == "O", 1 if tok[-1] == "+" else -1))
        comps.append(tuple(comp))
    return LinkDiagram(tuple(comps))


# ------------------------------------------------------ seifert surfaces


@dataclass(frozen=True)
class SeifertData:
    circles: tuple  # each circle: tuple of arc indices in order
    arc_circle: tuple  # arc -> circle
    left: dict  # crossing -> west circle
    right: dict  # crossing -> east circle
    ccw: tuple  # circle -> bool


def _knot_structure(d: LinkDiagram):
    if len(d) != 1:
        raise ValueError("Seifert matrices are computed for knot diagrams only")
    seq = d.components[0]
    m = len(seq)
    visits: dict = {}
    for k, (c, o, _) in enumerate(seq):
        visits.setdefault(c, {})[o] = k
    return seq, m, visits


def seifert_circles(d: LinkDiagram) -> SeifertData:
    """Seifert circles of a knot diagram with their planar arrangement.

    Arc ``k`` runs from visit ``k`` to visit ``k+1``.  The planar structure is
    recovered from the crossing signs alone: the ccw ray order at a positive
    crossing is (over-out, under-out, over-in, under-in) and at a negative one
    (over-out, under-in, over-in, under-out).
    """
    seq, m, visits = _knot_structure(d)
    if m == 0:
        return SeifertData(((),), (), {}, {}, (True,))
    sign = {c: s for c, _, s in seq}

    def other(k):
        c, o, _ = seq[k]
        return visits[c][not o]

    # circles: the arc arriving at visit k continues on the arc leaving the other visit
    arc_circle = [-1] * m
    circles = []
    for start in range(m):
        if arc_circle[start] >= 0:
            continue
        cur, arcs = start, []
        while arc_circle[cur] < 0:
            arc_circle[cur] = len(circles)
            arcs.append(cur)
            cur = other((cur + 1) % m)
        circles.append(tuple(arcs))

    # rotation system; slots are (crossing, role) with role in O+, U+, O-, U-
    order = {}
    for c in visits:
        rot = ["O+", "U+", "O-", "U-"] if sign[c] > 0 else ["O+", "U-", "O-", "U+"]
        order[c] = rot

    def slot_arc(c, role):
        k = visits[c][role[0] == "O"]
        return (k, True) if role[1] == "+" else ((k - 1) % m, False)

    def arrive(arc, fwd):
        """(crossing, role) where a dart along ``arc`` ends."""
        if fwd:
            c, o, _ = seq[(arc + 1) % m]
            return c, ("O" if o else "U") + "-"
        c, o, _ = seq[arc]
        return c, ("O" if o else "U") + "+"

    face_of = {}
    faces = 0
    for arc in range(m):
        for fwd in (True, False):
            if (arc, fwd) in face_of:
                continue
            dart = (arc, fwd)
            while dart not in face_of:
                face_of[dart] = faces
                c, role = arrive(*dart)
                rot = order[c]
                nxt = rot[(rot.index(role) - 1) % 4]
                dart = slot_arc(c, nxt)
            faces += 1
    n_cross = m // 2
    if faces != n_cross + 2:
        raise ValueError("diagram is not planar (face count mismatch)")

    # regions of the complement of the circles: faces joined through each band gap
    parent = list(range(faces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    left_face = lambda arc: face_of[(arc, True)]
    right_face = lambda arc: face_of[(arc, False)]
    # at each crossing the face between the two outgoing rays meets the face
    # between the two incoming rays
    # at each crossing the sector between the two outgoing rays meets the
    # sector between the two incoming rays.  The sector ccw-after ray r is the
    # left face of the dart leaving along r.
    for c in visits:
        north, south = ("O+", "O-") if sign[c] > 0 else ("U+", "U-")
        a, b = find(face_of[slot_arc(c, north)]), find(face_of[slot_arc(c, south)])
        if a != b:
            parent[a] = b

    s = len(circles)
    side = {}
    for ci, arcs in enumerate(circles):
        ls = {find(left_face(a)) for a in arcs}
        rs = {find(right_face(a)) for a in arcs}
        if len(ls) != 1 or len(rs) != 1:
            raise ValueError("inconsistent Seifert circle sides")
        side[ci] = (ls.pop(), rs.pop())
    regions = {r for pair in side.values() for r in pair}
    if len(regions) != s + 1:
        raise ValueError("circle complement has the wrong number of regions")

    # bfs on the region-circle tree from the region left of arc 0
    root = find(left_face(0))
    ccw = [None] * s
    seen = {root}
    queue = deque([root])
    while queue:
        r = queue.popleft()
        for ci, (lr, rr) in side.items():
            if ccw[ci] is not None or r not in (lr, rr):
                continue
            # the side toward the root is the exterior
            ccw[ci] = r == rr
            nxt = lr if r == rr else rr
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)

    left, right = {}, {}
    for c, v in visits.items():
        k_in = (v[sign[c] > 0] - 1) % m  # arc arriving on over (positive) / under (negative)
        k_other = (v[sign[c] < 0] - 1) % m
        left[c] = arc_circle[k_in]
        right[c] = arc_circle[k_other]
        if left[c] == right[c]:
            raise ValueError("Seifert graph has a loop")
    return SeifertData(tuple(circles), tuple(arc_circle), left, right, tuple(ccw))


def _tree_loops(n_circles: int, bands: dict) -> list[list[tuple[int, int]]]:
    """Fundamental cycles of the Seifert graph as lists of (band, direction);
    direction +1 means the band is crossed from its west circle to its east one."""
    adj: dict = {v: [] for v in range(n_circles)}
    for b, (l, r) in sorted(bands.items()):
        adj[l].append((b, r))
        adj[r].append((b, l))
    parent = {0: None}
    queue = deque([0])
    tree = set()
    while queue:
        v = queue.popleft()
        for b, w in adj[v]:
            if w not in parent:
                parent[w] = (b, v)
                tree.add(b)
                queue.append(w)
    if len(parent) != n_circles:
        raise ValueError("Seifert graph is disconnected")

    def to_root(v):
        path = [v]
        while parent[v] is not None:
            v = parent[v][1]
            path.append(v)
        return path

    def step(b, frm):
        return (b, 1 if bands[b][0] == frm else -1)

    loops = []
    for b in sorted(bands):
        if b in tree:
            continue
        l, r = bands[b]
        up_r, up_l = to_root(r), to_root(l)
        common = set(up_r) & set(up_l)
        lca = next(v for v in up_r if v in common)
        steps = [(b, 1)]
        v = r
        while v != lca:
            pb, pv = parent[v]
            steps.append(step(pb, v))
            v = pv
        down = []
        v = l
        while v != lca:
            pb, pv = parent[v]
            down.append(step(pb, pv))
            v = pv
        steps.extend(reversed(down))
        loops.append(steps)
    return loops


def seifert_matrix(d: LinkDiagram) -> list[list[int]]:
    """Seifert matrix of a knot diagram, ``V[i][j] = lk(a_i, a_j^+)``.

    The surface is the usual one: a disk for every Seifert circle, stacked so
    that nested disks sit higher, joined by a half-twisted band per crossing.
    Generators are the fundamental cycles of a spanning tree of the Seifert
    graph.  Each generator runs along a circle just inside its disk, at an
    inset equal to its track number, and crosses each band at a level equal
    to that track.  Every crossing between one curve and the pushoff of the
    other is then local to a band window and falls into one of three kinds:
    the twist inside a band, a leg meeting a run on a disk, and a band folded
    back over the disk of an enclosing circle.
    """
    data = seifert_circles(d)
    seq = d.components[0]
    m = len(seq)
    if m == 0:
        return []
    sign = {c: s for c, _, s in seq}
    bands = {c: (data.left[c], data.right[c]) for c in data.left}
    loops = _tree_loops(len(data.circles), bands)
    if len(loops) != m // 2 - len(data.circles) + 1:
        raise AssertionError("rank mismatch")

    # windows of each circle in traversal order
    windows = {}
    for ci, arcs in enumerate(data.circles):
        windows[ci] = [seq[(a + 1) % m][0] for a in arcs]
    pos = {(ci, w): k for ci, ws in windows.items() for k, w in enumerate(ws)}

    def sigma(ci, w):
        """x-direction of the disk interior at window w, east = +1."""
        return -1 if data.ccw[ci] else 1

    def is_fold(ci, w):
        west = bands[w][0] == ci
        return (sigma(ci, w) == 1) if west else (sigma(ci, w) == -1)

    def curve(loop, track):
        """Per circle: (entry band, exit band); per band: direction."""
        on_band = {b: dr for b, dr in loop}
        visits = {}
        k = len(loop)
        for i in range(k):
            b_in, d_in = loop[i]
            b_out, d_out = loop[(i + 1) % k]
            ci = bands[b_in][1] if d_in > 0 else bands[b_in][0]
            visits[ci] = (b_in, b_out)
        return {"t": track, "band": on_band, "circle": visits}

    def level(cv, ci, w):
        return cv["t"] if bands[w][0] == ci else -cv["t"]

    def run_range(cv, ci, w):
        """Interval of y covered by the curve's run at window w, or None."""
        if ci not in cv["circle"]:
            return None
        b_in, b_out = cv["circle"][ci]
        n = len(windows[ci])
        i_in, i_out, i_w = pos[(ci, b_in)], pos[(ci, b_out)], pos[(ci, w)]
        if w == b_in:
            return (level(cv, ci, w), None)
        if w == b_out:
            return (None, level(cv, ci, w))
        if (i_w - i_in) % n < (i_out - i_in) % n:
            return (None, None)
        return None

    def inside(y, rng):
        lo, hi = rng
        return (lo is None or y > lo) and (hi is None or y < hi)

    def leg_dir(cv, ci, w):
        b_in, b_out = cv["circle"][ci]
        if w == b_in:
            return sigma(ci, w)
        if w == b_out:
            return -sigma(ci, w)
        return 0

    def annotate(cv):
        cv["rr"] = {(ci, w): run_range(cv, ci, w) for ci in cv["circle"] for w in windows[ci]}
        cv["leg"] = {(ci, w): leg_dir(cv, ci, w) for ci in cv["circle"] for w in windows[ci]}
        return cv

    def pair_sum(X, Y):
        """Sum of crossing signs between curve X and the pushoff of curve Y."""
        total = 0
        for b in set(X["band"]) & set(Y["band"]):
            total -= sign[b] * X["band"][b] * Y["band"][b]
        # every disk term needs both curves on the circle (a band touches both ends)
        for ci in set(X["circle"]) & set(Y["circle"]):
            up = data.ccw[ci]  # pushoff lies above the disk
            for w in windows[ci]:
                rx, ry = X["rr"][(ci, w)], Y["rr"][(ci, w)]
                lx, ly = X["leg"][(ci, w)], Y["leg"][(ci, w)]
                if ly and rx and X["t"] < Y["t"] and inside(level(Y, ci, w), rx):
                    total += ly if up else -ly
                if lx and ry and Y["t"] < X["t"] and inside(level(X, ci, w), ry):
                    total += -lx if up else lx
                if is_fold(ci, w):
                    if w in Y["band"] and rx and inside(level(Y, ci, w), rx):
                        total += Y["band"][w]
                    if w in X["band"] and ry and inside(level(X, ci, w), ry):
                        total += X["band"][w]
        return total

    g2 = len(loops)
    curves = [annotate(curve(lp, 2 * i + 2)) for i, lp in enumerate(loops)]
    copies = [annotate(curve(lp, 2 * i + 3)) for i, lp in enumerate(loops)]
    V = [[0] * g2 for _ in range(g2)]
    for i in range(g2):
        for j in range(g2):
            s = pair_sum(curves[i], copies[j] if i == j else curves[j])
            if s % 2:
                raise AssertionError("odd crossing sum between closed curves")
            V[i][j] = s // 2
    return V
