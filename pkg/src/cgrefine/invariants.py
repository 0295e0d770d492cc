"""Numerical invariants of diagrams and spatial graphs.

Two independent routes to the Conway polynomial of a knot are provided:
``conway_polynomial`` expands the Seifert form determinant, and
``conway_skein`` runs the skein recursion down to descending diagrams.
Every caller that cares about correctness compares the two.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .diagram import (
    LinkDiagram,
    diagram_for_cycle,
    diagram_for_pair,
    diagram_for_walks,
    seifert_matrix,
)
from .errors import InternalError, InvariantViolation
from .geometry import Projection
from .graphs import D4Graph, LabeledSubgraph

SKEIN_BUDGET = 1_000_000

# ------------------------------------------------------------ polynomials
# Integer polynomials are coefficient lists, lowest degree first, no trailing zeros.


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(p, q):
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def pneg(p):
    return [-c for c in p]


def pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def pdiv_exact(p, q):
    """Quotient of p by q; raises if the division leaves a remainder."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    out = [0] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for k in range(len(out) - 1, -1, -1):
        c = p[k + len(q) - 1]
        if c % lead:
            raise InternalError("inexact polynomial division")
        c //= lead
        out[k] = c
        if c:
            for j, b in enumerate(q):
                p[k + j] -= c * b
    if any(p):
        raise InternalError("inexact polynomial division")
    return _trim(out)


def poly_det(M) -> list:
    """Determinant of a square matrix of integer polynomials (Bareiss)."""
    n = len(M)
    if n == 0:
        return [1]
    A = [[list(x) for x in row] for row in M]
    sgn = 1
    prev = [1]
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sgn = -sgn
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = padd(pmul(A[i][j], A[k][k]), pneg(pmul(A[i][k], A[k][j])))
                A[i][j] = pdiv_exact(num, prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return det if sgn > 0 else pneg(det)


def int_det(M) -> int:
    d = poly_det([[[x] if x else [] for x in row] for row in M])
    return d[0] if d else 0


# ------------------------------------------------------------------ conway


@dataclass(frozen=True)
class ConwayPolynomial:
    coeffs: tuple  # coefficient of z**k at index k

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            coef = str(c) if (k == 0 or abs(c) != 1) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def _conway(coeffs) -> ConwayPolynomial:
    return ConwayPolynomial(tuple(_trim(list(coeffs))))


def conway_from_seifert(V) -> ConwayPolynomial:
    """Conway polynomial from a Seifert matrix of a knot.

    det(tV - V^T) = t^g * sum a_2k (t - 2 + 1/t)^k, which is the usual
    substitution z = x - 1/x with t = x^2.
    """
    n = len(V)
    if n % 2:
        raise InternalError("odd Seifert matrix size")
    g = n // 2
    M = [[_trim([-V[j][i], V[i][j]]) for j in range(n)] for i in range(n)]
    delta = poly_det(M)
    delta = delta + [0] * (2 * g + 1 - len(delta))
    if len(delta) != 2 * g + 1:
        raise InternalError("Alexander polynomial degree exceeds 2g")
    # laurent coefficients c[-g..g] stored at offset g; peel (t - 2 + 1/t)^k
    c = list(delta)
    if c != c[::-1]:
        raise InternalError("Alexander polynomial is not symmetric")
    base = [1, -2, 1]
    powers = [[1]]
    for _ in range(g):
        powers.append(pmul(powers[-1], base))
    out = [0] * (g + 1)
    for k in range(g, -1, -1):
        a = c[g + k]
        out[k] = a
        if a:
            shifted = [0] * (g - k) + [a * x for x in powers[k]]
            c = [x - y for x, y in zip(c, shifted + [0] * (len(c) - len(shifted)))]
    if any(c):
        raise InternalError("Conway expansion left a remainder")
    z = [0] * (2 * g + 1)
    for k, a in enumerate(out):
        z[2 * k] = a
    return _conway(z)


def conway_polynomial(k: LinkDiagram) -> ConwayPolynomial:
    if len(k) != 1:
        raise ValueError("expected a knot diagram")
    V = seifert_matrix(k)
    if V and int_det([[V[i][j] - V[j][i] for j in range(len(V))] for i in range(len(V))]) != 1:
        raise InternalError("V - V^T is not unimodular")
    return conway_from_seifert(V)


def _solve_unimodular(A, B):
    """A^-1 B for an integer matrix with det A = 1, by fraction-free
    Gauss-Jordan elimination; every division below is exact."""
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    prev = 1
    flips = 0
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k]), None)
        if piv is None:
            raise InternalError("singular matrix")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            flips += 1
        pk = M[k][k]
        rk = M[k]
        for i in range(n):
            if i == k:
                continue
            ri = M[i]
            f = ri[k]
            M[i] = [(pk * x - f * y) // prev for x, y in zip(ri, rk)]
        prev = pk
    if prev * (-1) ** flips != 1 or any(M[i][i] != prev for i in range(n)):
        raise InternalError("determinant is not 1")
    return [[x * prev for x in row[n:]] for row in M]


def seifert_a2(V) -> int:
    """a2 from a Seifert matrix without expanding the Alexander polynomial.

    With A = V - V^T and M = A^-1 V, det(A + hV) = 1 + g h + (C(g,2) + a2) h^2
    + O(h^3), and the h^2 coefficient of det(I + hM) is e2(M).
    """
    n = len(V)
    if n == 0:
        return 0
    if n % 2:
        raise InternalError("odd Seifert matrix size")
    A = [[V[i][j] - V[j][i] for j in range(n)] for i in range(n)]
    M = _solve_unimodular(A, V)
    tr = sum(M[i][i] for i in range(n))
    tr2 = sum(M[i][j] * M[j][i] for i in range(n) for j in range(n))
    g = n // 2
    if tr != g:
        raise InternalError("trace of A^-1 V differs from the genus")
    if (tr * tr - tr2) % 2:
        raise InternalError("non-integral a2")
    return (tr * tr - tr2) // 2 - g * (g - 1) // 2


def conway_a2(k: LinkDiagram) -> int:
    """z^2 coefficient by the Seifert route."""
    if len(k) != 1:
        raise ValueError("expected a knot diagram")
    return seifert_a2(seifert_matrix(k))


def arf(k: LinkDiagram) -> int:
    return conway_a2(k) % 2


def _reduce(comps: list) -> list:
    """Remove kinks (a crossing met twice in a row) and bigons where one strand
    passes over two consecutive crossings that the other strand also meets
    consecutively.  Both are isotopies, so the Conway polynomial is unchanged."""
    comps = [list(c) for c in comps]
    changed = True
    while changed:
        changed = False
        where = {}
        for k, comp in enumerate(comps):
            for i, (c, o, _) in enumerate(comp):
                where[(c, o)] = (k, i)
        for k, comp in enumerate(comps):
            n = len(comp)
            for i in range(n):
                x, y = comp[i], comp[(i + 1) % n]
                drop = None
                if n >= 2 and x[0] == y[0]:
                    drop = {x[0]}
                elif n >= 2 and x[1] == y[1]:
                    k1, j1 = where[(x[0], not x[1])]
                    k2, j2 = where[(y[0], not y[1])]
                    if k1 == k2 and (j1 - j2) % len(comps[k1]) in (1, len(comps[k1]) - 1):
                        drop = {x[0], y[0]}
                if drop:
                    comps = [[v for v in cc if v[0] not in drop] for cc in comps]
                    changed = True
                    break
            if changed:
                break
    return comps


def _plan(comps: list):
    """Choose basepoints, component order and target (descending or ascending)
    minimising the crossings that still need switching.  Returns the crossing to
    branch on, or None when the diagram is already monotone."""
    pos: dict = {}
    for k, comp in enumerate(comps):
        for i, (c, o, _) in enumerate(comp):
            pos.setdefault(c, []).append((k, i, o))
    best = None
    orders = [list(range(len(comps)))]
    if len(comps) == 2:
        orders.append([1, 0])
    for want in (True, False):
        rots = []
        intra_cost = 0
        for k, comp in enumerate(comps):
            n = len(comp)
            own = [(v[0][1], v[0][2], v[1][1], v[1][2]) for v in pos.values() if v[0][0] == k and v[1][0] == k]
            own = [(p, po, q, qo) if p < q else (q, qo, p, po) for p, po, q, qo in own]
            top = None
            for r in range(max(n, 1)):
                wrong = sum(1 for p, po, q, qo in own if ((po if (r <= p or r > q) else qo) != want))
                if top is None or wrong < top[0]:
                    top = (wrong, r)
            rots.append(top[1])
            intra_cost += top[0]
        for order in orders:
            rank = {k: i for i, k in enumerate(order)}
            inter = 0
            for v in pos.values():
                (k1, _, o1), (k2, _, o2) = v
                if k1 != k2:
                    first = o1 if rank[k1] < rank[k2] else o2
                    inter += first != want
            cost = intra_cost + inter
            if best is None or cost < best[0]:
                best = (cost, want, order, rots)
    cost, want, order, rots = best
    if cost == 0:
        return None
    seen = set()
    for k in order:
        comp = comps[k]
        r = rots[k]
        for c, o, sgn in comp[r:] + comp[:r]:
            if c in seen:
                continue
            seen.add(c)
            if o != want:
                return c, sgn
    raise AssertionError("unreachable")


def _switch(comps, cid):
    return [[(c, not o, -s) if c == cid else (c, o, s) for c, o, s in comp] for comp in comps]


def _smooth(comps, cid):
    locs = [(k, i) for k, comp in enumerate(comps) for i, v in enumerate(comp) if v[0] == cid]
    (k1, i), (k2, j) = locs
    if k1 == k2:
        s = comps[k1]
        return comps[:k1] + [s[j + 1:] + s[:i], s[i + 1:j]] + comps[k1 + 1:]
    s1, s2 = comps[k1], comps[k2]
    merged = s2[j + 1:] + s2[:j] + s1[i + 1:] + s1[:i]
    rest = [c for k, c in enumerate(comps) if k not in (k1, k2)]
    return [merged] + rest


def _key(comps) -> tuple:
    out = []
    for comp in comps:
        best = None
        for r in range(max(1, len(comp))):
            local: dict = {}
            enc = tuple((local.setdefault(c, len(local)), o, s) for c, o, s in comp[r:] + comp[:r])
            if best is None or enc < best[0]:
                best = (enc, r)
        out.append((best[0], best[1]))
    # crossing ids are shared between components, so renumber globally after rotation
    ids: dict = {}
    rotated = [comp[r:] + comp[:r] for comp, (_, r) in zip(comps, out)]
    return tuple(tuple((ids.setdefault(c, len(ids)), o, s) for c, o, s in comp) for comp in rotated)


def _is_split(comps) -> bool:
    # components joined by shared crossings; split if more than one class
    n = len(comps)
    ids = [{c for c, _, _ in comp} for comp in comps]
    reach = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in reach and ids[i] & ids[j]:
                reach.add(j)
                stack.append(j)
    return len(reach) < n


class _Skein:
    def __init__(self, budget):
        self.memo: dict = {}
        self.budget = budget
        self.nodes = 0

    def __call__(self, comps: list, deg: int) -> tuple:
        """Coefficients of z^0..z^deg."""
        comps = _reduce(comps)
        n = len(comps)
        # an n-component link has nabla divisible by z^(n-1); a knot's is 1 + O(z^2)
        if deg < n - 1:
            return ()
        if n > 1 and (any(not c for c in comps) or _is_split(comps)):
            return ()
        if n == 1 and deg < 2:
            return (1,)
        key = (deg, _key(comps))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.nodes > self.budget:
            raise InternalError(f"skein recursion exceeded {self.budget} nodes")
        step = _plan(comps)
        if step is None:
            res = (1,) if n == 1 else ()
        else:
            c, s = step
            a = self(_switch(comps, c), deg)
            b = self(_smooth(comps, c), deg - 1)
            out = list(a) + [0] * max(0, len(b) + 1 - len(a))
            for i, x in enumerate(b):
                out[i + 1] += s * x
            res = tuple(_trim(out[:deg + 1]))
        self.memo[key] = res
        return res


_SHARED = _Skein(SKEIN_BUDGET)


def conway_skein(d: LinkDiagram, budget: int = SKEIN_BUDGET, max_degree: int | None = None) -> ConwayPolynomial:
    """Skein recursion: nabla(L) = nabla(L switched) + sign * z * nabla(L smoothed)
    at the first crossing that spoils a descending (or ascending) traversal.
    Monotone diagrams are the base case: one component gives 1, more give 0.

    With ``max_degree`` only the coefficients up to that power are computed,
    which keeps the recursion polynomial; the full expansion is exponential in
    the worst case."""
    if len(d) > 2:
        raise ValueError("at most two components")
    ev = _SHARED if budget == SKEIN_BUDGET else _Skein(budget)
    ev.nodes = 0
    if len(ev.memo) > 2_000_000:
        ev.memo.clear()
    deg = 2 * d.crossing_count + 2 if max_degree is None else max_degree
    return _conway(ev([list(c) for c in d.components], deg))


def conway_a2_skein(k: LinkDiagram) -> int:
    return conway_skein(k, max_degree=2)[2]


def linking_number(d: LinkDiagram) -> int:
    if len(d) != 2:
        raise ValueError("linking number needs a 2-component diagram")
    inter = set(d.inter_crossings(0, 1))
    total = sum(s for c, _, s in d.components[0] if c in inter)
    if total % 2:
        raise InternalError("odd inter-component crossing sum")
    return total // 2


# ------------------------------------------------------- graph invariants


def edge_crossing_number(proj: Projection, a, b) -> int:
    """Signed crossing count between the images of two oriented edges."""
    return sum(c.sign for c in proj.crossings
               if {c.over[0], c.under[0]} == {a, b} and a != b)


def _host_edge(lab: LabeledSubgraph, name):
    tail, head = lab.edge_classes()[name]
    key = (tail, head) if tail < head else (head, tail)
    return key, 1 if tail < head else -1


def simon_invariant(proj: Projection, lab: LabeledSubgraph) -> int:
    """Sum over disjoint template edge pairs of eps(x, y) times the signed
    crossing count of their images, with template orientations."""
    total = 0
    for x, y, eps in lab.disjoint_edge_pairs():
        ex, ox = _host_edge(lab, x)
        ey, oy = _host_edge(lab, y)
        total += eps * ox * oy * edge_crossing_number(proj, ex, ey)
    return total


def alpha_omega(proj: Projection, family, a2=None) -> int:
    """Weighted a2 sum over the cycles of a K5, K3,3 or D4.

    ``family`` is a LabeledSubgraph for K5 / K3,3 or the string "D4".  ``a2``
    overrides how each knot diagram is evaluated (defaults to the Seifert route).
    """
    a2 = a2 or conway_a2
    g = proj.embedding.graph
    if family == "D4" or isinstance(family, D4Graph):
        if not isinstance(g, D4Graph):
            raise ValueError("embedding is not a D4 embedding")
        return sum(g.weight(c) * a2(diagram_for_cycle(proj, c)) for c in g.four_cycles())
    if not isinstance(family, LabeledSubgraph):
        raise ValueError(f"unknown family {family!r}")
    if isinstance(g, D4Graph):
        raise ValueError("family does not match a D4 embedding")
    total = 0
    for cyc in family.cycles():
        w = family.cycle_weight(cyc)
        if w:
            total += w * a2(diagram_for_cycle(proj, cyc))
    return total


def d4_linking_numbers(proj: Projection) -> tuple[int, int]:
    g = proj.embedding.graph
    out = []
    for a, b in g.linked_pairs():
        out.append(linking_number(diagram_for_walks(proj, [g.walk(a), g.walk(b)])))
    return tuple(out)


# ---------------------------------------------------------- classification


class KnotClass(enum.Enum):
    UNKNOT = "Unknot"
    TREFOIL = "Trefoil"
    FIGURE_EIGHT = "FigureEight"
    OUT_OF_SCOPE = "OutOfScope"


class LinkClass(enum.Enum):
    TRIVIAL = "Trivial"
    HOPF = "Hopf"
    TORUS24 = "Torus24"
    OUT_OF_SCOPE = "OutOfScope"


def _check_bound(stick_bound):
    if stick_bound > 7:
        raise ValueError("classification tables only cover stick bounds up to 7")


def classify_knot(a2: int, stick_bound: int) -> KnotClass:
    """Knots with at most 7 sticks are unknots, trefoils (6+) or figure-eights (7)."""
    _check_bound(stick_bound)
    if a2 == 0:
        return KnotClass.UNKNOT
    if a2 == 1 and stick_bound >= 6:
        return KnotClass.TREFOIL
    if a2 == -1 and stick_bound >= 7:
        return KnotClass.FIGURE_EIGHT
    raise InvariantViolation(f"a2 = {a2} is impossible for a knot with at most {stick_bound} sticks")


def classify_link(lk: int, stick_bound: int) -> LinkClass:
    _check_bound(stick_bound)
    if lk == 0:
        return LinkClass.TRIVIAL
    if abs(lk) == 1 and stick_bound >= 6:
        return LinkClass.HOPF
    if abs(lk) == 2 and stick_bound >= 7:
        return LinkClass.TORUS24
    raise InvariantViolation(f"lk = {lk} is impossible for a link with at most {stick_bound} sticks")


__all__ = [
    "ConwayPolynomial", "KnotClass", "LinkClass", "alpha_omega", "arf", "classify_knot",
    "classify_link", "conway_a2", "conway_a2_skein", "conway_from_seifert", "conway_polynomial",
    "conway_skein", "d4_linking_numbers", "seifert_a2", "diagram_for_pair", "edge_crossing_number",
    "linking_number", "poly_det", "simon_invariant",
]
