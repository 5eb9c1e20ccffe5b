"""Independent oracles used by the test suite.

Nothing here calls into the package beyond reading dataclass fields, so the
values are computed along a separate path from the code under test.
"""

from __future__ import annotations


class _UF:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        self.add(x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)

    def classes(self):
        return {self.find(x) for x in list(self.parent)}


def _global_circles(c):
    k = 0
    for ci, comp in enumerate(c.components):
        for circle in comp.circles:
            yield k, ci, circle
            k += 1


class CellComplex:
    """A CW structure on a disjoint union of surfaces.

    Each component of genus g is one 2-cell glued along the word
    a1 b1 a1' b1' ... e_j c_j e_j' ..., with one centre vertex, 2g loops and
    for every boundary circle j a connector edge e_j and one boundary edge
    per arc (closed strings and windows: a single loop edge).
    """

    def __init__(self):
        self.vertices = _UF()
        self.edges = _UF()
        self.faces = 0
        self.boundary = {}  # edge -> (v0, v1)
        self.interior = []  # (edge, v0, v1)
        self.glued = set()

    def add(self, c, side):
        for ci, comp in enumerate(c.components):
            centre = (side, "centre", ci)
            self.vertices.add(centre)
            self.faces += 1
            for h in range(2 * comp.genus):
                e = (side, "loop", ci, h)
                self.edges.add(e)
                self.interior.append((e, centre, centre))
        for k, ci, circle in _global_circles(c):
            m = max(1, len(circle.arcs))
            for j in range(m):
                self.vertices.add((side, k, j))
                e = (side, "arc", k, j)
                self.edges.add(e)
                self.boundary[e] = ((side, k, j), (side, k, (j + 1) % m))
            e = (side, "connector", k)
            self.edges.add(e)
            self.interior.append((e, (side, "centre", ci), (side, k, 0)))
        return self

    def arc_length(self, side, k):
        return sum(1 for e in self.boundary if e[0] == side and e[2] == k)

    def glue_closed(self, ka, kb):
        ea, eb = ("a", "arc", ka, 0), ("b", "arc", kb, 0)
        self.edges.union(ea, eb)
        self.vertices.union(("a", ka, 0), ("b", kb, 0))
        self.glued |= {ea, eb}

    def glue_open(self, ka, ia, kb, ib):
        ma, mb = self.arc_length("a", ka), self.arc_length("b", kb)
        ea, eb = ("a", "arc", ka, ia), ("b", "arc", kb, ib)
        self.edges.union(ea, eb)
        # boundary orientations are opposite: start of one is end of the other
        self.vertices.union(("a", ka, ia), ("b", kb, (ib + 1) % mb))
        self.vertices.union(("a", ka, (ia + 1) % ma), ("b", kb, ib))
        self.glued |= {ea, eb}

    def euler(self) -> int:
        return len(self.vertices.classes()) - len(self.edges.classes()) + self.faces

    def n_components(self) -> int:
        uf = _UF()
        for v in self.vertices.parent:
            uf.add(self.vertices.find(v))
        for e, (v0, v1) in self.boundary.items():
            uf.union(self.vertices.find(v0), self.vertices.find(v1))
        for _, v0, v1 in self.interior:
            uf.union(self.vertices.find(v0), self.vertices.find(v1))
        return len(uf.classes())

    def n_boundary_circles(self) -> int:
        uf = _UF()
        for e, (v0, v1) in self.boundary.items():
            if e in self.glued:
                continue
            a, b = self.vertices.find(v0), self.vertices.find(v1)
            uf.add(a)
            uf.union(a, b)
        return len(uf.classes())

    def total_genus(self) -> int:
        twice = 2 * self.n_components() - self.euler() - self.n_boundary_circles()
        assert twice % 2 == 0
        return twice // 2


def cell_euler(c) -> int:
    return CellComplex().add(c, "a").euler()


def sewn_complex(a, b, plan) -> CellComplex:
    cx = CellComplex().add(a, "a").add(b, "b")
    for ka, kb in plan.closed_pairs:
        cx.glue_closed(ka, kb)
    for (ka, ia), (kb, ib) in plan.open_pairs:
        cx.glue_open(ka, ia, kb, ib)
    return cx


def vanishes_by_hand(g, w, p, q, r, s, t) -> bool:
    """Vanishing predicate for one connected component, all brane
    dimensions below d, written directly from the vanishing conditions."""
    has_open = r + s + t > 0
    if g > 0 or w > 1 or t > 1 or q > 2:
        return True
    if s > 0 and q + s > 1:
        return True
    if w == 1 and (has_open or q > 1):
        return True
    if t == 1 and w == 0 and q + s > 0:
        return True
    return False


def type_by_hand(g, w, p, q, r, s, t):
    """Which of the five surviving shapes a non-vanishing tuple has."""
    if w == 1:
        return "I"
    if t == 1:
        return "V"
    if s == 1:
        return "IV"
    return {1: "II", 2: "III"}.get(q)

