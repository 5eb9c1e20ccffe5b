"""
Sewing open-closed cobordisms.

Outgoing closed strings of one cobordism are glued to incoming closed
strings of another, and outgoing open strings to incoming open strings.
Boundary circles touched by open gluings are re-traced; components are the
connected pieces of the glued surface and genus is recovered from the Euler
characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .surface import (
    CLOSED_IN,
    CLOSED_OUT,
    FREE,
    MIXED,
    OPEN_IN,
    OPEN_OUT,
    Arc,
    BoundaryCircle,
    BraneLabel,
    Cobordism,
    Component,
    endpoints,
    euler_char,
    open_arcs,
    window,
)

__all__ = [
    "SewPlan",
    "PlanMismatch",
    "IncompatibleProfiles",
    "SewResult",
    "sew",
    "sew_with_provenance",
    "trace_boundaries",
    "compose",
    "compose_plan",
    "merge_branes",
]

A, B = 0, 1


class PlanMismatch(ValueError):
    pass


class IncompatibleProfiles(ValueError):
    pass


@dataclass(frozen=True)
class SewPlan:
    closed_pairs: tuple[tuple[int, int], ...] = ()
    open_pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()


# An arc position: (side, global circle index, arc index).
Pos = tuple[int, int, int]


@dataclass
class SewResult:
    cobordism: Cobordism
    # result (circle, arc) of each surviving string -> (side, circle, arc);
    # closed strings use arc index -1
    provenance: dict[tuple[int, int], Pos] = field(default_factory=dict)


def merge_branes(a: Cobordism, b: Cobordism) -> tuple[BraneLabel, ...]:
    table = {x.name: x for x in a.branes}
    for x in b.branes:
        if x.name in table and table[x.name] != x:
            raise PlanMismatch(f"brane {x.name} has conflicting data")
        table.setdefault(x.name, x)
    return tuple(sorted(table.values(), key=lambda x: x.name))


def _check_plan(a: Cobordism, b: Cobordism, plan: SewPlan) -> None:
    used: set[tuple] = set()
    for ca, cb in plan.closed_pairs:
        try:
            xa, xb = a.circle(ca), b.circle(cb)
        except IndexError as exc:
            raise PlanMismatch(str(exc)) from None
        if xa.kind != CLOSED_OUT:
            raise PlanMismatch(f"circle {ca} of the first cobordism is not an outgoing closed string")
        if xb.kind != CLOSED_IN:
            raise PlanMismatch(f"circle {cb} of the second cobordism is not an incoming closed string")
        for key in ((A, ca), (B, cb)):
            if key in used:
                raise PlanMismatch(f"circle {key[1]} used twice")
            used.add(key)
    for (ca, ia), (cb, ib) in plan.open_pairs:
        try:
            xa, xb = a.circle(ca), b.circle(cb)
            arc_a, arc_b = xa.arcs[ia], xb.arcs[ib]
        except IndexError:
            raise PlanMismatch(f"no arc {ca}.{ia} / {cb}.{ib}") from None
        if xa.kind != MIXED or arc_a.kind != OPEN_OUT:
            raise PlanMismatch(f"arc {ca}.{ia} is not an outgoing open string")
        if xb.kind != MIXED or arc_b.kind != OPEN_IN:
            raise PlanMismatch(f"arc {cb}.{ib} is not an incoming open string")
        ea, eb = endpoints(xa, ia), endpoints(xb, ib)
        if ea != eb:
            raise PlanMismatch(
                f"endpoint labels differ: {ca}.{ia} runs {ea.source}->{ea.target}, "
                f"{cb}.{ib} runs {eb.source}->{eb.target}"
            )
        for key in ((A, ca, ia), (B, cb, ib)):
            if key in used:
                raise PlanMismatch(f"arc {key[1]}.{key[2]} used twice")
            used.add(key)


class _Tracer:
    """Walks the boundary of the glued surface."""

    def __init__(self, a: Cobordism, b: Cobordism, plan: SewPlan):
        self.circles = ({k: c for k, _, c in a.circles()}, {k: c for k, _, c in b.circles()})
        self.partner: dict[Pos, Pos] = {}
        for (ca, ia), (cb, ib) in plan.open_pairs:
            self.partner[(A, ca, ia)] = (B, cb, ib)
            self.partner[(B, cb, ib)] = (A, ca, ia)
        self.touched = {(p[0], p[1]) for p in self.partner}

    def arc(self, pos: Pos) -> Arc:
        return self.circles[pos[0]][pos[1]].arcs[pos[2]]

    def step(self, pos: Pos) -> Pos:
        side, k, i = pos
        n = len(self.circles[side][k].arcs)
        return (side, k, (i + 1) % n)

    def trace_from(self, start: Pos, visited: set[Pos]) -> tuple[BoundaryCircle, list[Optional[Pos]]]:
        word: list[Arc] = [self.arc(start)]
        origin: list[Optional[Pos]] = [None]
        visited.add(start)
        cur = start
        while True:
            o = self.step(cur)
            if o in self.partner:
                nxt = self.step(self.partner[o])
                if self.arc(nxt).brane != word[-1].brane:
                    raise AssertionError("merged free arcs carry different labels")
                if nxt == start:
                    if len(word) > 1:
                        if word[-1].brane != word[0].brane:
                            raise AssertionError("merged free arcs carry different labels")
                        word.pop()
                        origin.pop()
                    break
                visited.add(nxt)
                cur = nxt
                continue
            word.append(self.arc(o))
            origin.append(o)
            nxt = self.step(o)
            if nxt == start:
                break
            word.append(self.arc(nxt))
            origin.append(None)
            visited.add(nxt)
            cur = nxt
        if not any(x.is_open for x in word):
            return window(word[0].brane), []
        return BoundaryCircle(MIXED, None, tuple(word)), origin


def _trace(a: Cobordism, b: Cobordism, plan: SewPlan):
    """Yield (first input circle key, circle, origins) in discovery order."""
    tracer = _Tracer(a, b, plan)
    glued_closed = {(A, ca) for ca, _ in plan.closed_pairs} | {(B, cb) for _, cb in plan.closed_pairs}
    visited: set[Pos] = set()
    out = []
    for side, cob in ((A, a), (B, b)):
        for k, _, circle in cob.circles():
            if (side, k) in glued_closed:
                continue
            if (side, k) not in tracer.touched:
                if circle.kind == MIXED:
                    origin = [(side, k, i) if x.is_open else None for i, x in enumerate(circle.arcs)]
                else:
                    origin = [(side, k, -1)]
                out.append(((side, k), circle, origin))
                continue
            for i, arc in enumerate(circle.arcs):
                pos = (side, k, i)
                if arc.kind == FREE and pos not in visited:
                    traced, origin = tracer.trace_from(pos, visited)
                    out.append(((side, k), traced, origin))
    return out


def trace_boundaries(a: Cobordism, b: Cobordism, plan: SewPlan) -> list[BoundaryCircle]:
    _check_plan(a, b, plan)
    return [circle for _, circle, _ in _trace(a, b, plan)]


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def sew_with_provenance(a: Cobordism, b: Cobordism, plan: SewPlan) -> SewResult:
    branes = merge_branes(a, b)
    _check_plan(a, b, plan)
    na = a.n_circles
    comp_of = {}
    for side, cob in ((A, a), (B, b)):
        for k, ci, _ in cob.circles():
            comp_of[(side, k)] = (side, ci)
    uf = _UnionFind()
    for side, cob in ((A, a), (B, b)):
        for ci in range(len(cob.components)):
            uf.find((side, ci))
    for ca, cb in plan.closed_pairs:
        uf.union(comp_of[(A, ca)], comp_of[(B, cb)])
    open_count: dict = {}
    for (ca, _), (cb, _) in plan.open_pairs:
        uf.union(comp_of[(A, ca)], comp_of[(B, cb)])
    for (ca, _), _ in plan.open_pairs:
        root = uf.find(comp_of[(A, ca)])
        open_count[root] = open_count.get(root, 0) + 1

    chi: dict = {}
    first_circle: dict = {}
    for side, cob in ((A, a), (B, b)):
        offset = 0 if side == A else na
        for ci, comp in enumerate(cob.components):
            root = uf.find((side, ci))
            chi[root] = chi.get(root, 0) + euler_char(comp)
        for k, ci, _ in cob.circles():
            root = uf.find((side, ci))
            first_circle[root] = min(first_circle.get(root, k + offset), k + offset)

    groups: dict = {root: [] for root in chi}
    for key, circle, origin in _trace(a, b, plan):
        groups[uf.find(comp_of[key])].append((circle, origin))

    roots = sorted(groups, key=lambda r: first_circle[r])
    components = []
    provenance: dict[tuple[int, int], Pos] = {}
    k = 0
    for root in roots:
        circles = groups[root]
        if not circles:
            raise PlanMismatch("gluing closes up a component completely")
        x = chi[root] - open_count.get(root, 0)
        twice_genus = 2 - x - len(circles)
        assert twice_genus >= 0 and twice_genus % 2 == 0, "boundary tracing produced an impossible genus"
        for circle, origin in circles:
            if circle.kind in (CLOSED_IN, CLOSED_OUT):
                provenance[(k, -1)] = origin[0]
            else:
                for i, o in enumerate(origin):
                    if o is not None:
                        provenance[(k, i)] = o
            k += 1
        components.append(Component(twice_genus // 2, tuple(c for c, _ in circles)))
    return SewResult(Cobordism(branes, tuple(components)), provenance)


def sew(a: Cobordism, b: Cobordism, plan: SewPlan) -> Cobordism:
    return sew_with_provenance(a, b, plan).cobordism


def compose_plan(a: Cobordism, b: Cobordism) -> SewPlan:
    """The canonical plan gluing all outgoing strings of `a` to all incoming
    strings of `b`, matched in index order."""
    outs = [k for k, _, c in a.circles() if c.kind == CLOSED_OUT]
    ins = [k for k, _, c in b.circles() if c.kind == CLOSED_IN]
    if len(outs) != len(ins):
        raise IncompatibleProfiles(f"{len(outs)} outgoing closed strings vs {len(ins)} incoming")
    open_pairs = []
    available = open_arcs(b, OPEN_IN)
    for ka, ia, ends in open_arcs(a, OPEN_OUT):
        for j, (kb, ib, other) in enumerate(available):
            if other == ends:
                open_pairs.append(((ka, ia), (kb, ib)))
                del available[j]
                break
        else:
            raise IncompatibleProfiles(f"no incoming open string {ends.source}->{ends.target}")
    if available:
        raise IncompatibleProfiles(f"{len(available)} incoming open strings left unmatched")
    return SewPlan(tuple(zip(outs, ins)), tuple(open_pairs))


def compose(a: Cobordism, b: Cobordism) -> Cobordism:
    try:
        plan = compose_plan(a, b)
        return sew(a, b, plan)
    except PlanMismatch as exc:
        raise IncompatibleProfiles(str(exc)) from exc
