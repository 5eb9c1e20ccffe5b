"""
Combinatorial open-closed cobordisms.

A cobordism is a list of connected components.  Each component is an
orientable surface of some genus whose boundary circles are one of

* an incoming or outgoing closed string,
* a window (a free boundary circle, optionally labelled by a brane),
* a mixed circle: a cyclic word alternating free arcs (labelled by branes)
  and open strings (incoming or outgoing).

Everything here is immutable; invariants are recomputed on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

__all__ = [
    "BraneLabel",
    "Arc",
    "FREE",
    "OPEN_IN",
    "OPEN_OUT",
    "free",
    "open_in",
    "open_out",
    "BoundaryCircle",
    "CLOSED_IN",
    "CLOSED_OUT",
    "WINDOW",
    "MIXED",
    "closed_in",
    "closed_out",
    "window",
    "mixed",
    "Component",
    "Cobordism",
    "CobordismInvariants",
    "OpenStringEndpoints",
    "Violation",
    "validate",
    "invariants",
    "component_invariants",
    "euler_char",
    "canonical_key",
    "canonical_form",
    "endpoints",
    "open_arcs",
]

FREE = "free"
OPEN_IN = "in"
OPEN_OUT = "out"

CLOSED_IN = "closed_in"
CLOSED_OUT = "closed_out"
WINDOW = "window"
MIXED = "mixed"


@dataclass(frozen=True, order=True)
class BraneLabel:
    name: str
    dim: int
    chi: int


@dataclass(frozen=True)
class Arc:
    kind: str
    brane: Optional[str] = None

    @property
    def is_open(self) -> bool:
        return self.kind in (OPEN_IN, OPEN_OUT)

    def token(self) -> tuple:
        return (self.kind, self.brane or "")


def free(brane: str) -> Arc:
    return Arc(FREE, brane)


def open_in() -> Arc:
    return Arc(OPEN_IN)


def open_out() -> Arc:
    return Arc(OPEN_OUT)


@dataclass(frozen=True)
class BoundaryCircle:
    kind: str
    brane: Optional[str] = None
    arcs: tuple[Arc, ...] = ()

    def open_kinds(self) -> set[str]:
        return {a.kind for a in self.arcs if a.is_open}

    def token(self) -> tuple:
        """Rotation-normalised comparable form of this circle."""
        if self.kind == MIXED:
            word = [a.token() for a in self.arcs]
            rotations = [tuple(word[i:] + word[:i]) for i in range(len(word))] or [()]
            return (3, min(rotations))
        if self.kind == WINDOW:
            return (2, self.brane or "")
        return ({CLOSED_IN: 0, CLOSED_OUT: 1}[self.kind],)


def closed_in() -> BoundaryCircle:
    return BoundaryCircle(CLOSED_IN)


def closed_out() -> BoundaryCircle:
    return BoundaryCircle(CLOSED_OUT)


def window(brane: Optional[str] = None) -> BoundaryCircle:
    return BoundaryCircle(WINDOW, brane)


def mixed(*arcs: Arc) -> BoundaryCircle:
    return BoundaryCircle(MIXED, None, tuple(arcs))


@dataclass(frozen=True)
class Component:
    genus: int
    circles: tuple[BoundaryCircle, ...]


@dataclass(frozen=True)
class Cobordism:
    branes: tuple[BraneLabel, ...]
    components: tuple[Component, ...]

    def brane(self, name: str) -> BraneLabel:
        for b in self.branes:
            if b.name == name:
                return b
        raise KeyError(name)

    def brane_table(self) -> dict[str, BraneLabel]:
        return {b.name: b for b in self.branes}

    def circles(self) -> Iterator[tuple[int, int, BoundaryCircle]]:
        """Yield (global circle index, component index, circle) in file order."""
        k = 0
        for ci, comp in enumerate(self.components):
            for circle in comp.circles:
                yield k, ci, circle
                k += 1

    def circle(self, index: int) -> BoundaryCircle:
        for k, _, circle in self.circles():
            if k == index:
                return circle
        raise IndexError(f"no circle {index}")

    def component_of(self, index: int) -> int:
        for k, ci, _ in self.circles():
            if k == index:
                return ci
        raise IndexError(f"no circle {index}")

    @property
    def n_circles(self) -> int:
        return sum(len(c.circles) for c in self.components)


@dataclass(frozen=True)
class CobordismInvariants:
    g: int
    omega: int
    p: int
    q: int
    r: int
    s: int
    t: int

    def astuple(self) -> tuple[int, ...]:
        return (self.g, self.omega, self.p, self.q, self.r, self.s, self.t)

    def __str__(self) -> str:
        return "(g={},w={},p={},q={},r={},s={},t={})".format(*self.astuple())


@dataclass(frozen=True)
class OpenStringEndpoints:
    source: str
    target: str


@dataclass(frozen=True)
class Violation:
    kind: str
    location: str
    message: str = ""

    def __str__(self) -> str:
        return f"{self.kind} at {self.location}: {self.message}"


def endpoints(circle: BoundaryCircle, arc_index: int) -> OpenStringEndpoints:
    """Brane labels at the two ends of an open-string arc.

    Strings are read in the direction they run.  For an incoming arc the
    preceding free arc (in stored cyclic order) is the source and the
    following one the target; an outgoing arc runs the other way round the
    boundary, so its source follows it and its target precedes it.
    """
    arcs = circle.arcs
    arc = arcs[arc_index]
    if not arc.is_open:
        raise ValueError(f"arc {arc_index} is not an open string")
    n = len(arcs)
    before = arcs[(arc_index - 1) % n].brane
    after = arcs[(arc_index + 1) % n].brane
    if arc.kind == OPEN_IN:
        return OpenStringEndpoints(before, after)
    return OpenStringEndpoints(after, before)


def open_arcs(c: Cobordism, kind: str) -> list[tuple[int, int, OpenStringEndpoints]]:
    """(circle, arc, endpoints) for every open arc of the given kind, in file order."""
    out = []
    for k, _, circle in c.circles():
        if circle.kind != MIXED:
            continue
        for i, arc in enumerate(circle.arcs):
            if arc.kind == kind:
                out.append((k, i, endpoints(circle, i)))
    return out


def _mixed_violations(circle: BoundaryCircle, where: str) -> list[Violation]:
    arcs = circle.arcs
    found = []
    if not arcs:
        return [Violation("EmptyMixed", where, "mixed circle has no arcs")]
    if len(arcs) % 2:
        found.append(Violation("OddMixed", where, f"{len(arcs)} arcs"))
    for i, arc in enumerate(arcs):
        if arc.kind not in (FREE, OPEN_IN, OPEN_OUT):
            found.append(Violation("BadArc", f"{where}.{i}", arc.kind))
    n = len(arcs)
    for i in range(n):
        if n > 1 and (arcs[i].kind == FREE) == (arcs[(i + 1) % n].kind == FREE):
            found.append(
                Violation("AlternationViolation", f"{where}.{i}", "adjacent arcs of the same sort")
            )
            break
    if not any(a.is_open for a in arcs):
        found.append(Violation("NoOpenArcs", where, "mixed circle without open strings"))
    return found


def validate(c: Cobordism) -> list[Violation]:
    """Every violated invariant, with its location.  Empty means valid."""
    found: list[Violation] = []
    names = set()
    for b in c.branes:
        if b.name in names:
            found.append(Violation("DuplicateBrane", f"brane {b.name}"))
        names.add(b.name)
        if b.dim < 0:
            found.append(Violation("NegativeDim", f"brane {b.name}", str(b.dim)))
    if not c.components:
        found.append(Violation("EmptyCobordism", "cobordism", "no components"))
    k = 0
    for ci, comp in enumerate(c.components):
        if comp.genus < 0:
            found.append(Violation("NegativeGenus", f"component {ci}", str(comp.genus)))
        if not comp.circles:
            found.append(Violation("NoBoundary", f"component {ci}", "component has no circles"))
        for circle in comp.circles:
            where = f"circle {k}"
            if circle.kind == MIXED:
                found.extend(_mixed_violations(circle, where))
                for i, arc in enumerate(circle.arcs):
                    if arc.kind == FREE and arc.brane not in names:
                        found.append(Violation("UnknownBrane", f"{where}.{i}", str(arc.brane)))
            elif circle.kind == WINDOW:
                if circle.brane is not None and circle.brane not in names:
                    found.append(Violation("UnknownBrane", where, circle.brane))
            elif circle.kind not in (CLOSED_IN, CLOSED_OUT):
                found.append(Violation("BadCircle", where, circle.kind))
            k += 1
        inv = component_invariants(comp)
        if inv.q + inv.s + inv.t < 1:
            found.append(
                Violation(
                    "PositiveBoundaryViolation",
                    f"component {ci}",
                    "needs an outgoing string (q+s+t>=1)",
                )
            )
    return found


def component_invariants(comp: Component) -> CobordismInvariants:
    omega = p = q = r = s = t = 0
    for circle in comp.circles:
        if circle.kind == CLOSED_IN:
            p += 1
        elif circle.kind == CLOSED_OUT:
            q += 1
        elif circle.kind == WINDOW:
            omega += 1
        else:
            kinds = circle.open_kinds()
            if kinds == {OPEN_IN}:
                r += 1
            elif kinds == {OPEN_OUT}:
                s += 1
            elif kinds:
                t += 1
    return CobordismInvariants(comp.genus, omega, p, q, r, s, t)


def invariants(c: Cobordism) -> list[CobordismInvariants]:
    return [component_invariants(comp) for comp in c.components]


def euler_char(comp: Component) -> int:
    return 2 - 2 * comp.genus - len(comp.circles)


def _component_key(comp: Component) -> tuple:
    return (comp.genus, tuple(sorted(circle.token() for circle in comp.circles)))


def canonical_key(c: Cobordism) -> tuple:
    """A comparable value identifying the cobordism up to rotation of arc
    words, reordering of circles within a component and reordering of
    components.  Brane data (including window labels) is part of the key."""
    branes = tuple(sorted((b.name, b.dim, b.chi) for b in c.branes))
    comps = tuple(sorted(_component_key(comp) for comp in c.components))
    return (branes, comps)


def _canonical_circle(circle: BoundaryCircle) -> BoundaryCircle:
    if circle.kind != MIXED or not circle.arcs:
        return circle
    n = len(circle.arcs)
    best = min(range(n), key=lambda i: [a.token() for a in circle.arcs[i:] + circle.arcs[:i]])
    return BoundaryCircle(MIXED, None, circle.arcs[best:] + circle.arcs[:best])


def canonical_form(c: Cobordism) -> Cobordism:
    """The representative of c's canonical_key: branes sorted by name,
    arc words at their minimal rotation, circles and components sorted."""
    comps = []
    for comp in c.components:
        circles = sorted((_canonical_circle(x) for x in comp.circles), key=lambda x: x.token())
        comps.append(Component(comp.genus, tuple(circles)))
    comps.sort(key=_component_key)
    return Cobordism(tuple(sorted(c.branes)), tuple(comps))
