"""
Vanishing decisions for degree-zero string operations.

A connected cobordism either satisfies one of the vanishing conditions on
its invariant tuple (g, omega, p, q, r, s, t), or it belongs to exactly one
of five types whose operations can be nonzero.  Some vanishing arguments
need a brane of dimension below d = dim M; when that hypothesis is not
assumed, the relevant conditions report Inconclusive instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .surface import (
    FREE,
    MIXED,
    OPEN_IN,
    OPEN_OUT,
    Cobordism,
    CobordismInvariants,
    Component,
    component_invariants,
    endpoints,
)

__all__ = [
    "RULES",
    "CITATIONS",
    "Hypotheses",
    "Verdict",
    "VANISHES",
    "POSSIBLY_NONTRIVIAL",
    "INCONCLUSIVE",
    "INVALID",
    "classify_component",
    "fired_rules",
    "match_type",
    "component_hypotheses",
    "Classification",
    "classify",
    "ExhaustivenessReport",
    "CounterexampleFound",
    "check_exhaustiveness",
]

VANISHES = "Vanishes"
POSSIBLY_NONTRIVIAL = "PossiblyNontrivial"
INCONCLUSIVE = "Inconclusive"
INVALID = "Invalid"

RULES = (
    "GenusPositive",
    "MultiWindow",
    "MultiMixed",
    "ThreeOutClosed",
    "OutOpenOverflow",
    "WindowWithOpen",
    "WindowMultiOutClosed",
    "MixedWithExtraOut",
)

CITATIONS = {
    "GenusPositive": "ThmA(I)(i)",
    "MultiWindow": "ThmA(I)(ii)",
    "MultiMixed": "ThmA(I)(iii)",
    "ThreeOutClosed": "ThmA(I)(iv)",
    "OutOpenOverflow": "ThmA(I)(v)",
    "WindowWithOpen": "ThmA(II)(i)",
    "WindowMultiOutClosed": "ThmA(II)(ii)",
    "MixedWithExtraOut": "ThmA(III)",
}

TYPE_CITATIONS = {t: f"ThmB({t})" for t in ("I", "II", "III", "IV", "V")}


@dataclass(frozen=True)
class Hypotheses:
    """Which dimension hypotheses hold for the labels of one component.

    free_label: some free arc on a mixed circle has dim < d (open window).
    crossing_label: some free arc on a circle with both in- and outgoing
        open strings has dim < d (double saddle, comodule map).
    outgoing_label: some endpoint of an outgoing open string has dim < d.
    """

    free_label: bool = True
    crossing_label: bool = True
    outgoing_label: bool = True


ASSUMED = Hypotheses()

_MISSING = {
    "free_label": "a free-arc brane of dimension < d",
    "crossing_label": "a brane of dimension < d on a circle with incoming and outgoing open strings",
    "outgoing_label": "an outgoing open-string brane of dimension < d",
}


@dataclass(frozen=True)
class Verdict:
    kind: str
    rule: Optional[str] = None
    btype: Optional[str] = None
    missing: Optional[str] = None
    reason: Optional[str] = None

    @property
    def citation(self) -> str:
        if self.rule:
            return CITATIONS[self.rule]
        if self.btype:
            return TYPE_CITATIONS[self.btype]
        return ""

    def label(self) -> str:
        return {
            VANISHES: "VANISHES",
            POSSIBLY_NONTRIVIAL: "POSSIBLY-NONTRIVIAL",
            INCONCLUSIVE: "INCONCLUSIVE",
            INVALID: "INVALID",
        }[self.kind]


def _conditions(inv: CobordismInvariants) -> list[tuple[str, bool, Optional[str]]]:
    """(rule, fires, hypothesis needed or None) in the fixed rule order."""
    g, w, _, q, r, s, t = inv.astuple()
    has_open = r + s + t >= 1
    return [
        ("GenusPositive", g >= 1, None),
        ("MultiWindow", w >= 2, "free_label" if has_open else None),
        ("MultiMixed", t >= 2, "crossing_label"),
        ("ThreeOutClosed", q >= 3, None),
        ("OutOpenOverflow", s >= 1 and s + q >= 2, "outgoing_label"),
        ("WindowWithOpen", g == 0 and w == 1 and has_open, "free_label"),
        ("WindowMultiOutClosed", g == 0 and w == 1 and not has_open and q >= 2, None),
        ("MixedWithExtraOut", g == 0 and w == 0 and t == 1 and q + s >= 1, "crossing_label"),
    ]


def fired_rules(inv: CobordismInvariants) -> list[str]:
    return [rule for rule, fires, _ in _conditions(inv) if fires]


def match_type(inv: CobordismInvariants) -> list[str]:
    """Every possibly-nontrivial type whose defining tuple pattern matches."""
    g, w, _, q, r, s, t = inv.astuple()
    found = []
    if g == 0 and w == 1 and q == 1 and r == s == t == 0:
        found.append("I")
    if g == 0 and w == 0 and q == 1 and s == t == 0:
        found.append("II")
    if g == 0 and w == 0 and q == 2 and s == t == 0:
        found.append("III")
    if g == 0 and w == 0 and q == 0 and s == 1 and t == 0:
        found.append("IV")
    if g == 0 and w == 0 and q == 0 and s == 0 and t == 1:
        found.append("V")
    return found


def classify_component(
    inv: CobordismInvariants,
    hypotheses: Hypotheses = ASSUMED,
    order: Optional[Sequence[str]] = None,
) -> Verdict:
    if inv.q + inv.s + inv.t == 0:
        return Verdict(INVALID, reason="needs an outgoing string (q+s+t>=1)")
    conditions = _conditions(inv)
    if order is not None:
        rank = {rule: i for i, rule in enumerate(order)}
        conditions.sort(key=lambda c: rank[c[0]])
    missing = None
    for rule, fires, needs in conditions:
        if not fires:
            continue
        if needs is None or getattr(hypotheses, needs):
            return Verdict(VANISHES, rule=rule)
        if missing is None:
            missing = _MISSING[needs]
    if missing is not None:
        return Verdict(INCONCLUSIVE, missing=missing)
    types = match_type(inv)
    if len(types) != 1:
        return Verdict(INVALID, reason=f"tuple {inv} matches types {types}")
    return Verdict(POSSIBLY_NONTRIVIAL, btype=types[0])


def component_hypotheses(comp: Component, dims: dict[str, int], d: int) -> Hypotheses:
    """Evaluate the dimension hypotheses against actual brane dimensions."""
    free_label = crossing_label = outgoing_label = False
    for circle in comp.circles:
        if circle.kind != MIXED:
            continue
        labels = {a.brane for a in circle.arcs if a.kind == FREE}
        low = any(dims[x] < d for x in labels)
        free_label |= low
        if circle.open_kinds() == {OPEN_IN, OPEN_OUT}:
            crossing_label |= low
        for i, arc in enumerate(circle.arcs):
            if arc.kind == OPEN_OUT:
                e = endpoints(circle, i)
                outgoing_label |= dims[e.source] < d or dims[e.target] < d
    return Hypotheses(free_label, crossing_label, outgoing_label)


@dataclass
class Classification:
    overall: Verdict
    components: list[tuple[CobordismInvariants, Verdict]] = field(default_factory=list)

    @property
    def types(self) -> list[str]:
        return [v.btype for _, v in self.components if v.btype]


def classify(c: Cobordism, d: int, assume_low_dims: bool = True) -> Classification:
    """Classify every component; the overall verdict vanishes as soon as one
    tensor factor does."""
    dims = {b.name: b.dim for b in c.branes}
    results = []
    for comp in c.components:
        inv = component_invariants(comp)
        hyp = ASSUMED if assume_low_dims else component_hypotheses(comp, dims, d)
        results.append((inv, classify_component(inv, hyp)))
    verdicts = [v for _, v in results]
    if any(v.kind == INVALID for v in verdicts):
        first = next(v for v in verdicts if v.kind == INVALID)
        overall = Verdict(INVALID, reason=first.reason)
    elif any(v.kind == VANISHES for v in verdicts):
        overall = next(v for v in verdicts if v.kind == VANISHES)
    elif any(v.kind == INCONCLUSIVE for v in verdicts):
        overall = next(v for v in verdicts if v.kind == INCONCLUSIVE)
    else:
        overall = Verdict(POSSIBLY_NONTRIVIAL, btype=",".join(v.btype for v in verdicts))
    return Classification(overall, results)


class CounterexampleFound(AssertionError):
    pass


@dataclass
class ExhaustivenessReport:
    bound: int
    checked: int = 0
    vanishing: int = 0
    by_type: dict[str, int] = field(default_factory=dict)
    survivors_iv: set[tuple[int, int]] = field(default_factory=set)
    counterexamples: list[tuple[tuple[int, ...], str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def check_exhaustiveness(bound: int, strict: bool = False) -> ExhaustivenessReport:
    """Enumerate every tuple with entries <= bound and q+s+t >= 1 under the
    all-dimensions-below-d regime and check that it either vanishes or falls
    in exactly one type."""
    if bound < 3:
        raise ValueError("bound must be at least 3")
    report = ExhaustivenessReport(bound)
    allowed_iv = {(1, 0), (2, 0), (0, 1)}
    for tup in itertools.product(range(bound + 1), repeat=7):
        g, w, p, q, r, s, t = tup
        if q + s + t < 1:
            continue
        inv = CobordismInvariants(*tup)
        report.checked += 1
        v = classify_component(inv)
        types = match_type(inv)
        if v.kind == VANISHES:
            report.vanishing += 1
            if types:
                report.counterexamples.append((tup, f"vanishes but matches {types}"))
            continue
        if v.kind != POSSIBLY_NONTRIVIAL or len(types) != 1:
            report.counterexamples.append((tup, f"{v.kind} with types {types}"))
            continue
        report.by_type[v.btype] = report.by_type.get(v.btype, 0) + 1
        if g == w == t == 0:
            report.survivors_iv.add((q, s))
            if (q, s) not in allowed_iv:
                report.counterexamples.append((tup, f"survivor (q,s)={(q, s)}"))
        if w == 1 and not (r == s == t == 0 and q == 1):
            report.counterexamples.append((tup, "window survivor outside type I"))
        if t == 1 and q + s != 0:
            report.counterexamples.append((tup, "mixed survivor with extra outgoing strings"))
    if strict and report.counterexamples:
        raise CounterexampleFound(report.counterexamples[0])
    return report
