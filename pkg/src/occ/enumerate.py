"""Bounded families of connected cobordisms and random composable pairs."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .sewing import SewPlan
from .surface import (
    OPEN_IN,
    OPEN_OUT,
    Arc,
    BoundaryCircle,
    BraneLabel,
    Cobordism,
    Component,
    closed_in,
    closed_out,
    component_invariants,
    free,
    mixed,
    open_arcs,
    window,
)

__all__ = [
    "FamilyBounds",
    "mixed_words",
    "circle_types",
    "family",
    "random_plan",
    "random_pair",
    "random_pairs",
    "default_pool",
    "DEFAULT_BRANES",
]

DEFAULT_BRANES = (BraneLabel("K", 0, 2), BraneLabel("L", 1, 0))


@dataclass(frozen=True)
class FamilyBounds:
    max_genus: int = 2
    max_windows: int = 2
    max_circles: int = 5
    max_arcs: int = 6
    # mixed circles per component; the unrestricted family is far too large
    # to evaluate exhaustively
    max_mixed: int = 2


def mixed_words(labels: Sequence[str], max_arcs: int) -> list[BoundaryCircle]:
    """One representative per rotation class of alternating words."""
    seen = set()
    out = []
    slots = [(lab, kind) for lab in labels for kind in (OPEN_IN, OPEN_OUT)]
    for m in range(1, max_arcs // 2 + 1):
        for word in itertools.product(slots, repeat=m):
            rep = min(word[i:] + word[:i] for i in range(m))
            if rep in seen:
                continue
            seen.add(rep)
            arcs: list[Arc] = []
            for lab, kind in rep:
                arcs += [free(lab), Arc(kind)]
            out.append(mixed(*arcs))
    return out


def circle_types(labels: Sequence[str], bounds: FamilyBounds) -> tuple[list, list, list]:
    closed = [closed_in(), closed_out()]
    windows = [window(x) for x in labels]
    return closed, windows, mixed_words(labels, bounds.max_arcs)


def family(
    branes: Sequence[BraneLabel] = DEFAULT_BRANES,
    bounds: FamilyBounds = FamilyBounds(),
    positive_only: bool = True,
) -> Iterator[Cobordism]:
    """Connected cobordisms within the bounds, in a fixed order."""
    labels = [b.name for b in branes]
    _, windows, words = circle_types(labels, bounds)
    branes = tuple(branes)
    for n_mixed in range(bounds.max_mixed + 1):
        for ms in itertools.combinations_with_replacement(range(len(words)), n_mixed):
            for n_win in range(bounds.max_windows + 1):
                for ws in itertools.combinations_with_replacement(range(len(windows)), n_win):
                    room = bounds.max_circles - n_mixed - n_win
                    for p in range(room + 1):
                        for q in range(room - p + 1):
                            circles = (
                                [closed_in()] * p
                                + [closed_out()] * q
                                + [windows[i] for i in ws]
                                + [words[i] for i in ms]
                            )
                            if not circles:
                                continue
                            for g in range(bounds.max_genus + 1):
                                comp = Component(g, tuple(circles))
                                if positive_only:
                                    inv = component_invariants(comp)
                                    if inv.q + inv.s + inv.t < 1:
                                        continue
                                yield Cobordism(branes, (comp,))


def _disjoint(x: Cobordism, y: Cobordism) -> Cobordism:
    return Cobordism(x.branes, x.components + y.components)


def random_plan(a: Cobordism, b: Cobordism, rng: random.Random) -> Optional[SewPlan]:
    outs = [k for k, _, c in a.circles() if c.kind == "closed_out"]
    ins = [k for k, _, c in b.circles() if c.kind == "closed_in"]
    rng.shuffle(ins)
    n_closed = rng.randint(0, min(len(outs), len(ins)))
    closed = tuple(zip(rng.sample(outs, n_closed), ins[:n_closed]))
    o_out = open_arcs(a, OPEN_OUT)
    o_in = open_arcs(b, OPEN_IN)
    rng.shuffle(o_out)
    opens = []
    used = set()
    for ka, ia, ends in o_out:
        if rng.random() < 0.3:
            continue
        match = [(kb, ib) for kb, ib, e in o_in if e == ends and (kb, ib) not in used]
        if match:
            kb, ib = rng.choice(match)
            used.add((kb, ib))
            opens.append(((ka, ia), (kb, ib)))
    if not closed and not opens:
        return None
    return SewPlan(tuple(sorted(closed)), tuple(sorted(opens)))


def random_pair(pool: Sequence[Cobordism], rng: random.Random, tries: int = 200):
    for _ in range(tries):
        a = rng.choice(pool)
        b = rng.choice(pool)
        if rng.random() < 0.2:
            b = _disjoint(b, rng.choice(pool))
        plan = random_plan(a, b, rng)
        if plan is not None:
            return a, b, plan
    raise RuntimeError("no composable pair found")


def default_pool(rng: random.Random, size: int = 400, ga=None) -> list[Cobordism]:
    """A sample of the family weighted towards pieces whose operations are
    nonzero (under `ga` if given, else not classified as vanishing), so that
    sewing checks compare nonzero maps."""
    from .classifier import VANISHES, classify_component

    everything = list(family(bounds=FamilyBounds(max_genus=1, max_circles=4)))
    live, dead = [], []
    for c in everything:
        if ga is not None:
            from .tqft import evaluate

            alive = not evaluate(c, ga).is_zero()
        else:
            alive = classify_component(component_invariants(c.components[0])).kind != VANISHES
        (live if alive else dead).append(c)
    n_live = min(len(live), (3 * size) // 4)
    n_dead = min(len(dead), size - n_live, max(1, n_live // 3))
    return rng.sample(live, n_live) + rng.sample(dead, n_dead)


def random_pairs(n: int, seed: int = 0, pool: Optional[Sequence[Cobordism]] = None, pool_size: int = 400, ga=None):
    """n pseudo-random composable (a, b, plan) triples from the family."""
    rng = random.Random(seed)
    if pool is None:
        pool = default_pool(rng, pool_size, ga)
    return [random_pair(pool, rng) for _ in range(n)]
