"""
Evaluating open-closed cobordisms as linear maps.

A cobordism is decomposed into a word of elementary generators (units,
products, coproducts, zipper/cozipper, window caps) acting on tagged
strands, interleaved with strand permutations.  A generator assignment
gives each generator a matrix over finite graded sector spaces; the word is
evaluated by pushing sparse tensors of basis elements through the layers.
All signs are Koszul signs of graded strands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .classifier import VANISHES, classify_component
from .sewing import A, SewPlan, sew_with_provenance
from .surface import (
    CLOSED_IN,
    CLOSED_OUT,
    FREE,
    MIXED,
    OPEN_IN,
    OPEN_OUT,
    WINDOW,
    BraneLabel,
    Cobordism,
    Component,
    component_invariants,
    endpoints,
    validate,
)

__all__ = [
    "CLOSED",
    "open_sector",
    "SectorSpace",
    "LinearMap",
    "GENERATOR_KINDS",
    "GeneratorAssignment",
    "TableAssignment",
    "ShadowAssignment",
    "shadow_assignment",
    "Layer",
    "Decomposition",
    "DecompositionOptions",
    "UnlabeledWindow",
    "UnsupportedShape",
    "ProfileMismatch",
    "decompose",
    "evaluate",
    "evaluate_decomposition",
    "evaluate_layers",
    "equal_up_to_sign",
    "format_map",
    "generator_profile",
    "in_profile",
    "out_profile",
    "SewingCheck",
    "check_sewing",
    "ConsistencyReport",
    "SoundnessCounterexample",
    "check_classifier_consistency",
]

CLOSED = ("C",)


def open_sector(source: str, target: str) -> tuple:
    return ("O", source, target)


class UnlabeledWindow(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


class ProfileMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SectorSpace:
    """Graded bases of the closed sector and of each open sector O_IJ.

    `open` maps (I, J) to a basis; the key ("*", "*") supplies a basis for
    every pair not listed explicitly.
    """

    closed: tuple[tuple[str, int], ...]
    open: dict = field(default_factory=dict)

    def basis(self, stype: tuple) -> tuple[tuple[str, int], ...]:
        if stype == CLOSED:
            return self.closed
        key = (stype[1], stype[2])
        if key in self.open:
            return self.open[key]
        return self.open.get(("*", "*"), ())

    def dim(self, stype: tuple) -> int:
        return len(self.basis(stype))

    def degree(self, stype: tuple, index: int) -> int:
        return self.basis(stype)[index][1]

    def name(self, stype: tuple, index: int) -> str:
        return self.basis(stype)[index][0]


Entries = dict  # input basis tuple -> {output basis tuple: Fraction}


@dataclass
class LinearMap:
    """A sparse linear map between tensor products of sectors."""

    inputs: tuple
    outputs: tuple
    entries: Entries = field(default_factory=dict)

    def column(self, key: tuple) -> dict:
        return self.entries.get(key, {})

    def is_zero(self) -> bool:
        return not any(any(v for v in col.values()) for col in self.entries.values())

    def normalized(self) -> dict:
        return {
            k: {o: c for o, c in sorted(col.items()) if c}
            for k, col in sorted(self.entries.items())
            if any(col.values())
        }

    def scaled(self, s) -> "LinearMap":
        return LinearMap(
            self.inputs,
            self.outputs,
            {k: {o: s * c for o, c in col.items()} for k, col in self.entries.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.inputs == other.inputs
            and self.outputs == other.outputs
            and self.normalized() == other.normalized()
        )


# kind -> (input types, output types) as functions of the labels
def _profile(kind: str, labels: tuple) -> tuple[tuple, tuple]:
    O = open_sector
    if kind == "closed_unit":
        return (), (CLOSED,)
    if kind == "closed_mult":
        return (CLOSED, CLOSED), (CLOSED,)
    if kind == "closed_comult":
        return (CLOSED,), (CLOSED, CLOSED)
    if kind == "window_cup":
        return (), (CLOSED,)
    if kind == "open_unit":
        (i,) = labels
        return (), (O(i, i),)
    if kind == "open_mult":
        i, j, k = labels
        return (O(i, j), O(j, k)), (O(i, k),)
    if kind == "open_comult":
        i, j, k = labels
        return (O(i, k),), (O(i, j), O(j, k))
    if kind == "zipper":
        (k,) = labels
        return (CLOSED,), (O(k, k),)
    if kind == "cozipper":
        (k,) = labels
        return (O(k, k),), (CLOSED,)
    if kind == "saddle":
        i, j, k, l = labels
        return (O(i, j), O(k, l)), (O(i, l), O(k, j))
    if kind == "comodule":
        i, j = labels
        return (O(i, j),), (CLOSED, O(i, j))
    raise KeyError(kind)


GENERATOR_KINDS = {
    "closed_unit": 0,
    "closed_mult": 0,
    "closed_comult": 0,
    "window_cup": 1,
    "open_unit": 1,
    "open_mult": 3,
    "open_comult": 3,
    "zipper": 1,
    "cozipper": 1,
    "saddle": 4,
    "comodule": 2,
}


def generator_profile(kind: str, labels: tuple) -> tuple[tuple, tuple]:
    if kind not in GENERATOR_KINDS:
        raise KeyError(f"unknown generator {kind!r}")
    if len(labels) != GENERATOR_KINDS[kind]:
        raise ValueError(f"{kind} takes {GENERATOR_KINDS[kind]} labels, got {len(labels)}")
    return _profile(kind, tuple(labels))


class GeneratorAssignment:
    """Assigns a linear map to every elementary generator."""

    space: SectorSpace

    def generator(self, kind: str, labels: tuple = ()) -> LinearMap:
        raise NotImplementedError


class TableAssignment(GeneratorAssignment):
    """Generators given by sparse entries; missing entries are zero.

    Entries are keyed by (kind, label pattern); a pattern may use "*" for
    any label, and the most specific matching pattern wins.
    """

    def __init__(self, space: SectorSpace, tables: Optional[dict] = None):
        self.space = space
        self.tables: dict = tables or {}
        self._cache: dict = {}

    def set_entry(self, kind: str, pattern: tuple, inp: tuple, out: tuple, coeff) -> None:
        table = self.tables.setdefault((kind, tuple(pattern)), {})
        col = table.setdefault(tuple(inp), {})
        col[tuple(out)] = col.get(tuple(out), Fraction(0)) + Fraction(coeff)
        self._cache.clear()

    def _lookup(self, kind: str, labels: tuple) -> dict:
        best, best_wild = None, None
        for (k, pattern), table in self.tables.items():
            if k != kind or len(pattern) != len(labels):
                continue
            if all(p == "*" or p == x for p, x in zip(pattern, labels)):
                wild = sum(p == "*" for p in pattern)
                if best_wild is None or wild < best_wild:
                    best, best_wild = table, wild
        return best or {}

    def generator(self, kind: str, labels: tuple = ()) -> LinearMap:
        key = (kind, tuple(labels))
        if key not in self._cache:
            ins, outs = generator_profile(kind, tuple(labels))
            self._cache[key] = LinearMap(ins, outs, self._lookup(kind, tuple(labels)))
        return self._cache[key]


class ShadowAssignment(GeneratorAssignment):
    """The rank-two closed sector {u, c}, c of degree -d, with c*c = 0, and
    rank-one degree-zero open sectors.

    By default open products o_IJ*o_JK are nonzero only when I=J or J=K.
    With offdiagonal_products=True every composable product is o_IK; that
    variant violates the sewing property as soon as two branes have
    different Euler characteristic.
    """

    U, C_ = 0, 1

    def __init__(self, d: int, chi_m: int, branes: Iterable[BraneLabel] = (), offdiagonal_products: bool = False):
        if d < 1:
            raise ValueError("d must be at least 1")
        self.d = d
        self.chi_m = chi_m
        self.branes = {b.name: b for b in branes}
        self.offdiagonal_products = offdiagonal_products
        self.space = SectorSpace((("u", 0), ("c", -d)), {("*", "*"): (("o", 0),)})
        self._cache: dict = {}

    def chi(self, name: str) -> int:
        try:
            return self.branes[name].chi
        except KeyError:
            raise ProfileMismatch(f"shadow has no brane {name!r}") from None

    def generator(self, kind: str, labels: tuple = ()) -> LinearMap:
        key = (kind, tuple(labels))
        if key not in self._cache:
            ins, outs = generator_profile(kind, tuple(labels))
            self._cache[key] = LinearMap(ins, outs, self._entries(kind, tuple(labels)))
        return self._cache[key]

    def _entries(self, kind: str, labels: tuple) -> dict:
        u, c = self.U, self.C_
        one = Fraction(1)
        if kind == "closed_unit":
            return {(): {(u,): one}}
        if kind == "closed_mult":
            return {(u, u): {(u,): one}, (u, c): {(c,): one}, (c, u): {(c,): one}}
        if kind == "closed_comult":
            return {(u,): {(c, c): Fraction(self.chi_m)}} if self.chi_m else {}
        if kind == "window_cup":
            x = self.chi(labels[0])
            return {(): {(c,): Fraction(x)}} if x else {}
        if kind == "open_unit":
            return {(): {(0,): one}}
        if kind == "open_mult":
            i, j, k = labels
            if self.offdiagonal_products or i == j or j == k:
                return {(0, 0): {(0,): one}}
            return {}
        if kind == "zipper":
            return {(u,): {(0,): one}}
        if kind == "cozipper":
            x = self.chi(labels[0])
            return {(0,): {(c,): Fraction(x)}} if x else {}
        # open_comult, saddle, comodule: no room in the degree-0 open sectors
        return {}


def shadow_assignment(d: int, chi_m: int, branes: Iterable[BraneLabel] = (), **kw) -> ShadowAssignment:
    return ShadowAssignment(d, chi_m, branes, **kw)


# -- decomposition ----------------------------------------------------------


@dataclass(frozen=True)
class Layer:
    """Either a permutation (new strand i = old strand perm[i]) or a
    generator applied to the last len(inputs) strands."""

    kind: str
    labels: tuple = ()
    perm: tuple = ()

    def __str__(self) -> str:
        if self.kind == "perm":
            return "perm" + str(list(self.perm))
        return self.kind + ("[" + ",".join(self.labels) + "]" if self.labels else "")


@dataclass
class Decomposition:
    inputs: list  # [(stype, tag)]
    outputs: list
    layers: list[Layer] = field(default_factory=list)

    def generators(self) -> list[str]:
        return [str(x) for x in self.layers if x.kind != "perm"]


@dataclass(frozen=True)
class DecompositionOptions:
    """Canonical choices, exposed so tests can perturb them.

    rotation: per mixed circle, which outgoing arc plays the final role
        (index into the circle's outgoing arcs, taken modulo their number);
        for purely incoming circles, which free arc starts the product.
    reverse_merge: merge incoming closed strings in reverse order.
    explicit_units: always start a lone open circle from an open unit.
    core_last: absorb windows before incoming closed strings.
    """

    rotation: int = 0
    reverse_merge: bool = False
    explicit_units: bool = False
    core_last: bool = False


def _strand_key(tag) -> tuple:
    return (tag[1], tag[2])


def _circle_strands(k: int, circle) -> tuple[list, list]:
    ins, outs = [], []
    if circle.kind == CLOSED_IN:
        ins.append((CLOSED, ("in", k, -1)))
    elif circle.kind == CLOSED_OUT:
        outs.append((CLOSED, ("out", k, -1)))
    elif circle.kind == MIXED:
        for i, arc in enumerate(circle.arcs):
            if arc.is_open:
                e = endpoints(circle, i)
                entry = (open_sector(e.source, e.target), (("in" if arc.kind == OPEN_IN else "out"), k, i))
                (ins if arc.kind == OPEN_IN else outs).append(entry)
    return ins, outs


def in_profile(c: Cobordism) -> list:
    """Incoming strands ordered by (circle, arc)."""
    return [s for k, _, circle in c.circles() for s in _circle_strands(k, circle)[0]]


def out_profile(c: Cobordism) -> list:
    return [s for k, _, circle in c.circles() for s in _circle_strands(k, circle)[1]]


class _Builder:
    """Tracks tagged strands while emitting layers."""

    def __init__(self, inputs: Sequence):
        self.strands = list(inputs)
        self.layers: list[Layer] = []
        self._fresh = 0

    def fresh(self) -> tuple:
        self._fresh += 1
        return ("tmp", self._fresh)

    def _position(self, tag) -> int:
        for i, (_, t) in enumerate(self.strands):
            if t == tag:
                return i
        raise KeyError(tag)

    def bring_to_end(self, tags: Sequence) -> None:
        picked = [self._position(t) for t in tags]
        rest = [i for i in range(len(self.strands)) if i not in picked]
        perm = tuple(rest + picked)
        if perm != tuple(range(len(self.strands))):
            self.layers.append(Layer("perm", perm=perm))
            self.strands = [self.strands[i] for i in perm]

    def permute_to(self, tags: Sequence) -> None:
        if sorted(map(repr, tags)) != sorted(repr(t) for _, t in self.strands):
            raise ProfileMismatch("final strands do not match the output profile")
        self.bring_to_end(tags)

    def apply(self, kind: str, labels: tuple, in_tags: Sequence, out_tags: Optional[Sequence] = None) -> list:
        ins, outs = generator_profile(kind, tuple(labels))
        self.bring_to_end(in_tags)
        n = len(in_tags)
        actual = [t for t, _ in self.strands[len(self.strands) - n:]] if n else []
        if tuple(actual) != ins:
            raise ProfileMismatch(f"{kind}{labels}: expected inputs {ins}, got {tuple(actual)}")
        if out_tags is None:
            out_tags = [self.fresh() for _ in outs]
        self.layers.append(Layer(kind, tuple(labels)))
        del self.strands[len(self.strands) - n:]
        self.strands.extend(zip(outs, out_tags))
        return list(out_tags)


def _rotate_from(arcs: Sequence, start: int) -> list[tuple[int, object]]:
    n = len(arcs)
    return [((start + j) % n, arcs[(start + j) % n]) for j in range(n)]


def _decompose_component(bld: _Builder, comp: Component, first: int, opts: DecompositionOptions) -> None:
    inv = component_invariants(comp)
    closed_ins, closed_outs, windows, r_circles, out_circles = [], [], [], [], []
    for j, circle in enumerate(comp.circles):
        k = first + j
        if circle.kind == CLOSED_IN:
            closed_ins.append(("in", k, -1))
        elif circle.kind == CLOSED_OUT:
            closed_outs.append(("out", k, -1))
        elif circle.kind == WINDOW:
            if circle.brane is None:
                raise UnlabeledWindow(f"window at circle {k} has no brane label")
            windows.append(circle.brane)
        elif circle.kind == MIXED:
            if OPEN_OUT in circle.open_kinds():
                out_circles.append((k, circle))
            else:
                r_circles.append((k, circle))
        else:
            raise UnsupportedShape(f"circle {k} of kind {circle.kind}")

    lone = (
        len(out_circles) == 1
        and not closed_ins
        and not closed_outs
        and not windows
        and not r_circles
        and comp.genus == 0
    )

    # closed items feeding the core, in merge order
    items: list = []
    ins_order = list(reversed(closed_ins)) if opts.reverse_merge else list(closed_ins)
    items += [("strand", t) for t in ins_order]
    for k, circle in r_circles:
        items.append(("rcircle", (k, circle)))
    window_items = [("window", w) for w in windows]
    items = window_items + items if opts.core_last else items + window_items

    def realize(item) -> tuple:
        what, data = item
        if what == "strand":
            return data
        if what == "window":
            return bld.apply("window_cup", (data,), [])[0]
        k, circle = data
        return _absorb_incoming(bld, k, circle, opts)

    core = None
    if not lone:
        for item in items:
            x = realize(item)
            if core is None:
                core = x
            elif item[0] == "window":
                core = bld.apply("closed_mult", (), [x, core])[0]
            else:
                core = bld.apply("closed_mult", (), [core, x])[0]
        if core is None:
            core = bld.apply("closed_unit", (), [])[0]
        for _ in range(comp.genus):
            a, b = bld.apply("closed_comult", (), [core])
            core = bld.apply("closed_mult", (), [a, b])[0]
        n_dest = len(closed_outs) + len(out_circles)
        if n_dest == 0:
            raise UnsupportedShape("component without outgoing strings")
        dests = []
        for _ in range(n_dest - 1):
            a, core = bld.apply("closed_comult", (), [core])
            dests.append(a)
        dests.append(core)
        for tag, target in zip(dests, closed_outs):
            bld.strands[bld._position(tag)] = (CLOSED, target)
        feeds = dests[len(closed_outs):]
    else:
        feeds = [None]

    for (k, circle), feed in zip(out_circles, feeds):
        _emit_outgoing(bld, k, circle, feed, opts, inv)


def _absorb_incoming(bld: _Builder, k: int, circle, opts: DecompositionOptions) -> tuple:
    free_positions = [i for i, a in enumerate(circle.arcs) if a.kind == FREE]
    start = free_positions[opts.rotation % len(free_positions)]
    word = _rotate_from(circle.arcs, start)
    f0 = word[0][1].brane
    acc = None
    left = f0
    for i, arc in word:
        if arc.kind != OPEN_IN:
            continue
        tag = ("in", k, i)
        e = endpoints(circle, i)
        if acc is None:
            acc = tag
        else:
            acc = bld.apply("open_mult", (f0, left, e.target), [acc, tag])[0]
        left = e.target
    return bld.apply("cozipper", (f0,), [acc])[0]


def _emit_outgoing(bld: _Builder, k: int, circle, feed, opts: DecompositionOptions, inv) -> None:
    outs = [i for i, a in enumerate(circle.arcs) if a.kind == OPEN_OUT]
    star = outs[opts.rotation % len(outs)]
    word = _rotate_from(circle.arcs, star)  # [o*, F0, x1, F1, ..., F_m]
    f0 = word[1][1].brane
    rest = word[2:]
    pending = [(i, a) for i, a in rest if a.is_open]
    if feed is not None:
        r = bld.apply("zipper", (f0,), [feed])[0]
    elif pending and pending[0][1].kind == OPEN_IN and not opts.explicit_units:
        i0 = pending[0][0]
        r = ("in", k, i0)
        pending = pending[1:]
    else:
        r = bld.apply("open_unit", (f0,), [])[0]
    for i, arc in pending:
        e = endpoints(circle, i)
        if arc.kind == OPEN_IN:
            r = bld.apply("open_mult", (f0, e.source, e.target), [r, ("in", k, i)])[0]
        else:
            # R in O_{F0 F_{i-1}} splits into O_{F0 F_i} (x) O_{F_i F_{i-1}}
            r, _ = bld.apply("open_comult", (f0, e.source, e.target), [r], [bld.fresh(), ("out", k, i)])
    pos = bld._position(r)
    stype = bld.strands[pos][0]
    e = endpoints(circle, star)
    if stype != open_sector(e.source, e.target):
        raise UnsupportedShape(f"circle {k}: built {stype}, expected {open_sector(e.source, e.target)}")
    bld.strands[pos] = (stype, ("out", k, star))


def decompose(c: Cobordism, options: DecompositionOptions = DecompositionOptions()) -> Decomposition:
    bad = [v for v in validate(c) if v.kind != "PositiveBoundaryViolation"]
    if bad:
        raise UnsupportedShape("; ".join(map(str, bad)))
    ins, outs = in_profile(c), out_profile(c)
    bld = _Builder(ins)
    first = 0
    for comp in c.components:
        _decompose_component(bld, comp, first, options)
        first += len(comp.circles)
    bld.permute_to([t for _, t in outs])
    return Decomposition(ins, outs, bld.layers)


# -- evaluation -------------------------------------------------------------


def _perm_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    odd = [degrees[i] % 2 for i in perm]
    swaps = 0
    for a in range(len(perm)):
        if not odd[a]:
            continue
        for b in range(a + 1, len(perm)):
            if odd[b] and perm[a] > perm[b]:
                swaps += 1
    return -1 if swaps % 2 else 1


class _Runner:
    def __init__(self, ga: GeneratorAssignment):
        self.ga = ga
        self.space = ga.space

    def _degrees(self, types, key) -> list[int]:
        return [self.space.degree(t, i) for t, i in zip(types, key)]

    def run(self, layers: Sequence, types: list, state: dict) -> tuple[list, dict]:
        for layer in layers:
            if isinstance(layer, Layer) and layer.kind == "perm":
                new = {}
                perm = layer.perm
                for key, coeff in state.items():
                    sign = _perm_sign(perm, self._degrees(types, key))
                    nk = tuple(key[i] for i in perm)
                    new[nk] = new.get(nk, 0) + sign * coeff
                types = [types[i] for i in perm]
                state = new
                continue
            lin = layer if isinstance(layer, LinearMap) else self.ga.generator(layer.kind, layer.labels)
            n = len(lin.inputs)
            cut = len(types) - n
            if tuple(types[cut:]) != tuple(lin.inputs):
                raise ProfileMismatch(f"layer {layer} expects {lin.inputs}, strands are {tuple(types[cut:])}")
            new = {}
            for key, coeff in state.items():
                head, tail = key[:cut], key[cut:]
                col = lin.column(tail)
                if not col:
                    continue
                left = sum(self._degrees(types[:cut], head))
                in_deg = sum(self._degrees(lin.inputs, tail))
                for out, x in col.items():
                    if not x:
                        continue
                    shift = sum(self._degrees(lin.outputs, out)) - in_deg
                    sign = -1 if (shift * left) % 2 else 1
                    nk = head + out
                    new[nk] = new.get(nk, 0) + sign * coeff * x
            types = types[:cut] + list(lin.outputs)
            state = {k: v for k, v in new.items() if v}
        return types, state


def _basis_tuples(space: SectorSpace, types: Sequence) -> Iterable[tuple]:
    return itertools.product(*(range(space.dim(t)) for t in types))


def evaluate_layers(ga: GeneratorAssignment, inputs: Sequence, outputs: Sequence, layers: Sequence) -> LinearMap:
    runner = _Runner(ga)
    in_types = [t for t, _ in inputs]
    entries = {}
    for key in _basis_tuples(ga.space, in_types):
        types, state = runner.run(layers, list(in_types), {tuple(key): Fraction(1)})
        if tuple(types) != tuple(t for t, _ in outputs):
            raise ProfileMismatch("layer word does not end in the output profile")
        col = {k: Fraction(v) for k, v in state.items() if v}
        if col:
            entries[tuple(key)] = col
    return LinearMap(tuple(in_types), tuple(t for t, _ in outputs), entries)


def evaluate_decomposition(dec: Decomposition, ga: GeneratorAssignment) -> LinearMap:
    return evaluate_layers(ga, dec.inputs, dec.outputs, dec.layers)


def evaluate(c: Cobordism, ga: GeneratorAssignment, options: DecompositionOptions = DecompositionOptions()) -> LinearMap:
    return evaluate_decomposition(decompose(c, options), ga)


def equal_up_to_sign(x: LinearMap, y: LinearMap) -> Optional[int]:
    """+1 or -1 if x == sign*y, else None (+1 when both vanish)."""
    if x == y:
        return 1
    if x == y.scaled(-1):
        return -1
    return None


def format_map(m: LinearMap, space: SectorSpace) -> list[str]:
    def name(types, key):
        if not types:
            return "1"
        return "(x)".join(space.name(t, i) for t, i in zip(types, key))

    lines = []
    for key, col in m.normalized().items():
        terms = []
        for out, coeff in col.items():
            terms.append(f"{coeff}*{name(m.outputs, out)}")
        lines.append(f"{name(m.inputs, key)} -> " + " + ".join(terms))
    return lines or ["zero map"]


# -- sewing functoriality ----------------------------------------------------


@dataclass
class SewingCheck:
    passed: bool
    sign: Optional[int]
    sewn: LinearMap
    composite: LinearMap


def check_sewing(a: Cobordism, b: Cobordism, plan: SewPlan, ga: GeneratorAssignment) -> SewingCheck:
    """Compare the evaluation of the sewn cobordism with the composition of
    the evaluations of the pieces, strand by strand."""
    res = sew_with_provenance(a, b, plan)
    sewn = evaluate(res.cobordism, ga)
    map_a, map_b = evaluate(a, ga), evaluate(b, ga)

    def origin(tag):
        o = res.provenance[(tag[1], tag[2])]
        return ("a" if o[0] == A else "b", o[1], o[2])

    r_in = [(t, origin(tag)) for t, tag in in_profile(res.cobordism)]
    r_out = [(t, origin(tag)) for t, tag in out_profile(res.cobordism)]

    glued = {}
    for ca, cb in plan.closed_pairs:
        glued[("b", cb, -1)] = ("a", ca, -1)
    for (ca, ia), (cb, ib) in plan.open_pairs:
        glued[("b", cb, ib)] = ("a", ca, ia)

    a_in = [("a", tag[1], tag[2]) for _, tag in in_profile(a)]
    a_out = [("a", tag[1], tag[2]) for _, tag in out_profile(a)]
    b_in = [glued.get(("b", tag[1], tag[2]), ("b", tag[1], tag[2])) for _, tag in in_profile(b)]
    b_out = [("b", tag[1], tag[2]) for _, tag in out_profile(b)]

    bld = _Builder(r_in)
    layers: list = []

    def block(lin: LinearMap, ins, outs):
        bld.bring_to_end(ins)
        layers.extend(bld.layers)
        bld.layers = []
        layers.append(lin)
        del bld.strands[len(bld.strands) - len(ins):]
        bld.strands.extend(zip(lin.outputs, outs))

    block(map_a, a_in, a_out)
    block(map_b, b_in, b_out)
    bld.permute_to([tag for _, tag in r_out])
    layers.extend(bld.layers)
    composite = evaluate_layers(ga, r_in, r_out, layers)
    sign = equal_up_to_sign(sewn, composite)
    return SewingCheck(sign is not None, sign, sewn, composite)


# -- classifier cross-check --------------------------------------------------


class SoundnessCounterexample(AssertionError):
    pass


@dataclass
class ConsistencyReport:
    checked: int = 0
    vanishing: int = 0
    counterexamples: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)  # type -> (cobordism, map)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and set(self.witnesses) == {"I", "II", "III", "IV", "V"}


def check_classifier_consistency(
    family: Iterable[Cobordism], ga: GeneratorAssignment, strict: bool = False
) -> ConsistencyReport:
    """Every classifier-vanishing cobordism evaluates to zero; every type of
    possibly nontrivial operation has a nonzero instance."""
    report = ConsistencyReport()
    for c in family:
        comp = c.components[0]
        inv = component_invariants(comp)
        verdict = classify_component(inv)
        m = evaluate(c, ga)
        report.checked += 1
        if verdict.kind == VANISHES:
            report.vanishing += 1
            if not m.is_zero():
                report.counterexamples.append((c, verdict.rule))
                if strict:
                    raise SoundnessCounterexample(f"{inv} ({verdict.rule}) evaluates nonzero")
        elif verdict.btype and verdict.btype not in report.witnesses and not m.is_zero():
            report.witnesses[verdict.btype] = (c, m)
    return report
