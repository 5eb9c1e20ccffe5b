"""
Line-oriented text formats.

Cobordisms (.occ)::

    brane K dim 0 chi 2
    component genus 0
    circle closed in
    circle window K
    circle arcs free I, open in, free K, open out

Sew plans::

    closed 1 -> 0
    open 0.3 -> 1.1

Models::

    name S2
    dim 2
    basis 1 0
    basis x 2
    unit 1
    orientation x
    mult x x = 0

Embeddings (source/target are built-in names or model files)::

    source pt
    target s2
    restrict 1 = 1

Generator assignments::

    closed u 0
    closed c -2
    open * * o 0
    gen closed_mult : u u -> u = 1
    gen zipper K : u -> o = 1

'#' starts a comment everywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .frobenius import EmbeddingData, FrobeniusModel, ModelError, builtin_model
from .sewing import SewPlan
from .surface import (
    CLOSED_IN,
    CLOSED_OUT,
    FREE,
    MIXED,
    OPEN_IN,
    OPEN_OUT,
    WINDOW,
    Arc,
    BoundaryCircle,
    BraneLabel,
    Cobordism,
    Component,
)
from .tqft import GENERATOR_KINDS, SectorSpace, TableAssignment, generator_profile

__all__ = [
    "OccSyntaxError",
    "parse_occ",
    "print_occ",
    "parse_plan",
    "print_plan",
    "parse_model",
    "print_model",
    "parse_embedding",
    "parse_assignment",
    "load_occ",
    "load_plan",
]


class OccSyntaxError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


_TOKEN = re.compile(r"[^\s,]+|,")


class _Line:
    """Tokens of one source line with their 1-based columns."""

    def __init__(self, number: int, text: str):
        self.number = number
        body = text.split("#", 1)[0]
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        self.end = len(body.rstrip()) + 1

    def error(self, index: int, message: str) -> OccSyntaxError:
        col = self.tokens[index][1] if index < len(self.tokens) else self.end
        return OccSyntaxError(self.number, col, message)

    def word(self, index: int, what: str) -> str:
        if index >= len(self.tokens):
            raise self.error(index, f"expected {what}")
        return self.tokens[index][0]

    def integer(self, index: int, what: str) -> int:
        tok = self.word(index, what)
        try:
            return int(tok)
        except ValueError:
            raise self.error(index, f"expected integer {what}, got {tok!r}") from None

    def expect(self, index: int, literal: str) -> None:
        tok = self.word(index, repr(literal))
        if tok != literal:
            raise self.error(index, f"expected {literal!r}, got {tok!r}")

    def done(self, index: int) -> None:
        if index < len(self.tokens):
            raise self.error(index, f"unexpected {self.tokens[index][0]!r}")


def _lines(text: str) -> list[_Line]:
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _Line(n, raw)
        if line.tokens:
            out.append(line)
    return out


# -- cobordisms -------------------------------------------------------------


def _parse_arcs(line: _Line, start: int) -> tuple[Arc, ...]:
    arcs = []
    i = start
    while True:
        kind = line.word(i, "arc ('free <brane>', 'open in' or 'open out')")
        if kind == "free":
            arcs.append(Arc(FREE, line.word(i + 1, "brane name")))
        elif kind == "open":
            direction = line.word(i + 1, "'in' or 'out'")
            if direction not in ("in", "out"):
                raise line.error(i + 1, f"expected 'in' or 'out', got {direction!r}")
            arcs.append(Arc(OPEN_IN if direction == "in" else OPEN_OUT))
        else:
            raise line.error(i, f"unknown arc {kind!r}")
        i += 2
        if i >= len(line.tokens):
            return tuple(arcs)
        line.expect(i, ",")
        i += 1


def parse_occ(text: str) -> Cobordism:
    """Parse the .occ format.  Semantic checks are left to validate()."""
    branes: list[BraneLabel] = []
    components: list[tuple[int, list[BoundaryCircle]]] = []
    lines = _lines(text)
    if not lines:
        raise OccSyntaxError(1, 1, "empty cobordism file")
    for line in lines:
        head = line.word(0, "keyword")
        if head == "brane":
            name = line.word(1, "brane name")
            line.expect(2, "dim")
            dim = line.integer(3, "dimension")
            line.expect(4, "chi")
            chi = line.integer(5, "Euler characteristic")
            line.done(6)
            branes.append(BraneLabel(name, dim, chi))
        elif head == "component":
            line.expect(1, "genus")
            genus = line.integer(2, "genus")
            line.done(3)
            components.append((genus, []))
        elif head == "circle":
            if not components:
                raise line.error(0, "circle before any component")
            kind = line.word(1, "circle kind")
            if kind == "closed":
                direction = line.word(2, "'in' or 'out'")
                if direction not in ("in", "out"):
                    raise line.error(2, f"expected 'in' or 'out', got {direction!r}")
                line.done(3)
                circle = BoundaryCircle(CLOSED_IN if direction == "in" else CLOSED_OUT)
            elif kind == "window":
                label = line.tokens[2][0] if len(line.tokens) > 2 else None
                line.done(3)
                circle = BoundaryCircle(WINDOW, label)
            elif kind == "arcs":
                circle = BoundaryCircle(MIXED, None, _parse_arcs(line, 2))
            else:
                raise line.error(1, f"unknown circle kind {kind!r}")
            components[-1][1].append(circle)
        else:
            raise line.error(0, f"unknown keyword {head!r}")
    return Cobordism(tuple(branes), tuple(Component(g, tuple(cs)) for g, cs in components))


def _arc_text(arc: Arc) -> str:
    if arc.kind == FREE:
        return f"free {arc.brane}"
    return "open in" if arc.kind == OPEN_IN else "open out"


def print_occ(c: Cobordism) -> str:
    out = [f"brane {b.name} dim {b.dim} chi {b.chi}" for b in c.branes]
    for comp in c.components:
        out.append(f"component genus {comp.genus}")
        for circle in comp.circles:
            if circle.kind == CLOSED_IN:
                out.append("circle closed in")
            elif circle.kind == CLOSED_OUT:
                out.append("circle closed out")
            elif circle.kind == WINDOW:
                out.append("circle window" + (f" {circle.brane}" if circle.brane else ""))
            else:
                out.append("circle arcs " + ", ".join(_arc_text(a) for a in circle.arcs))
    return "\n".join(out) + "\n"


def load_occ(path) -> Cobordism:
    return parse_occ(Path(path).read_text(encoding="utf-8"))


# -- plans --------------------------------------------------------------------


def _arc_ref(line: _Line, index: int) -> tuple[int, int]:
    tok = line.word(index, "<circle>.<arc>")
    m = re.fullmatch(r"(\d+)\.(\d+)", tok)
    if not m:
        raise line.error(index, f"expected <circle>.<arc>, got {tok!r}")
    return int(m.group(1)), int(m.group(2))


def parse_plan(text: str) -> SewPlan:
    closed, opens = [], []
    for line in _lines(text):
        head = line.word(0, "'closed' or 'open'")
        if head == "closed":
            a = line.integer(1, "circle index")
            line.expect(2, "->")
            b = line.integer(3, "circle index")
            line.done(4)
            closed.append((a, b))
        elif head == "open":
            a = _arc_ref(line, 1)
            line.expect(2, "->")
            b = _arc_ref(line, 3)
            line.done(4)
            opens.append((a, b))
        else:
            raise line.error(0, f"unknown keyword {head!r}")
    return SewPlan(tuple(closed), tuple(opens))


def print_plan(plan: SewPlan) -> str:
    out = [f"closed {a} -> {b}" for a, b in plan.closed_pairs]
    out += [f"open {a[0]}.{a[1]} -> {b[0]}.{b[1]}" for a, b in plan.open_pairs]
    return "\n".join(out) + "\n"


def load_plan(path) -> SewPlan:
    return parse_plan(Path(path).read_text(encoding="utf-8"))


# -- linear combinations --------------------------------------------------------

def _combination(line: _Line, start: int, names: dict[str, int]) -> dict[int, Fraction]:
    """Parse 'c1*x + c2*y - z' (or '0') from the tokens after `start`."""
    if start >= len(line.tokens):
        raise line.error(start, "expected a linear combination")
    col = line.tokens[start][1]
    compact = "".join(tok for tok, _ in line.tokens[start:])
    out: dict[int, Fraction] = {}
    for term in re.split(r"(?=[+-])", compact):
        if not term:
            continue
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        if "*" in body:
            coeff_text, name = body.split("*", 1)
            try:
                coeff = Fraction(coeff_text)
            except (ValueError, ZeroDivisionError):
                raise OccSyntaxError(line.number, col, f"bad coefficient {coeff_text!r}") from None
        else:
            coeff, name = Fraction(1), body
        if name not in names:
            if name == "0" and "*" not in body:
                continue
            raise OccSyntaxError(line.number, col, f"unknown basis element {name!r}")
        out[names[name]] = out.get(names[name], Fraction(0)) + sign * coeff
    return out


# -- models -------------------------------------------------------------------


def parse_model(text: str) -> FrobeniusModel:
    name, dim, basis, unit, tops, parts, mults = "model", None, [], None, [], [], []
    lines = _lines(text)
    if not lines:
        raise OccSyntaxError(1, 1, "empty model file")
    for line in lines:
        head = line.word(0, "keyword")
        if head == "name":
            name = line.word(1, "model name")
            line.done(2)
        elif head == "dim":
            dim = line.integer(1, "dimension")
            line.done(2)
        elif head == "basis":
            basis.append((line.word(1, "basis name"), line.integer(2, "degree"), line))
            line.done(3)
        elif head in ("unit", "orientation", "component", "mult"):
            if head == "unit":
                unit = line
            elif head == "orientation":
                tops.append(line)
            elif head == "component":
                parts.append(line)
            else:
                mults.append(line)
        else:
            raise line.error(0, f"unknown keyword {head!r}")
    if dim is None:
        raise OccSyntaxError(lines[-1].number, 1, "missing 'dim' line")
    if unit is None:
        raise OccSyntaxError(lines[-1].number, 1, "missing 'unit' line")
    names = {b: i for i, (b, _, _) in enumerate(basis)}
    if len(names) != len(basis):
        raise OccSyntaxError(basis[-1][2].number, 1, "duplicate basis name")
    n = len(basis)
    unit_vec = [Fraction(0)] * n
    for k, c in _combination(unit, 1, names).items():
        unit_vec[k] = c
    top_idx = []
    for line in tops:
        for i in range(1, len(line.tokens)):
            tok = line.word(i, "basis name")
            if tok not in names:
                raise line.error(i, f"unknown basis element {tok!r}")
            top_idx.append(names[tok])
    if not top_idx:
        raise OccSyntaxError(lines[-1].number, 1, "missing 'orientation' line")
    part_idx = []
    for line in parts:
        idx = []
        for i in range(1, len(line.tokens)):
            tok = line.word(i, "basis name")
            if tok not in names:
                raise line.error(i, f"unknown basis element {tok!r}")
            idx.append(names[tok])
        part_idx.append(tuple(idx))
    mult: dict = {}
    for line in mults:
        x, y = line.word(1, "basis name"), line.word(2, "basis name")
        for i, tok in ((1, x), (2, y)):
            if tok not in names:
                raise line.error(i, f"unknown basis element {tok!r}")
        line.expect(3, "=")
        mult[(names[x], names[y])] = _combination(line, 4, names)
    # products with a basis unit default to the identity
    if sum(1 for c in unit_vec if c) == 1:
        u = next(i for i, c in enumerate(unit_vec) if c)
        if unit_vec[u] == 1:
            for i in range(n):
                mult.setdefault((u, i), {i: Fraction(1)})
                mult.setdefault((i, u), {i: Fraction(1)})
    return FrobeniusModel(
        name,
        dim,
        tuple(b for b, _, _ in basis),
        tuple(d for _, d, _ in basis),
        mult,
        tuple(unit_vec),
        tuple(top_idx),
        tuple(part_idx),
    ).check()


def _combo_text(v: dict[int, Fraction], names) -> str:
    terms = []
    for k, c in sorted(v.items()):
        if not c:
            continue
        mag = abs(c)
        body = names[k] if mag == 1 else f"{mag}*{names[k]}"
        terms.append(("- " if c < 0 else "+ ") + body)
    if not terms:
        return "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def print_model(m: FrobeniusModel) -> str:
    out = [f"name {m.name}", f"dim {m.dim}"]
    out += [f"basis {b} {d}" for b, d in zip(m.names, m.degrees)]
    out.append("unit " + _combo_text(dict(enumerate(m.unit)), m.names))
    out.append("orientation " + " ".join(m.names[t] for t in m.tops))
    if len(m.parts) > 1:
        out += ["component " + " ".join(m.names[i] for i in part) for part in m.parts]
    for (i, j), terms in sorted(m.mult.items()):
        out.append(f"mult {m.names[i]} {m.names[j]} = " + _combo_text(terms, m.names))
    return "\n".join(out) + "\n"


def _resolve_model(ref: str, base: Optional[Path]) -> FrobeniusModel:
    path = Path(ref) if base is None else base / ref
    if path.is_file():
        return parse_model(path.read_text(encoding="utf-8"))
    return builtin_model(ref)


def parse_embedding(text: str, base: Optional[Path] = None) -> EmbeddingData:
    source = target = None
    restrict = []
    name = "embedding"
    for line in _lines(text):
        head = line.word(0, "keyword")
        try:
            if head == "source":
                source = _resolve_model(line.word(1, "model"), base)
                line.done(2)
            elif head == "target":
                target = _resolve_model(line.word(1, "model"), base)
                line.done(2)
            elif head == "name":
                name = line.word(1, "name")
                line.done(2)
            elif head == "restrict":
                restrict.append(line)
            else:
                raise line.error(0, f"unknown keyword {head!r}")
        except ModelError as exc:
            raise line.error(1, str(exc)) from None
    if source is None or target is None:
        raise OccSyntaxError(1, 1, "embedding needs 'source' and 'target'")
    s_names = {b: i for i, b in enumerate(source.names)}
    t_names = {b: i for i, b in enumerate(target.names)}
    cols = {}
    for line in restrict:
        tok = line.word(1, "target basis name")
        if tok not in t_names:
            raise line.error(1, f"unknown basis element {tok!r}")
        line.expect(2, "=")
        cols[t_names[tok]] = _combination(line, 3, s_names)
    matrix = tuple(
        tuple(cols.get(m, {}).get(l, Fraction(0)) for m in range(target.n)) for l in range(source.n)
    )
    return EmbeddingData(name, source, target, matrix)


# -- assignments ----------------------------------------------------------------


def parse_assignment(text: str) -> TableAssignment:
    closed: list[tuple[str, int]] = []
    opens: dict = {}
    gens: list[_Line] = []
    for line in _lines(text):
        head = line.word(0, "keyword")
        if head == "closed":
            closed.append((line.word(1, "basis name"), line.integer(2, "degree")))
            line.done(3)
        elif head == "open":
            key = (line.word(1, "source brane"), line.word(2, "target brane"))
            opens.setdefault(key, []).append((line.word(3, "basis name"), line.integer(4, "degree")))
            line.done(5)
        elif head == "gen":
            gens.append(line)
        else:
            raise line.error(0, f"unknown keyword {head!r}")
    space = SectorSpace(tuple(closed), {k: tuple(v) for k, v in opens.items()})
    ga = TableAssignment(space)
    for line in gens:
        kind = line.word(1, "generator kind")
        if kind not in GENERATOR_KINDS:
            raise line.error(1, f"unknown generator {kind!r}")
        n_labels = GENERATOR_KINDS[kind]
        labels = tuple(line.word(2 + i, "brane label") for i in range(n_labels))
        i = 2 + n_labels
        line.expect(i, ":")
        i += 1
        ins_names = []
        while line.word(i, "'->'") != "->":
            ins_names.append((line.tokens[i][0], i))
            i += 1
        i += 1
        outs_names = []
        while line.word(i, "'='") != "=":
            outs_names.append((line.tokens[i][0], i))
            i += 1
        coeff_tok = line.word(i + 1, "coefficient")
        try:
            coeff = Fraction(coeff_tok)
        except (ValueError, ZeroDivisionError):
            raise line.error(i + 1, f"bad coefficient {coeff_tok!r}") from None
        line.done(i + 2)
        probe = tuple(x if x != "*" else "*" for x in labels)
        ins, outs = generator_profile(kind, probe)

        def resolve(types, names_):
            if len(types) != len(names_):
                raise line.error(names_[0][1] if names_ else i, f"{kind} expects {len(types)} factors here")
            idx = []
            for stype, (nm, col) in zip(types, names_):
                basis = [b for b, _ in space.basis(stype)]
                if nm not in basis:
                    raise line.error(col, f"{nm!r} is not a basis element of {stype}")
                idx.append(basis.index(nm))
            return tuple(idx)

        ga.set_entry(kind, labels, resolve(ins, ins_names), resolve(outs, outs_names), coeff)
    return ga
