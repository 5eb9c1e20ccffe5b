from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from occ import load_fixture
from occ.classifier import (
    INCONCLUSIVE,
    INVALID,
    POSSIBLY_NONTRIVIAL,
    RULES,
    VANISHES,
    Hypotheses,
    check_exhaustiveness,
    classify,
    classify_component,
    component_hypotheses,
)
from occ.sewing import SewPlan, sew
from occ.surface import (
    BraneLabel,
    Cobordism,
    CobordismInvariants,
    Component,
    closed_in,
    closed_out,
    free,
    mixed,
    open_in,
    open_out,
    window,
)
from oracles import type_by_hand, vanishes_by_hand


def inv(*tup):
    return CobordismInvariants(*tup)


@pytest.mark.parametrize(
    "tup, kind, detail",
    [
        ((1, 0, 1, 1, 0, 0, 0), VANISHES, "GenusPositive"),
        ((0, 1, 2, 1, 0, 0, 0), POSSIBLY_NONTRIVIAL, "I"),
        ((0, 0, 0, 3, 0, 0, 0), VANISHES, "ThreeOutClosed"),
        ((0, 0, 0, 0, 2, 0, 1), POSSIBLY_NONTRIVIAL, "V"),
        ((0, 2, 0, 1, 0, 0, 0), VANISHES, "MultiWindow"),
        ((0, 0, 0, 0, 0, 0, 2), VANISHES, "MultiMixed"),
        ((0, 0, 1, 1, 0, 1, 0), VANISHES, "OutOpenOverflow"),
        ((0, 1, 0, 0, 0, 1, 0), VANISHES, "WindowWithOpen"),
        ((0, 1, 0, 2, 0, 0, 0), VANISHES, "WindowMultiOutClosed"),
        ((0, 0, 0, 1, 0, 0, 1), VANISHES, "MixedWithExtraOut"),
        ((0, 0, 3, 1, 2, 0, 0), POSSIBLY_NONTRIVIAL, "II"),
        ((0, 0, 1, 2, 0, 0, 0), POSSIBLY_NONTRIVIAL, "III"),
        ((0, 0, 2, 0, 1, 1, 0), POSSIBLY_NONTRIVIAL, "IV"),
    ],
)
def test_examples(tup, kind, detail):
    v = classify_component(inv(*tup))
    assert v.kind == kind
    assert detail in (v.rule, v.btype)
    assert v.citation


def test_no_outgoing_string_is_invalid():
    assert classify_component(inv(0, 0, 2, 0, 1, 0, 0)).kind == INVALID


def test_outgoing_open_label_at_full_dimension_is_inconclusive():
    v = classify_component(inv(0, 0, 1, 1, 0, 1, 0), Hypotheses(outgoing_label=False))
    assert v.kind == INCONCLUSIVE
    assert "outgoing" in v.missing


def test_relaxed_multi_mixed_is_inconclusive():
    v = classify_component(inv(0, 0, 0, 0, 0, 0, 2), Hypotheses(crossing_label=False))
    assert v.kind == INCONCLUSIVE


def test_unconditional_rules_survive_relaxation():
    none = Hypotheses(False, False, False)
    assert classify_component(inv(1, 0, 0, 0, 0, 0, 1), none).rule == "GenusPositive"
    assert classify_component(inv(0, 0, 0, 3, 0, 0, 0), none).rule == "ThreeOutClosed"


def test_every_tuple_agrees_with_hand_predicate():
    for tup in itertools.product(range(4), repeat=7):
        g, w, p, q, r, s, t = tup
        if q + s + t == 0:
            continue
        v = classify_component(inv(*tup))
        if vanishes_by_hand(*tup):
            assert v.kind == VANISHES, tup
        else:
            assert v.kind == POSSIBLY_NONTRIVIAL and v.btype == type_by_hand(*tup), tup


def test_rule_order_does_not_change_vanishing():
    rnd = random.Random(11)
    orders = [list(RULES)] + [rnd.sample(RULES, len(RULES)) for _ in range(20)]
    for tup in itertools.product(range(3), repeat=7):
        if tup[3] + tup[5] + tup[6] == 0:
            continue
        kinds = {classify_component(inv(*tup), order=o).kind for o in orders}
        assert len(kinds) == 1, tup


@given(st.tuples(*[st.integers(0, 6)] * 7))
def test_default_regime_is_never_inconclusive(tup):
    assert classify_component(inv(*tup)).kind != INCONCLUSIVE


def test_exhaustiveness_bound_four():
    report = check_exhaustiveness(4)
    assert report.passed and report.counterexamples == []
    assert report.survivors_iv == {(1, 0), (2, 0), (0, 1)}
    assert set(report.by_type) == {"I", "II", "III", "IV", "V"}
    assert report.checked == report.vanishing + sum(report.by_type.values())


def test_exhaustiveness_rejects_small_bound():
    with pytest.raises(ValueError):
        check_exhaustiveness(2)


BRANES = (BraneLabel("K", 0, 2), BraneLabel("L", 2, 0))


def test_disconnected_verdicts():
    c = load_fixture("two_components.occ")
    assert classify(c, 2).overall.rule == "GenusPositive"
    both = Cobordism(BRANES, (Component(0, (closed_in(), closed_out())),) * 2)
    res = classify(both, 2)
    assert res.overall.kind == POSSIBLY_NONTRIVIAL and res.types == ["II", "II"]
    mixed_case = Cobordism(
        BRANES,
        (
            Component(0, (window("K"), closed_out())),
            Component(0, (closed_in(), closed_out(), mixed(free("L"), open_out()))),
        ),
    )
    assert classify(mixed_case, 2).overall.kind == VANISHES
    assert classify(mixed_case, 2, assume_low_dims=False).overall.kind == INCONCLUSIVE


def test_hypotheses_from_brane_dimensions():
    circle = mixed(free("K"), open_in(), free("L"), open_out())
    comp = Component(0, (circle, closed_out()))
    h = component_hypotheses(comp, {"K": 0, "L": 2}, 2)
    assert h.free_label and h.crossing_label and h.outgoing_label
    h = component_hypotheses(comp, {"K": 2, "L": 2}, 2)
    assert not (h.free_label or h.crossing_label or h.outgoing_label)


def test_vanishing_survives_sewing_away_from_the_genus():
    torus = load_fixture("fig07_torus.occ")
    cyl = load_fixture("cylinder.occ")
    r = sew(torus, cyl, SewPlan(((1, 0),)))
    assert classify(r, 2).overall.kind == VANISHES


def test_fixture_verdicts():
    expected = {
        "fig01_type_i.occ": "I",
        "fig02_type_ii.occ": "II",
        "fig03_type_iii.occ": "III",
        "fig07_torus.occ": "GenusPositive",
        "fig12_ii_double_saddle.occ": "MultiMixed",
        "fig12_iii_double_window.occ": "MultiWindow",
        "fig06_open_window.occ": "WindowWithOpen",
        "fig13_comodule.occ": "MixedWithExtraOut",
    }
    for name, want in expected.items():
        v = classify(load_fixture(name), 2).overall
        assert want in (v.rule, v.btype), name
