from __future__ import annotations

import random

import pytest

from conftest import FIXTURE_SEWINGS
from occ import load_fixture
from occ.enumerate import random_pairs
from occ.sewing import (
    IncompatibleProfiles,
    PlanMismatch,
    SewPlan,
    compose,
    compose_plan,
    sew,
    sew_with_provenance,
    trace_boundaries,
)
from occ.surface import (
    BraneLabel,
    Cobordism,
    Component,
    canonical_key,
    closed_in,
    closed_out,
    euler_char,
    free,
    invariants,
    mixed,
    open_in,
    open_out,
    validate,
    window,
)
from oracles import sewn_complex

BRANES = (BraneLabel("I", 0, 1), BraneLabel("J", 1, 0), BraneLabel("K", 0, 2))


def cob(*comps):
    return Cobordism(BRANES, tuple(Component(g, tuple(cs)) for g, cs in comps))


def total_chi(c):
    return sum(euler_char(comp) for comp in c.components)


def count(c, kind):
    return sum(1 for _, _, x in c.circles() if x.kind == kind)


def check_bookkeeping(a, b, plan):
    r = sew(a, b, plan)
    assert total_chi(r) == total_chi(a) + total_chi(b) - len(plan.open_pairs)
    assert all(comp.genus >= 0 for comp in r.components)
    assert count(r, "closed_in") == count(a, "closed_in") + count(b, "closed_in") - len(plan.closed_pairs)
    assert count(r, "closed_out") == count(a, "closed_out") + count(b, "closed_out") - len(plan.closed_pairs)
    cx = sewn_complex(a, b, plan)
    assert cx.euler() == total_chi(r)
    assert cx.n_components() == len(r.components)
    assert cx.n_boundary_circles() == r.n_circles
    assert cx.total_genus() == sum(comp.genus for comp in r.components)
    assert validate(r) == [] or all(v.kind == "PositiveBoundaryViolation" for v in validate(r))
    return r


@pytest.mark.parametrize("a, b, plan", FIXTURE_SEWINGS)
def test_fixture_sewings_match_cell_complex(a, b, plan):
    check_bookkeeping(load_fixture(a), load_fixture(b), load_fixture(plan))


def test_torus_from_coproduct_then_product():
    r = sew(load_fixture("copants_phi.occ"), load_fixture("pants_mu.occ"), load_fixture("both.plan"))
    assert [i.astuple() for i in invariants(r)] == [(1, 0, 1, 1, 0, 0, 0)]
    assert total_chi(r) == -2


def test_gluing_one_leg_keeps_genus_zero():
    a, b = load_fixture("copants_phi.occ"), load_fixture("pants_mu.occ")
    r = sew(a, b, SewPlan(((1, 0),)))
    assert [comp.genus for comp in r.components] == [0]
    assert [i.astuple() for i in invariants(r)] == [(0, 0, 2, 2, 0, 0, 0)]


def test_strip_composed_with_strip():
    s = load_fixture("strip.occ")
    r = sew(s, s, load_fixture("strip.plan"))
    assert [i.astuple() for i in invariants(r)] == [(0, 0, 0, 0, 0, 0, 1)]
    circles = trace_boundaries(s, s, load_fixture("strip.plan"))
    assert len(circles) == 1 and len(circles[0].arcs) == 4


def test_open_window_annulus_with_copy():
    a = load_fixture("fig06_open_window.occ")
    r = sew(a, a, load_fixture("fig06.plan"))
    assert len(r.components) == 1
    inv = invariants(r)[0]
    assert (inv.g, inv.omega, inv.t) == (0, 2, 1)
    assert r.n_circles == 3 and total_chi(r) == -1


def test_exhausted_circle_becomes_window():
    r = sew(load_fixture("disc_out.occ"), load_fixture("window_in.occ"), load_fixture("disc.plan"))
    assert [x for _, _, x in r.circles() if x.kind == "window"] == [window("K")]
    assert [i.astuple() for i in invariants(r)] == [(0, 1, 1, 1, 0, 0, 0)]


def test_closed_gluing_keeps_other_circles():
    a = cob((0, [closed_in(), closed_out()]))
    b = cob((0, [closed_in(), window("K"), mixed(free("I"), open_out())]))
    circles = trace_boundaries(a, b, SewPlan(((1, 0),)))
    assert sorted(c.kind for c in circles) == ["closed_in", "mixed", "window"]


def test_merged_free_arcs_keep_label():
    # in-strip I->J into the outgoing string of a circle I out J
    a = cob((0, [closed_in(), mixed(free("I"), open_out(), free("J"), open_out())]))
    b = cob((0, [mixed(free("I"), open_in(), free("J"), open_out())]))
    plan = SewPlan((), (((1, 3), (0, 1)),))
    r = check_bookkeeping(a, b, plan)
    words = [x.arcs for _, _, x in r.circles() if x.kind == "mixed"]
    assert len(words) == 1
    labels = [arc.brane for arc in words[0] if arc.kind == "free"]
    assert sorted(labels) == ["I", "J"]


def test_components_are_joined_by_gluing():
    a = cob((0, [closed_out()]), (0, [closed_out()]))
    b = cob((0, [closed_in(), closed_in(), closed_out()]))
    r = check_bookkeeping(a, b, SewPlan(((0, 0), (1, 1))))
    assert len(r.components) == 1


def test_fig12_surfaces_have_expected_tuples():
    expected = {
        "fig12_i_genus_one.occ": (1, 0, 1, 1, 0, 0, 0),
        "fig12_ii_double_saddle.occ": (0, 0, 0, 0, 0, 0, 2),
        "fig12_iii_double_window.occ": (0, 2, 1, 1, 0, 0, 0),
    }
    for name, tup in expected.items():
        assert [i.astuple() for i in invariants(load_fixture(name))] == [tup]


def test_provenance_covers_surviving_strings():
    a, b = load_fixture("copants_phi.occ"), load_fixture("pants_mu.occ")
    res = sew_with_provenance(a, b, SewPlan(((1, 0),)))
    strings = [(k, -1) for k, _, x in res.cobordism.circles() if x.kind.startswith("closed")]
    assert set(strings) <= set(res.provenance)


@pytest.mark.parametrize(
    "plan",
    [
        SewPlan(((0, 0),)),  # first is not outgoing
        SewPlan(((1, 2),)),  # second is not incoming
        SewPlan(((1, 0), (1, 1))),  # circle used twice
        SewPlan(((1, 7),)),  # no such circle
    ],
)
def test_bad_closed_plans(plan):
    with pytest.raises(PlanMismatch):
        sew(load_fixture("copants_phi.occ"), load_fixture("pants_mu.occ"), plan)


def test_bad_open_plans():
    s = load_fixture("strip.occ")
    with pytest.raises(PlanMismatch):
        sew(s, s, SewPlan((), (((0, 1), (0, 3)),)))  # in -> out
    with pytest.raises(PlanMismatch):
        sew(s, s, SewPlan((), (((0, 3), (0, 0)),)))  # free arc
    other = cob((0, [mixed(free("K"), open_in(), free("J"), open_out())]))
    with pytest.raises(PlanMismatch):
        sew(s, other, SewPlan((), (((0, 3), (0, 1)),)))  # labels differ


def test_conflicting_brane_tables_are_rejected():
    a = load_fixture("cylinder.occ")
    b = Cobordism((BraneLabel("I", 2, 2),), load_fixture("cylinder.occ").components)
    with pytest.raises(PlanMismatch):
        sew(a, b, SewPlan(((1, 0),)))


def test_compose_identity_and_torus():
    cyl = load_fixture("cylinder.occ")
    pants = load_fixture("pants_mu.occ")
    two = Cobordism(cyl.branes, cyl.components * 2)
    assert canonical_key(compose(two, pants)) == canonical_key(pants)
    torus = compose(load_fixture("copants_phi.occ"), pants)
    assert canonical_key(torus) == canonical_key(load_fixture("fig07_torus.occ"))


def test_compose_rejects_mismatched_profiles():
    s = load_fixture("strip.occ")
    other = cob((0, [mixed(free("K"), open_in(), free("J"), open_out())]))
    with pytest.raises(IncompatibleProfiles):
        compose(s, other)
    with pytest.raises(IncompatibleProfiles):
        compose_plan(load_fixture("cylinder.occ"), load_fixture("pants_mu.occ"))


def test_associativity_on_fixtures():
    # (phi then mu) then cylinder == phi then (mu then cylinder)
    phi, mu, cyl = (load_fixture(n) for n in ("copants_phi.occ", "pants_mu.occ", "cylinder.occ"))
    left = sew(sew(phi, mu, SewPlan(((1, 0), (2, 1)))), cyl, SewPlan(((1, 0),)))
    right = sew(phi, sew(mu, cyl, SewPlan(((2, 0),))), SewPlan(((1, 0), (2, 1))))
    assert canonical_key(left) == canonical_key(right)
    s = load_fixture("strip.occ")
    plan = load_fixture("strip.plan")
    assert canonical_key(sew(sew(s, s, plan), s, plan)) == canonical_key(sew(s, sew(s, s, plan), plan))


def test_random_pairs_keep_bookkeeping():
    for a, b, plan in random_pairs(150, seed=3, pool_size=200):
        check_bookkeeping(a, b, plan)


def test_sewing_is_deterministic():
    rnd = random.Random(1)
    pairs = random_pairs(20, seed=rnd.randrange(100), pool_size=100)
    assert [sew(a, b, p) for a, b, p in pairs] == [sew(a, b, p) for a, b, p in pairs]
