"""Hereditary saturated subsets: lattice, quotients, composition series."""

import pytest
from hypothesis import given, strategies as st

import graphmonoid as gm
from graphmonoid import CapExceeded, Graph, HSatSet

from conftest import corpus, make_abcd, make_bouquet, make_ladder

ABCD = make_abcd()


# ----------------------------------------------------------------------
# HSatSet and enumeration


def test_hsatset_validates():
    h = HSatSet(ABCD, frozenset({"a", "d"}))
    assert "a" in h and "b" not in h
    with pytest.raises(ValueError):
        HSatSet(ABCD, frozenset({"c"}))  # not hereditary
    with pytest.raises(ValueError):
        HSatSet(ABCD, frozenset({"b", "a", "c"}))  # not saturated (misses d)


def test_enumerate_hsat_workhorse():
    sets = gm.enumerate_hsat(ABCD)
    assert [sorted(s.members) for s in sets] == [
        [],
        ["a"],
        ["d"],
        ["a", "d"],
        ["c", "d"],
        ["a", "b", "c", "d"],
    ]


def test_enumerate_hsat_cap():
    big = Graph(tuple(f"v{i}" for i in range(21)), ())
    with pytest.raises(CapExceeded):
        gm.enumerate_hsat(big)
    # every subset of an edgeless graph qualifies
    small = Graph(tuple(f"v{i}" for i in range(5)), ())
    assert len(gm.enumerate_hsat(small)) == 2**5


def test_join_and_meet():
    sets = {tuple(sorted(s.members)): s for s in gm.enumerate_hsat(ABCD)}
    a, d = sets[("a",)], sets[("d",)]
    assert sorted(gm.join(a, d).members) == ["a", "d"]
    assert sorted(gm.meet(sets[("a", "d")], sets[("c", "d")]).members) == ["d"]
    # join can force saturation beyond the union
    cd = sets[("c", "d")]
    assert sorted(gm.join(a, cd).members) == ["a", "b", "c", "d"]


def test_lattice_report_tables():
    rep = gm.lattice_report(ABCD)
    n = len(rep.sets)
    assert n == 6
    bottom = rep.sets[0].members
    top = rep.sets[-1].members
    assert bottom == frozenset() and top == frozenset("abcd")
    for i in range(n):
        for j in range(n):
            ij = rep.join_table[i][j]
            mj = rep.meet_table[i][j]
            assert rep.sets[ij].members == gm.join(rep.sets[i], rep.sets[j]).members
            assert rep.sets[mj].members == gm.meet(rep.sets[i], rep.sets[j]).members
            # commutativity and absorption
            assert rep.join_table[i][j] == rep.join_table[j][i]
            assert rep.meet_table[i][j] == rep.meet_table[j][i]
    # hasse covers connect comparable sets with nothing in between
    for lo, hi in rep.hasse:
        assert rep.sets[lo].members < rep.sets[hi].members


def test_order_ideal_membership():
    sets = {tuple(sorted(s.members)): s for s in gm.enumerate_hsat(ABCD)}
    cd = sets[("c", "d")]
    assert gm.order_ideal_membership(cd, gm.parse_element(ABCD, "c + 2*d"))
    assert not gm.order_ideal_membership(cd, gm.parse_element(ABCD, "a"))
    assert gm.order_ideal_membership(sets[()], gm.zero(ABCD))


@given(st.integers(0, 108))
def test_enumerated_sets_are_closed_under_join_meet(graph_idx):
    g = corpus()[graph_idx]
    sets = gm.enumerate_hsat(g)
    members = {s.members for s in sets}
    for s in sets:
        for t in sets:
            assert gm.join(s, t).members in members
            assert gm.meet(s, t).members in members


# ----------------------------------------------------------------------
# quotient and restriction graphs


def test_quotient_graph():
    sets = {tuple(sorted(s.members)): s for s in gm.enumerate_hsat(ABCD)}
    q = gm.quotient_graph(ABCD, sets[("c", "d")])
    assert q.vertices == ("a", "b")
    assert sorted(q.edges) == [("a", "a"), ("a", "a"), ("b", "a")]


def test_restriction_graph():
    sets = {tuple(sorted(s.members)): s for s in gm.enumerate_hsat(ABCD)}
    r = gm.restriction_graph(ABCD, sets[("c", "d")])
    assert r.vertices == ("c", "d")
    assert sorted(r.edges) == [("c", "c"), ("c", "c"), ("c", "d")]


def test_quotient_of_wrong_graph_rejected():
    ladder = make_ladder()
    h = HSatSet(ladder, frozenset(ladder.vertices))
    with pytest.raises(ValueError):
        gm.quotient_graph(ABCD, h)


# ----------------------------------------------------------------------
# simple classification


def test_classify_sink():
    g = Graph(("s",), ())
    cls = gm.classify_simple(g)
    assert cls.kind == "SinkType" and cls.witness == "s"


def test_classify_cycle_no_exit():
    g = Graph(("a", "b"), (("a", "b"), ("b", "a")))
    cls = gm.classify_simple(g)
    assert cls.kind == "CycleNoExitType"
    assert cls.witness.is_loop() and cls.witness.length == 2


def test_classify_loops_with_exit():
    cls = gm.classify_simple(make_bouquet(2))
    assert cls.kind == "LoopsWithExitType" and cls.witness is None


def test_classify_rejects_non_simple():
    with pytest.raises(ValueError):
        gm.classify_simple(ABCD)  # not cofinal
    with pytest.raises(ValueError):
        gm.classify_simple(Graph((), ()))


# ----------------------------------------------------------------------
# composition series


def test_composition_series_greedy_chain():
    series = gm.composition_series(ABCD)
    assert [sorted(s.members) for s in series.sets] == [
        [],
        ["a"],
        ["a", "d"],
        ["a", "b", "c", "d"],
    ]
    kinds = [step.classification.kind for step in series.steps]
    assert kinds == ["LoopsWithExitType", "SinkType", "LoopsWithExitType"]
    assert series.steps[1].classification.witness == "d"


def test_series_step_graphs():
    series = gm.composition_series(ABCD)
    first = series.steps[0].graph
    assert first.vertices == ("a",)
    assert first.edges == (("a", "a"), ("a", "a"))


def test_validate_series_accepts_alternate_chain():
    assert gm.validate_series(ABCD, [{"d"}, {"c", "d"}, {"a", "b", "c", "d"}])


def test_validate_series_explicit_bottom_allowed():
    assert gm.validate_series(ABCD, [set(), {"a"}, {"a", "d"}, {"a", "b", "c", "d"}])


def test_validate_series_rejects_bad_chains():
    # not ending at the whole vertex set
    assert not gm.validate_series(ABCD, [{"a"}, {"a", "d"}])
    # not a chain
    assert not gm.validate_series(ABCD, [{"a"}, {"d"}, {"a", "b", "c", "d"}])
    # not hereditary saturated
    assert not gm.validate_series(ABCD, [{"c"}, {"a", "b", "c", "d"}])
    # step subquotient not simple: {a, d} to top leaves b, c with c's sink gone
    assert not gm.validate_series(ABCD, [{"a", "b", "c", "d"}, {"a"}])


@given(st.integers(0, 108))
def test_series_on_corpus_validates(graph_idx):
    g = corpus()[graph_idx]
    series = gm.composition_series(g)
    assert gm.validate_series(g, [set(s.members) for s in series.sets])
    assert series.sets[-1].members == frozenset(g.vertices)


# ----------------------------------------------------------------------
# order-ideal correspondence


def test_phi_psi_roundtrip_examples():
    assert gm.phi_psi_roundtrip(ABCD)
    assert gm.phi_psi_roundtrip(make_bouquet(2))
    assert gm.phi_psi_roundtrip(make_ladder())
