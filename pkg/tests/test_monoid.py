from __future__ import annotations

import json

import pytest

from zhelokit.monoid import (canonical_census, census_json, check_pmap, check_relations, closed_form_pmap,
                             enumerate_monoid, export_dot, image_consistency, pmap, propagate_P,
                             realize_P0, verify_78, verify_81)
from zhelokit.poly import Poly
from zhelokit.rootsys import CartanError, RootSystem
from zhelokit.zhelobenko import solve_generators


def graph(tag):
    return enumerate_monoid(RootSystem.from_tag(tag))


def test_a1_single_vertex():
    g = graph("A1")
    assert len(g.elements) == 1 and g.edges == []
    assert realize_P0(g.rs).top == 0


def test_generators_nonzero_in_coinvariants():
    real = realize_P0(RootSystem.from_tag("A2"))
    assert real.top == 1 and all(any(c) for c in real.classes)
    real = realize_P0(RootSystem.from_tag("F4"))
    assert real.top == 10 and all(any(c) for c in real.classes)


def test_small_censuses():
    assert graph("A2").level_counts() == [2, 1]
    assert graph("A3").level_counts() == [3, 2, 1]
    assert graph("B2").level_counts() == [2, 2, 1]
    assert graph("G2").level_counts() == [2, 2, 2, 2, 1]
    assert graph("C3").level_counts() == [3, 3, 3, 2, 1]


def test_b3_listing():
    g = graph("B3")
    by_length = {k: sorted(e.witness for e in v) for k, v in g.levels().items()}
    assert by_length == {1: ["(1)", "(2)", "(3)"], 2: ["2(1)", "2(3)", "3(2)"],
                         3: ["12(3)", "23(2)", "32(1)"], 4: ["123(2)", "232(1)"], 5: ["1232(1)"]}
    assert g.word_element((0,), 1) is g.word_element((1,), 0)
    assert g.killed_by_all() == g.maximal_elements()


def test_relations_hold():
    for tag in ["A3", "B3", "C3", "D4", "G2"]:
        assert check_relations(graph(tag)) == [], tag


def test_closed_forms_and_canonical_words():
    for tag in ["A3", "A4", "B3", "B4", "C3", "C4"]:
        g = graph(tag)
        image = pmap(g)
        for gamma, (letters, gen) in closed_form_pmap(g.rs).items():
            assert g.word_element(letters, gen) is image[gamma], (tag, gamma)
        found = {g.word_element(w, j).index for w, j in canonical_census(g.rs)}
        assert found == {e.index for e in g.elements}


def test_pmap_properties():
    for tag in ["A2", "B3", "C4", "D4"]:
        rep = check_pmap(graph(tag))
        assert rep.ok, (tag, rep)
    g = graph("B4")
    assert pmap(g)[g.rs.highest_coroot].length == sum(g.rs.highest_coroot) == 7


def test_pmap_absent_for_g2():
    assert graph("G2").image == {}
    with pytest.raises(CartanError):
        propagate_P(RootSystem.from_tag("G2"), [Poly.const(2, 1)] * 2)


def test_propagation_simple_cases():
    a2 = RootSystem.from_tag("A2")
    tab = propagate_P(a2, [Poly.const(2, 1)] * 2)
    assert tab.polys[(1, 0)] == Poly.const(2, 1)
    assert tab.polys[(1, 1)].is_zero()
    assert verify_78(propagate_P(RootSystem.from_tag("A1"), [Poly.const(1, 1)])).checked == 1


def test_recurrences_on_top_generator():
    for tag in ["A2", "B3", "C3"]:
        rs = RootSystem.from_tag(tag)
        top = solve_generators(rs)[-1]
        full = propagate_P(rs, top.P)
        assert not full.disagreements
        assert verify_78(full).ok
        lead = propagate_P(rs, top.leading, leading=True)
        assert verify_81(lead).ok
        assert image_consistency(enumerate_monoid(rs), lead) == []


def test_literal_rules_fail_outside_simply_laced():
    b2 = RootSystem.from_tag("B2")
    rep = verify_78(propagate_P(b2, solve_generators(b2)[-1].P, literal=True))
    assert rep.failures == [("i", None, (1, 1))]
    a3 = RootSystem.from_tag("A3")
    assert verify_78(propagate_P(a3, solve_generators(a3)[-1].P, literal=True)).ok


def test_dot_export():
    g = graph("B3")
    text = export_dot(g)
    assert text == export_dot(graph("B3"))
    assert text.startswith('digraph "B3" {')
    assert text.count("rank=same") == 5
    assert sum(1 for line in text.splitlines() if "[label=" in line and "->" not in line) == 12
    assert 'label="1232(1)"' in text
    a1 = export_dot(graph("A1"))
    assert "->" not in a1 and a1.count("[label=") == 1


def test_census_json():
    data = json.loads(census_json(graph("F4")))
    assert data["type"] == "F4" and len(data["vertices"]) == 42
    assert data["levels"] == [4, 4, 5, 6, 5, 4, 4, 4, 3, 2, 1]
    assert sum(v["in_P_image"] for v in data["vertices"]) == 24
