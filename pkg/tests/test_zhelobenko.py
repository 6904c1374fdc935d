from __future__ import annotations

import pytest

from zhelokit.bgg import invariant_generators
from zhelokit.poly import Poly
from zhelokit.rootsys import RootSystem
from zhelokit.zhelobenko import (assemble_invariant, check_invariant, system_residuals, leading_system_residuals, extract,
                                 freeness_report, generator_independence, leading_tuple, solve_from_leading,
                                 solve_generators, xi_apply)


def ones(n):
    return [Poly.const(n, 1) for _ in range(n)]


def test_xi_fixes_orthogonal_fundamental_weights():
    a3 = RootSystem.from_tag("A3")
    q = [Poly(3), Poly(3), Poly.const(3, 1)]
    out = xi_apply(a3, 0, q)
    assert out[2].simplify().polynomial() == Poly.const(3, 1)


def test_a1_degree_one_invariant():
    a1 = RootSystem.from_tag("A1")
    h = Poly.gen(1, 0)
    assert check_invariant(a1, [h + 2]).invariant
    inv = assemble_invariant(a1, ones(1))
    assert inv.q == (h + 2,)
    (gen,) = solve_generators(a1)
    assert gen.m == 1 and gen.P == (Poly.const(1, 1),)


def test_all_ones_and_zero_tuples():
    for tag in ["A2", "B3", "G2"]:
        rs = RootSystem.from_tag(tag)
        n = rs.rank
        assert not system_residuals(rs, ones(n))
        inv = assemble_invariant(rs, ones(n))
        assert inv.q == tuple(Poly.gen(n, i) + 2 for i in range(n))
        assert check_invariant(rs, inv.q).invariant
        assert check_invariant(rs, [Poly(n)] * n).invariant


def test_non_invariant_tuple_detected():
    rs = RootSystem.from_tag("A2")
    h1, h2 = Poly.gens(2)
    rep = check_invariant(rs, [h1 * h1 + 3, h2])
    assert not rep.invariant and rep.residuals
    with pytest.raises(ValueError):
        assemble_invariant(rs, [h1, Poly.const(2, 1)])


def test_generator_degrees():
    for tag, degs in [("A2", [1, 2]), ("B3", [1, 3, 5]), ("G2", [1, 5]), ("D4", [1, 3, 3, 5])]:
        rs = RootSystem.from_tag(tag)
        gens = solve_generators(rs)
        assert [g.m for g in gens] == degs
        assert gens[0].P == tuple(ones(rs.rank))
        for g in gens:
            assert not system_residuals(rs, g.P)
            assert not leading_system_residuals(rs, g.leading)
            assert extract(rs, g.q) == list(g.P)
        assert generator_independence(rs, gens)


def test_leading_terms_come_from_invariants():
    rs = RootSystem.from_tag("B2")
    top = max(invariant_generators(rs), key=lambda q: q.degree())
    lead = leading_tuple(rs, top)
    assert not leading_system_residuals(rs, lead)
    P = solve_from_leading(rs, lead)
    assert not system_residuals(rs, P)
    assert tuple(x.homogeneous_part(top.degree() - 2) for x in P) == lead


def test_free_module_counts():
    for tag in ["A3", "B3", "C3", "G2"]:
        for k, (kernel, expected) in freeness_report(RootSystem.from_tag(tag)).items():
            assert kernel == expected, (tag, k)


def test_json_shape():
    inv = solve_generators(RootSystem.from_tag("A2"))[1]
    data = inv.to_json()
    assert data["degree"] == 2 and len(data["q"]) == 2 and len(data["P"]) == 2
