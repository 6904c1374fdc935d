from __future__ import annotations

from fractions import Fraction

import flint

from zhelokit.bgg import invariant_generators
from zhelokit.poly import (Poly, RatFn, coefficient_vector, dot_reflect, eval_srho, from_coefficient_vector,
                           gradient, monomials, partial, reflect_poly, theta, theta_inv, weight_partial,
                           weyl_act)
from zhelokit.rootsys import RootSystem

S = flint.fmpq_poly([0, 1])


def test_arithmetic_is_exact():
    h1, h2 = Poly.gens(2)
    p = h1.scale(Fraction(1, 3)) + h2 * h2
    assert p.terms == {(1, 0): Fraction(1, 3), (0, 2): Fraction(1)}
    assert (p - p).is_zero()
    assert (h1 + 1) ** 2 == h1 * h1 + h1.scale(2) + 1
    assert ((h1 * h2 + h2).divexact(h2)) == h1 + 1
    assert not (h1 + 1).divides_by(h2)
    assert p([3, 2]) == Fraction(5)


def test_graded_parts_and_coefficient_vectors():
    h1, h2 = Poly.gens(2)
    p = h1 * h1 * h2 + h2.scale(4) + 7
    assert p.degree() == 3
    assert p.homogeneous_part(1) == h2.scale(4)
    assert p.leading_form() == h1 * h1 * h2
    assert len(monomials(2, 3)) == 4
    v = coefficient_vector(p.homogeneous_part(3), 3)
    assert from_coefficient_vector(2, 3, v) == h1 * h1 * h2


def test_reflection_action():
    a2 = RootSystem.from_tag("A2")
    h1, h2 = Poly.gens(2)
    assert reflect_poly(a2, 0, h1) == -h1
    assert reflect_poly(a2, 0, h1 * h1) == h1 * h1
    assert reflect_poly(a2, 0, h2) == h1 + h2
    assert weyl_act(a2, a2.identity(), h1 * h2) == h1 * h2
    assert weyl_act(a2, a2.element((0,)), h2) == h1 + h2


def test_dot_action_and_translation():
    a2 = RootSystem.from_tag("A2")
    h1, h2 = Poly.gens(2)
    assert dot_reflect(a2, 0, h1) == -h1 - 2
    assert dot_reflect(a2, 0, Poly.const(2, 5)) == Poly.const(2, 5)
    assert dot_reflect(a2, 0, h2) == h2 + h1 + 1
    assert theta(h1) == h1 + 1
    assert theta(Poly.const(2, 5)) == Poly.const(2, 5)
    q = h1 * h1 * h2
    assert theta_inv(theta(q)) == q


def test_restriction_to_srho():
    h1, h2 = Poly.gens(2)
    assert eval_srho(h1 * h2) == S * S
    assert eval_srho(h1 + 2) == S + 2
    r = 3
    gamma = Poly.linear(3, [1, 1, 1])
    assert eval_srho(gamma + 1) == 1 + r * S


def test_partials():
    h1 = Poly.gen(1, 0)
    assert partial(0, h1 * h1) == h1.scale(2)
    a1 = RootSystem.from_tag("A1")
    assert weight_partial(a1, 0, h1 * h1).divides_by(h1)


def test_gradient_of_invariants_divisible_by_coroots():
    for tag in ["A2", "A3", "B2", "B3", "C3", "G2"]:
        rs = RootSystem.from_tag(tag)
        for q in invariant_generators(rs):
            for i, g in enumerate(gradient(rs, q)):
                assert g.divides_by(Poly.gen(rs.rank, i)), (tag, i)


def test_rational_functions():
    h1, h2 = Poly.gens(2)
    x = RatFn(h1 * h2, h1)
    assert x.simplify().polynomial() == h2
    assert (x - RatFn(h2)).is_zero()
    assert RatFn(h1, h2) + RatFn(h2, h2) == RatFn(h1 + h2, h2)
