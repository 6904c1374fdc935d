from __future__ import annotations

import random
from fractions import Fraction

from zhelokit.bgg import (CoinvariantSpace, bgg_apply, bgg_word_apply, braid_words, class_key,
                          find_killing_word, invariant_degrees, invariant_generators, molien_series,
                          poincare_dims)
from zhelokit.poly import Poly, monomials, reflect_poly
from zhelokit.rootsys import RootSystem


def rand_poly(rng, rank, deg):
    exps = [e for d in range(deg + 1) for e in monomials(rank, d)]
    return Poly.from_terms(rank, {e: Fraction(rng.randint(-5, 5)) for e in rng.sample(exps, 4)})


def test_simple_values():
    rs = RootSystem.from_tag("A2")
    h1, _ = Poly.gens(2)
    assert bgg_apply(rs, 0, h1) == Poly.const(2, 2)
    assert bgg_apply(rs, 0, Poly.const(2, 7)).is_zero()


def test_square_zero_and_braid_a2_b2():
    rng = random.Random(7)
    for tag in ["A2", "B2", "G2"]:
        rs = RootSystem.from_tag(tag)
        for _ in range(10):
            q = rand_poly(rng, 2, 5)
            assert bgg_word_apply(rs, (0, 0), q).is_zero()
            left, right = braid_words(rs, 0, 1)
            assert bgg_word_apply(rs, left, q) == bgg_word_apply(rs, right, q)


def test_skew_derivation():
    rng = random.Random(11)
    rs = RootSystem.from_tag("C3")
    for _ in range(10):
        f, g = rand_poly(rng, 3, 3), rand_poly(rng, 3, 3)
        for i in range(3):
            assert bgg_apply(rs, i, f * g) == reflect_poly(rs, i, f) * bgg_apply(rs, i, g) + bgg_apply(rs, i, f) * g


def test_invariant_degrees():
    assert invariant_degrees(RootSystem.from_tag("A1")) == [2]
    assert invariant_degrees(RootSystem.from_tag("A2")) == [2, 3]
    assert invariant_degrees(RootSystem.from_tag("F4")) == [2, 6, 8, 12]
    assert molien_series(RootSystem.from_tag("A1"), 5) == (1, 0, 1, 0, 1, 0)


def test_generators_are_invariant():
    for tag in ["A1", "A3", "B3", "G2"]:
        rs = RootSystem.from_tag(tag)
        gens = invariant_generators(rs)
        assert sorted(q.degree() for q in gens) == invariant_degrees(rs)
        for q in gens:
            for i in range(rs.rank):
                assert reflect_poly(rs, i, q) == q
    h = Poly.gen(1, 0)
    (q,) = invariant_generators(RootSystem.from_tag("A1"))
    assert class_key(q.terms.values()) == class_key((h * h).terms.values())


def test_coinvariant_dimensions():
    rs = RootSystem.from_tag("A2")
    cs = CoinvariantSpace(rs, invariant_generators(rs), 3)
    assert sum(cs.dims()) == 6 == rs.order()
    assert poincare_dims(rs) == [1, 2, 2, 1]
    for q in invariant_generators(rs):
        assert cs.in_L(q)


def test_killing_words():
    rs = RootSystem.from_tag("A2")
    cs = CoinvariantSpace(rs, invariant_generators(rs), 3)
    h1 = Poly.gen(2, 0)
    c = cs.reduce_homogeneous(h1, 1)
    w = find_killing_word(cs, c, 1)
    assert len(w) == 1
    value = bgg_word_apply(rs, w, h1)
    assert value.is_constant() and not value.is_zero()
