from __future__ import annotations

from fractions import Fraction

import pytest

from zhelokit.chevalley import (ChevalleyBasis, DualElement, ad_power, annihilating_power, build_Mr,
                                check_jacobi, embed_weight_vector, principal_e, rank_of,
                                verify_72_identities)
from zhelokit.rootsys import CartanError, RootSystem


def test_antisymmetry_and_magnitudes():
    for tag, allowed in [("A3", {1}), ("D4", {1}), ("B3", {1, 2}), ("C3", {1, 2}), ("G2", {1, 2, 3})]:
        cb = ChevalleyBasis(RootSystem.from_tag(tag))
        rows = cb.table()
        assert rows
        for x, y, n in rows:
            assert cb.N(y, x) == -n
            assert abs(n) in allowed


def test_a1_has_no_structure_constants():
    assert ChevalleyBasis(RootSystem.from_tag("A1")).table() == []


def test_dual_of_b_has_a_two():
    cb = ChevalleyBasis(RootSystem.from_tag("B2"))
    assert max(abs(n) for _, _, n in cb.table()) == 2


def test_jacobi_small_ranks():
    for tag in ["A2", "B2", "G2", "A3", "C3"]:
        assert check_jacobi(ChevalleyBasis(RootSystem.from_tag(tag))).ok, tag


def test_identity_one_in_a2():
    cb = ChevalleyBasis(RootSystem.from_tag("A2"))
    a, g = (1, 0), (0, 1)
    assert cb.N(a, g) * cb.N((-1, 0), (1, 1)) == 1
    reps = verify_72_identities(cb)
    assert all(r.ok for r in reps.values())
    assert reps["iii"].checked == 0 or reps["iii"].ok


def test_identities_reject_g2():
    with pytest.raises(CartanError):
        verify_72_identities(ChevalleyBasis(RootSystem.from_tag("G2")))


def test_sl2_nilpotency():
    cb = ChevalleyBasis(RootSystem.from_tag("A1"))
    e = principal_e(cb)
    h = DualElement.cartan_vector([Fraction(1)])
    assert not ad_power(cb, e, h, 1).is_zero()
    assert ad_power(cb, e, h, 2).is_zero()
    assert annihilating_power(cb, e, h) == 2


def test_principal_nilpotent_kills_everything():
    for tag in ["A2", "B3", "G2"]:
        rs = RootSystem.from_tag(tag)
        cb = ChevalleyBasis(rs)
        e = principal_e(cb)
        top = 2 * max(rs.exponents()) + 1
        for v in cb.basis():
            assert ad_power(cb, e, v, top).is_zero()


def test_weight_embedding():
    a1 = RootSystem.from_tag("A1")
    assert embed_weight_vector(a1, [Fraction(1)]).cartan == (Fraction(1, 2),)
    a2 = RootSystem.from_tag("A2")
    v = embed_weight_vector(a2, [Fraction(1), Fraction(0)])
    assert v.cartan == (Fraction(2, 3), Fraction(1, 3))
    rho = embed_weight_vector(a2, [Fraction(1), Fraction(1)])
    assert rho.cartan == (Fraction(1), Fraction(1))


def test_rank_of_Mr():
    a2 = ChevalleyBasis(RootSystem.from_tag("A2"))
    m = build_Mr(a2, 2)
    assert len(m) == 2 and len(m[0]) == 1 and rank_of(m) == 1
    assert rank_of(build_Mr(a2, 3)) == 0
    f4 = RootSystem.from_tag("F4")
    cb = ChevalleyBasis(f4)
    for r, n in enumerate(f4.level_counts(), start=1):
        if r >= 2:
            assert rank_of(build_Mr(cb, r)) == n
