"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from zhelokit.bgg import bgg_apply, bgg_word_apply, invariant_degrees
from zhelokit.chevalley import ChevalleyBasis, build_Mr, check_jacobi, rank_of, verify_72_identities
from zhelokit.monoid import (check_pmap, enumerate_monoid, propagate_P, verify_78, verify_81)
from zhelokit.poly import Poly, monomials, reflect_poly
from zhelokit.rootsys import RootSystem
from zhelokit.verify import S, SRat, adjust_and_check_eq24, check_analogue_kostant, check_symmetric_kostant
from zhelokit.zhelobenko import check_invariant, solve_generators

ALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]

EXPECTED_EXPONENTS = {
    "A1": [1], "A2": [1, 2], "A3": [1, 2, 3], "A4": [1, 2, 3, 4],
    "B2": [1, 3], "B3": [1, 3, 5], "B4": [1, 3, 5, 7], "C3": [1, 3, 5], "C4": [1, 3, 5, 7],
    "D4": [1, 3, 3, 5], "F4": [1, 5, 7, 11], "G2": [1, 5],
}


def report(name: str, ok: bool, detail: str = "") -> None:
    print(f"PASS {name}" if ok else f"FAIL {name}: {detail}")
    assert ok, detail


def random_poly(rng: random.Random, rank: int, max_deg: int = 6, terms: int = 3) -> Poly:
    exps = [e for d in range(max_deg + 1) for e in monomials(rank, d)]
    chosen = rng.sample(exps, min(terms, len(exps)))
    return Poly.from_terms(rank, {e: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for e in chosen})


def test_criterion_01_bgg_laws():
    rng = random.Random(20241)
    bad = []
    for tag in ALL:
        rs = RootSystem.from_tag(tag)
        w1, w2 = rs.longest_words()
        for _ in range(50):
            f = random_poly(rng, rs.rank)
            g = random_poly(rng, rs.rank, max_deg=3, terms=2)
            for i in range(rs.rank):
                if not bgg_apply(rs, i, bgg_apply(rs, i, f)).is_zero():
                    bad.append((tag, "square", i))
                lhs = bgg_apply(rs, i, f * g)
                rhs = bgg_apply(rs, i, f) * g + reflect_poly(rs, i, f) * bgg_apply(rs, i, g)
                if lhs != rhs:
                    bad.append((tag, "leibniz", i))
            if bgg_word_apply(rs, w1, f) != bgg_word_apply(rs, w2, f):
                bad.append((tag, "braid"))
    report("criterion 1 (BGG laws)", not bad, str(bad[:5]))


def test_criterion_02_exponents():
    bad = []
    for tag in ALL:
        rs = RootSystem.from_tag(tag)
        exps = rs.exponents()
        if exps != EXPECTED_EXPONENTS[tag] or sorted(d - 1 for d in invariant_degrees(rs)) != exps:
            bad.append(tag)
    report("criterion 2 (exponents)", not bad, str(bad))


def test_criterion_03_zhelobenko_generators():
    bad = []
    for tag in ALL:
        rs = RootSystem.from_tag(tag)
        gens = solve_generators(rs)
        degrees = sorted(max(p.degree() for p in g.P) for g in gens)
        if len(gens) != rs.rank or degrees != [m - 1 for m in EXPECTED_EXPONENTS[tag]]:
            bad.append((tag, degrees))
            continue
        if not all(check_invariant(rs, g.q).invariant for g in gens):
            bad.append((tag, "invariance"))
    report("criterion 3 (Zhelobenko generators)", not bad, str(bad))


def test_criterion_04_monoid_census():
    bad = []
    f4 = enumerate_monoid(RootSystem.from_tag("F4"))
    top = f4.maximal_elements()
    killed = [e for e in f4.killed_by_all() if e.length == max(x.length for x in f4.elements)]
    if (len(f4.elements) != 42 or f4.level_counts() != [4, 4, 5, 6, 5, 4, 4, 4, 3, 2, 1]
            or len(top) != 1 or killed != top):
        bad.append("F4")
    b3 = enumerate_monoid(RootSystem.from_tag("B3"))
    listing = {5: ["1232(1)"], 4: ["123(2)", "232(1)"], 3: ["12(3)", "23(2)", "32(1)"],
               2: ["1(2)", "2(3)", "3(2)"], 1: ["(1)", "(2)", "(3)"]}
    words = {length: sorted(e.witness for e in es) for length, es in b3.levels().items()}
    found = {}
    for length, ws in listing.items():
        found[length] = sorted(_element(b3, w).witness for w in ws)
    if found != words or b3.word_element((0,), 1) is not b3.word_element((1,), 0):
        bad.append(("B3", words))
    for tag, levels in [("A4", [4, 3, 2, 1]), ("D4", [4, 3, 3, 1, 1]),
                        ("B4", [4, 4, 4, 4, 3, 2, 1]), ("C4", [4, 4, 4, 4, 3, 2, 1])]:
        got = enumerate_monoid(RootSystem.from_tag(tag)).level_counts()
        if got != levels:
            bad.append((tag, got))
    report("criterion 4 (monoid census)", not bad, str(bad))


def _element(g, word: str):
    letters, gen = word[:-3], word[-2]
    return g.word_element(tuple(int(c) - 1 for c in letters), int(gen) - 1)


def test_criterion_05_pmap():
    bad = []
    for tag in ["A1", "A2", "A3", "A4", "B3", "B4", "C3", "C4", "D4", "F4"]:
        rep = check_pmap(enumerate_monoid(RootSystem.from_tag(tag)))
        if not rep.ok:
            bad.append((tag, rep))
    report("criterion 5 (coroot map)", not bad, str(bad))


def test_criterion_06_structure_constants():
    bad = []
    for tag in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "F4"]:
        cb = ChevalleyBasis(RootSystem.from_tag(tag))
        identities = {} if tag == "G2" else verify_72_identities(cb)
        for name, rep in identities.items():
            if not rep.ok:
                bad.append((tag, name, rep.failures[:3]))
        if cb.rank <= 3 and not check_jacobi(cb).ok:
            bad.append((tag, "jacobi"))
    report("criterion 6 (structure constants)", not bad, str(bad))


def test_criterion_07_recurrences():
    bad = []
    for tag in ["A2", "A3", "B3", "C3", "D4", "B4", "C4", "F4"]:
        rs = RootSystem.from_tag(tag)
        top = solve_generators(rs)[-1]
        full = propagate_P(rs, top.P)
        lead = propagate_P(rs, top.leading, leading=True)
        if full.disagreements or lead.disagreements:
            bad.append((tag, "path dependence"))
        if not verify_78(full).ok or not verify_81(lead).ok:
            bad.append((tag, "recurrence"))
    report("criterion 7 (recurrences)", not bad, str(bad))


def test_criterion_08_rank_of_Mr():
    bad = []
    for tag in ALL:
        rs = RootSystem.from_tag(tag)
        cb = ChevalleyBasis(rs)
        for r, n in enumerate(rs.level_counts(), start=1):
            if r >= 2 and rank_of(build_Mr(cb, r)) != n:
                bad.append((tag, r))
    report("criterion 8 (rank of M_r)", not bad, str(bad))


def test_criterion_09_nilpotency():
    bad = []
    for tag in ALL:
        rs = RootSystem.from_tag(tag)
        if not all(c.ok for c in check_analogue_kostant(rs)):
            bad.append((tag, "Zhelobenko invariants"))
        if not all(c.ok for c in check_symmetric_kostant(rs)):
            bad.append((tag, "gradients"))
    report("criterion 9 (nilpotency along s*rho)", not bad, str(bad))


@pytest.mark.parametrize("tag,m", [("B3", 5), ("A3", 3)])
def test_criterion_10_ratio_descent(tag, m):
    rep = adjust_and_check_eq24(RootSystem.from_tag(tag), m)
    ratio = SRat(S ** 0)
    for r in range(2, m + 1):
        ratio = ratio * SRat(1 + r * S, r * S)
    report(f"criterion 10 (ratio descent, {tag} m={m})", rep.ok and rep.ratio == ratio, rep.ratio.text())
