"""End-to-end checks: nilpotency of ad(e) on gradient vectors and on
Zhelobenko invariants evaluated along s*rho, the level-by-level ratio descent
that proves it, and the generator count per level.

Everything is exact; s is a formal variable, so "for all s" is checked as a
polynomial identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .bgg import InconsistencyError, invariant_generators
from .chevalley import (ChevalleyBasis, DualElement, ad_power, annihilating_power, build_Mr,
                        embed_weight_vector, principal_e, rank_of)
from .monoid import PGammaTable, propagate_P
from .poly import eval_srho, gradient, s_poly_text, to_fraction
from .rootsys import RootSystem, Vec, height
from .zhelobenko import ZheloInvariant, solve_generators

SZERO = flint.fmpq_poly(0)
SONE = flint.fmpq_poly(1)
S = flint.fmpq_poly([0, 1])


def _s_vector(rs: RootSystem, coeffs: Sequence[flint.fmpq_poly]) -> DualElement:
    return embed_weight_vector(rs, coeffs, zero=SZERO)


def _e(cb: ChevalleyBasis, scale: int = 1) -> DualElement:
    return principal_e(cb, zero=SZERO, one=SONE * scale)


@dataclass
class NilpotencyCheck:
    m: int
    vanishes: bool
    minimal_power: int
    scaled_agrees: bool

    @property
    def ok(self) -> bool:
        return self.vanishes and self.scaled_agrees


def _nilpotency(cb: ChevalleyBasis, v: DualElement, m: int) -> NilpotencyCheck:
    e = _e(cb)
    vanishes = ad_power(cb, e, v, m + 1).is_zero()
    k = annihilating_power(cb, e, v)
    scaled = ad_power(cb, _e(cb, 3), v, m + 1).is_zero() == vanishes
    return NilpotencyCheck(m, vanishes, k, scaled)


# -- symmetric version -----------------------------------------------------------------

def check_symmetric_kostant(rs: RootSystem) -> List[NilpotencyCheck]:
    """ad(e)^{m+1} kills sum varpi_i (d q / d varpi_i)(s rho) for each basic invariant q."""
    cb = ChevalleyBasis(rs)
    out = []
    for q in invariant_generators(rs):
        m = q.degree() - 1
        v = _s_vector(rs, [eval_srho(g) for g in gradient(rs, q)])
        out.append(_nilpotency(cb, v, m))
    return out


# -- the analogue for Zhelobenko invariants ------------------------------------------------

@dataclass
class AnalogueCheck:
    m: int
    on_q: NilpotencyCheck
    on_P: NilpotencyCheck
    on_leading: NilpotencyCheck

    @property
    def ok(self) -> bool:
        return self.on_q.ok and self.on_P.ok and self.on_leading.ok

    @property
    def minimal_power(self) -> int:
        return self.on_q.minimal_power


def check_invariant_nilpotency(rs: RootSystem, inv: ZheloInvariant,
                               cb: Optional[ChevalleyBasis] = None) -> AnalogueCheck:
    """Three normalizations: q_i, the translated P_i, and the leading terms P0_i."""
    cb = cb or ChevalleyBasis(rs)
    vq = _s_vector(rs, [eval_srho(x) for x in inv.q])
    vp = _s_vector(rs, [eval_srho(x) for x in inv.P])
    v0 = _s_vector(rs, [eval_srho(x) for x in inv.leading])
    return AnalogueCheck(inv.m, _nilpotency(cb, vq, inv.m), _nilpotency(cb, vp, inv.m),
                         _nilpotency(cb, v0, inv.m))


def check_analogue_kostant(rs: RootSystem) -> List[AnalogueCheck]:
    cb = ChevalleyBasis(rs)
    return [check_invariant_nilpotency(rs, inv, cb) for inv in solve_generators(rs)]


# -- rational functions of s ------------------------------------------------------------

class SRat:
    """num/den with univariate rational polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=SONE):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den) if num != 0 else den
        num, den = num / g, den / g
        lead = den.coeffs()[-1]
        self.num, self.den = num / lead, den / lead

    def __add__(self, other: "SRat") -> "SRat":
        return SRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "SRat") -> "SRat":
        return SRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other) -> "SRat":
        if isinstance(other, SRat):
            return SRat(self.num * other.num, self.den * other.den)
        return SRat(self.num * other, self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SRat):
            other = SRat(other)
        return self.num * other.den == other.num * self.den

    def is_zero(self) -> bool:
        return self.num == 0

    def text(self) -> str:
        if self.den == 1:
            return s_poly_text(self.num)
        return f"({s_poly_text(self.num)})/({s_poly_text(self.den)})"


def _solve_constant(a: List[List[Fraction]], rhs: List[SRat]) -> List[SRat]:
    """Solve a x = rhs for a square invertible rational matrix a."""
    n = len(a)
    m = flint.fmpq_mat(n, n, [flint.fmpq(x.numerator, x.denominator) for row in a for x in row])
    inv = m.inv()
    out = []
    for j in range(n):
        acc = SRat(SZERO)
        for k in range(n):
            c = inv[j, k]
            if c != 0:
                acc = acc + rhs[k] * c
        out.append(acc)
    return out


# -- the level-by-level descent ------------------------------------------------------------

@dataclass
class KernelAdjustment:
    level: int
    kernel_dim: int
    R: List[Vec] = field(default_factory=list)
    b: List[SRat] = field(default_factory=list)
    proportional: bool = False


@dataclass
class DescentReport:
    m: int
    start_ok: bool
    levels: List[KernelAdjustment]
    ratio: SRat
    final_ok: bool

    @property
    def ok(self) -> bool:
        return self.start_ok and self.final_ok and all(a.proportional for a in self.levels)

    def to_json(self) -> Dict:
        return {"m": self.m, "ok": self.ok, "ratio": self.ratio.text(),
                "levels": [{"r": a.level, "kernel_dim": a.kernel_dim,
                            "R": [list(g) for g in a.R], "b": [x.text() for x in a.b],
                            "proportional": a.proportional} for a in self.levels]}


def _values(table: PGammaTable) -> Dict[Vec, SRat]:
    return {g: SRat(eval_srho(p)) for g, p in table.polys.items()}


def _level(rs: RootSystem, r: int) -> List[Vec]:
    return rs.coroots_of_height(r)


def _proportional(x: Dict[Vec, SRat], y: Dict[Vec, SRat], coroots: Sequence[Vec], c: SRat) -> bool:
    return all(x[g] == y[g] * c for g in coroots)


def adjust_and_check_eq24(rs: RootSystem, m: int, which: int = 0) -> DescentReport:
    """Descend from level m to level 1, correcting with lower-degree generators.

    At each level r the values P_gamma(s rho) (height r-1) are forced, modulo
    ker M_r, to equal c_{r-1} P0_gamma(s rho) with c_{r-1} = c_r (1+sr)/(sr).
    The kernel part is fixed by adding multiples of the generator tuples of
    exponent r-1, whose values at height r-1 are scalars.
    """
    gens = solve_generators(rs)
    mains = [g for g in gens if g.m == m]
    if not mains:
        raise ValueError(f"{m} is not an exponent of {rs.tag}")
    main = mains[which]
    x = _values(propagate_P(rs, main.P))
    y = _values(propagate_P(rs, main.leading, leading=True))
    top = [g for g in rs.positive_coroots if height(g) >= m]
    start_ok = (all(x[g].is_zero() and y[g].is_zero() for g in top if height(g) > m)
                and all(x[g] == y[g] and y[g].num.degree() <= 0 for g in _level(rs, m)))
    c = SRat(SONE)
    levels = []
    cb = ChevalleyBasis(rs)
    for r in range(m, 1, -1):
        c = c * SRat(1 + r * S, r * S)
        low = _level(rs, r - 1)
        kdim = len(low) - rank_of(build_Mr(cb, r))
        adj = KernelAdjustment(r, kdim)
        if kdim:
            lower = [g for g in gens if g.m == r - 1]
            if len(lower) != kdim:
                raise InconsistencyError(f"level {r}: {len(lower)} generators for a kernel of dimension {kdim}")
            tables = [_values(propagate_P(rs, g.P)) for g in lower]
            z = [[_scalar(tab[g]) for g in low] for tab in tables]
            cols = _choose_R(z)
            adj.R = [low[k] for k in cols]
            a = [[z[j][k] for j in range(kdim)] for k in cols]
            rhs = [y[low[k]] * c - x[low[k]] for k in cols]
            adj.b = _solve_constant(a, rhs)
            for b, tab in zip(adj.b, tables):
                for g in x:
                    x[g] = x[g] + tab[g] * b
        adj.proportional = _proportional(x, y, low, c)
        levels.append(adj)
    final_ok = _proportional(x, y, _level(rs, 1), c)
    return DescentReport(m, start_ok, levels, c, final_ok)


def _scalar(v: SRat) -> Fraction:
    if v.num.degree() > 0 or v.den.degree() > 0:
        raise InconsistencyError("lower generator is not scalar at its top level")
    return to_fraction(v.num.coeffs()[0]) if v.num != 0 else Fraction(0)


def _choose_R(z: List[List]) -> List[int]:
    """Greedy coordinate choice making the kernel-tuple matrix invertible."""
    chosen: List[int] = []
    n = len(z)
    for k in range(len(z[0])):
        trial = chosen + [k]
        mat = [[z[j][c] for c in trial] for j in range(n)]
        if rank_of(mat) == len(trial):
            chosen = trial
        if len(chosen) == n:
            return chosen
    raise InconsistencyError("kernel tuples are linearly dependent")


# -- counting ---------------------------------------------------------------------------------

@dataclass
class CountingReport:
    per_level: Dict[int, Tuple[int, int, int]]
    ok: bool


def check_generator_counting(rs: RootSystem) -> CountingReport:
    """For r >= 2: #generators of exponent r-1 = n_{r-1} - n_r = dim ker M_r."""
    cb = ChevalleyBasis(rs)
    gens = solve_generators(rs)
    counts = rs.level_counts() + [0]
    out = {}
    ok = True
    for r in range(2, len(counts) + 1):
        expected = counts[r - 2] - counts[r - 1]
        kernel = len(rs.coroots_of_height(r - 1)) - rank_of(build_Mr(cb, r))
        found = sum(1 for g in gens if g.m == r - 1)
        out[r] = (found, expected, kernel)
        ok = ok and found == expected == kernel
    ok = ok and sum(v[0] for v in out.values()) + sum(1 for g in gens if g.m == 0) == rs.rank
    return CountingReport(out, ok)


# -- full report -------------------------------------------------------------------------------

def verification_report(rs: RootSystem, with_descent: bool = True) -> Dict:
    from .monoid import enumerate_monoid
    from .rootsys import exponents

    try:
        exps = exponents(rs, check=True)
        exp_ok = True
    except Exception:
        exps, exp_ok = rs.exponents(), False
    sym = check_symmetric_kostant(rs)
    ana = check_analogue_kostant(rs)
    entries = []
    counts: Dict[int, int] = {}
    for chk in ana:
        k = counts.get(chk.m, 0)
        counts[chk.m] = k + 1
        entry = {"m": chk.m, "nilpotency": "pass" if chk.ok else "fail",
                 "minimal_power": chk.minimal_power}
        if with_descent and rs.family != "G":
            entry["ratio_descent"] = "pass" if adjust_and_check_eq24(rs, chk.m, k).ok else "fail"
        else:
            entry["ratio_descent"] = None
        entries.append(entry)
    census = enumerate_monoid(rs).level_counts()
    counting = check_generator_counting(rs)
    ok = (exp_ok and all(c.ok for c in sym) and all(e["nilpotency"] == "pass" for e in entries)
          and all(e["ratio_descent"] in (None, "pass") for e in entries) and counting.ok)
    return {
        "type": rs.tag,
        "ok": ok,
        "exponent_check": {"exponents": exps, "pass": exp_ok},
        "symmetric": [{"m": c.m, "pass": c.ok, "minimal_power": c.minimal_power} for c in sym],
        "generators": entries,
        "generator_counting": counting.ok,
        "monoid_census": census,
    }
