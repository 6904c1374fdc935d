"""Zhelobenko invariants of the adjoint module inside h* (x) S(h).

An element sum_i varpi_i (x) q_i is stored as the tuple (q_1..q_l).  The
invariants are computed through the polynomials P_i = theta^{-1}(q_i/(h_i+2)),
which must satisfy, for all i, j,

    (1 + s_i(h_j)) A_i P_j = a[j][i] (P_i - P_j)        (cleared form)

with a[j][i] = alpha_i(h_j).  The system is solved degree by degree from a
prescribed leading term, the divided gradient of a basic invariant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .bgg import InconsistencyError, bgg_apply, invariant_generators, molien_series
from .poly import (Poly, RatFn, coefficient_vector, dot_reflect, from_coefficient_vector,
                   monomial, monomials, theta, theta_inv, to_fraction, weight_partial)
from .rootsys import RootSystem

HTuple = Tuple[Poly, ...]


# -- the operators xi_i ----------------------------------------------------------

def xi_apply(rs: RootSystem, i: int, q: Sequence[Poly]) -> Tuple[RatFn, ...]:
    """xi_i on sum_j varpi_j (x) q_j, as varpi-coefficients over the denominator h_i."""
    n = rs.rank
    hi = Poly.gen(n, i)
    sq = [dot_reflect(rs, i, qj) for qj in q]
    out = []
    for j in range(n):
        if j == i:
            out.append(RatFn(-(hi + 2) * sq[i], hi))
        else:
            out.append(RatFn(hi * sq[j] - (hi + 1) * sq[i] * rs.cartan[j][i], hi))
    return tuple(out)


def system_residuals(rs: RootSystem, P: Sequence[Poly]) -> Dict[Tuple[int, int], Poly]:
    """Nonzero residuals of (1 + s_i(h_j)) A_i P_j - a[j][i] (P_i - P_j)."""
    n = rs.rank
    out = {}
    for i in range(n):
        for j in range(n):
            c = rs.cartan[j][i]
            sihj = Poly.gen(n, j) - Poly.gen(n, i) * c
            r = (sihj + 1) * bgg_apply(rs, i, P[j]) - (P[i] - P[j]) * c
            if not r.is_zero():
                out[(i, j)] = r
    return out


def leading_system_residuals(rs: RootSystem, P0: Sequence[Poly]) -> Dict[Tuple[int, int], Poly]:
    """Nonzero residuals of the leading-term system s_i(h_j) A_i P_j = a[j][i] (P_i - P_j)."""
    n = rs.rank
    out = {}
    for i in range(n):
        for j in range(n):
            c = rs.cartan[j][i]
            sihj = Poly.gen(n, j) - Poly.gen(n, i) * c
            r = sihj * bgg_apply(rs, i, P0[j]) - (P0[i] - P0[j]) * c
            if not r.is_zero():
                out[(i, j)] = r
    return out


@dataclass
class InvarianceReport:
    invariant: bool
    by_xi: bool
    by_divisibility: bool
    residuals: Dict[int, Tuple[Poly, ...]] = field(default_factory=dict)


def _extract_P(rs: RootSystem, q: Sequence[Poly]) -> Optional[List[Poly]]:
    n = rs.rank
    P = []
    for i in range(n):
        d = Poly.gen(n, i) + 2
        if not q[i].divides_by(d):
            return None
        P.append(theta_inv(q[i].divexact(d)))
    return P


def check_invariant(rs: RootSystem, q: Sequence[Poly]) -> InvarianceReport:
    """Invariance of sum varpi_i (x) q_i under every xi_i, decided two ways.

    Route one clears the denominator h_i and compares xi_i(t) with t.  Route
    two checks divisibility of q_i by h_i + 2 and the cleared system for the
    extracted P.  The routes must agree.
    """
    n = rs.rank
    residuals = {}
    for i in range(n):
        hi = Poly.gen(n, i)
        res = tuple(x.num - q[j] * hi for j, x in enumerate(xi_apply(rs, i, q)))
        if any(not r.is_zero() for r in res):
            residuals[i] = res
    by_xi = not residuals
    P = _extract_P(rs, q)
    by_div = P is not None and not system_residuals(rs, P)
    if by_xi != by_div:
        raise InconsistencyError("the two invariance criteria disagree")
    return InvarianceReport(by_xi, by_xi, by_div, residuals)


# -- invariants -------------------------------------------------------------------

@dataclass
class ZheloInvariant:
    """A solution tuple P together with the invariant it determines."""
    P: Tuple[Poly, ...]
    q: Tuple[Poly, ...]
    p: Tuple[Poly, ...]
    m: int
    leading: Tuple[Poly, ...]
    source: Optional[Poly] = None

    def to_json(self) -> Dict:
        return {"degree": self.m,
                "q": [x.to_text() for x in self.q],
                "P": [x.to_text() for x in self.P]}


def assemble_invariant(rs: RootSystem, P: Sequence[Poly], source: Optional[Poly] = None) -> ZheloInvariant:
    """q_i = (h_i + 2) theta(P_i); rejects tuples violating the cleared system."""
    if system_residuals(rs, P):
        raise ValueError("tuple does not satisfy the Zhelobenko system")
    n = rs.rank
    p = tuple(theta(x) for x in P)
    q = tuple((Poly.gen(n, i) + 2) * p[i] for i in range(n))
    m = max(x.degree() for x in q)
    lead = tuple(x.homogeneous_part(m - 1) for x in P)
    return ZheloInvariant(tuple(P), q, p, m, lead, source)


def extract(rs: RootSystem, q: Sequence[Poly]) -> List[Poly]:
    P = _extract_P(rs, q)
    if P is None:
        raise ValueError("q_i not divisible by h_i + 2")
    return P


def leading_tuple(rs: RootSystem, inv: Poly) -> Tuple[Poly, ...]:
    """Divided gradient h_i^{-1} (varpi_i-coefficient of d inv)."""
    n = rs.rank
    out = []
    for i in range(n):
        g = weight_partial(rs, i, inv)
        try:
            out.append(g.divexact(Poly.gen(n, i)))
        except ArithmeticError as exc:
            raise InconsistencyError(f"gradient component {i + 1} not divisible by h_{i + 1}") from exc
    return tuple(out)


class _System:
    """The homogeneous degree-k part of the cleared system as a matrix."""

    def __init__(self, rs: RootSystem, k: int):
        n = rs.rank
        self.rs, self.k = rs, k
        mons = monomials(n, k)
        nk = len(mons)
        self.nk = nk
        rows = n * n * nk
        cols = n * nk
        entries: Dict[Tuple[int, int], Fraction] = {}
        idx = {e: t for t, e in enumerate(mons)}

        def add(i: int, j: int, poly: Poly, col: int) -> None:
            for e, c in poly.p.terms():
                r = (i * n + j) * nk + idx[tuple(int(x) for x in e)]
                entries[(r, col)] = entries.get((r, col), 0) + to_fraction(c)

        for j in range(n):
            hj = Poly.gen(n, j)
            for t, e in enumerate(mons):
                col = j * nk + t
                mu = monomial(n, e)
                for i in range(n):
                    c = rs.cartan[j][i]
                    term = (hj - Poly.gen(n, i) * c) * bgg_apply(rs, i, mu)
                    if i != j:
                        term = term + mu * c
                    add(i, j, term, col)
                for j2 in range(n):
                    if j2 != j and rs.cartan[j2][j]:
                        add(j, j2, mu * (-rs.cartan[j2][j]), col)
        self.rows, self.cols = rows, cols
        self.entries = {key: v for key, v in entries.items() if v != 0}

    def matrix(self, rhs: Optional[List[Fraction]] = None) -> flint.fmpq_mat:
        extra = 1 if rhs is not None else 0
        m = flint.fmpq_mat(self.rows, self.cols + extra)
        for (r, c), v in self.entries.items():
            m[r, c] = flint.fmpq(v.numerator, v.denominator)
        if rhs is not None:
            for r, v in enumerate(rhs):
                if v:
                    m[r, self.cols] = flint.fmpq(v.numerator, v.denominator)
        return m

    def encode(self, P: Sequence[Poly]) -> List[Fraction]:
        out: List[Fraction] = []
        for x in P:
            out.extend(coefficient_vector(x, self.k))
        return out

    def decode(self, v: Sequence[Fraction]) -> List[Poly]:
        n = self.rs.rank
        return [from_coefficient_vector(n, self.k, v[j * self.nk:(j + 1) * self.nk]) for j in range(n)]

    def rhs_from_above(self, upper: Sequence[Poly]) -> List[Fraction]:
        """-A_i P_j^{(k+1)} laid out like the rows."""
        n = self.rs.rank
        out = [Fraction(0)] * self.rows
        for i in range(n):
            for j in range(n):
                a = bgg_apply(self.rs, i, upper[j])
                vec = coefficient_vector(a, self.k)
                base = (i * n + j) * self.nk
                for t, c in enumerate(vec):
                    if c:
                        out[base + t] = -c
        return out

    @lru_cache(maxsize=None)
    def kernel_dimension(self) -> int:
        return self.cols - self.matrix().rank()

    def solve(self, rhs: List[Fraction]) -> List[Fraction]:
        red, rank = self.matrix(rhs).rref()
        sol = [Fraction(0)] * self.cols
        for r in range(rank):
            c = next(c for c in range(self.cols + 1) if red[r, c] != 0)
            if c == self.cols:
                raise InconsistencyError(f"no solution in degree {self.k}")
            sol[c] = to_fraction(red[r, self.cols])
        return sol


@lru_cache(maxsize=None)
def _system(rs: RootSystem, k: int) -> _System:
    return _System(rs, k)


def solve_from_leading(rs: RootSystem, lead: Sequence[Poly]) -> List[Poly]:
    """Complete a leading-term tuple of degree d to a solution of the full system."""
    d = max(x.degree() for x in lead)
    if leading_system_residuals(rs, lead):
        raise InconsistencyError("leading tuple does not satisfy the homogeneous system")
    parts = {d: list(lead)}
    for k in range(d - 1, -1, -1):
        sysk = _system(rs, k)
        parts[k] = sysk.decode(sysk.solve(sysk.rhs_from_above(parts[k + 1])))
    n = rs.rank
    P = [sum((parts[k][j] for k in range(d + 1)), Poly(n)) for j in range(n)]
    if system_residuals(rs, P):
        raise InconsistencyError("assembled tuple fails the Zhelobenko system")
    return P


@lru_cache(maxsize=None)
def solve_generators(rs: RootSystem, max_count: Optional[int] = None) -> Tuple[ZheloInvariant, ...]:
    """One generator invariant per basic invariant, in increasing degree.

    The leading term of the generator built from an invariant of degree m+1
    is its divided gradient (degree m-1); lower terms are filled in degree by
    degree.  Kernel dimensions of the homogeneous systems are compared with
    the Molien series as a freeness check.
    """
    gens = invariant_generators(rs)
    if max_count is not None:
        gens = gens[:max_count]
    out = []
    for g in gens:
        lead = leading_tuple(rs, g)
        P = solve_from_leading(rs, lead)
        inv = assemble_invariant(rs, P, source=g)
        if not check_invariant(rs, inv.q).invariant:
            raise InconsistencyError("assembled invariant is not fixed by the xi_i")
        out.append(inv)
    return tuple(out)


def freeness_report(rs: RootSystem, max_k: Optional[int] = None) -> Dict[int, Tuple[int, int]]:
    """For each degree k: (kernel dimension of the homogeneous system, expected rank).

    The invariants form a free S(h)^W-module on generators of degrees m_i, so
    the leading terms of degree k span sum_i dim S(h)^W_{k+1-m_i} dimensions.
    """
    exps = rs.exponents()
    top = max(exps) - 1 if max_k is None else max_k
    series = molien_series(rs, top + 2)
    out = {}
    for k in range(top + 1):
        expected = sum(int(series[k + 1 - m]) for m in exps if k + 1 - m >= 0)
        out[k] = (_system(rs, k).kernel_dimension(), expected)
    return out


def generator_independence(rs: RootSystem, invariants: Sequence[ZheloInvariant]) -> bool:
    """Leading tuples of equal degree are independent modulo invariant multiples of lower ones."""
    from .bgg import _products
    gens = list(invariant_generators(rs))
    degs = [g.degree() for g in gens]
    for m in sorted({inv.m for inv in invariants}):
        k = m - 1

        def vec(t):
            out = []
            for x in t:
                out.extend(coefficient_vector(x, k))
            return out

        rows = []
        for low in invariants:
            if low.m < m:
                for f in _products(gens, degs, m - low.m):
                    rows.append(vec(tuple(f * x for x in low.leading)))
        same = [vec(inv.leading) for inv in invariants if inv.m == m]
        if _rank(rows + same) != _rank(rows) + len(same):
            return False
    return True


def _rank(rows: List[List[Fraction]]) -> int:
    if not rows:
        return 0
    m = flint.fmpq_mat(len(rows), len(rows[0]), [flint.fmpq(x.numerator, x.denominator) for r in rows for x in r])
    return m.rank()
