"""Divided-difference operators, Weyl invariants and the coinvariant algebra."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .poly import (Poly, coefficient_vector, from_coefficient_vector, monomial,
                   monomials, reflect_poly, to_fraction, to_fmpq)
from .rootsys import RootSystem


class InconsistencyError(RuntimeError):
    """An identity that must hold exactly was found to fail."""


# -- operators --------------------------------------------------------------------

def bgg_apply(rs: RootSystem, i: int, q: Poly) -> Poly:
    """A_i q = (q - s_i q) / h_i."""
    num = q - reflect_poly(rs, i, q)
    try:
        return num.divexact(Poly.gen(q.rank, i))
    except ArithmeticError as exc:  # cannot happen: num is s_i-antisymmetric
        raise InconsistencyError(f"A_{i + 1} numerator not divisible by h_{i + 1}") from exc


def bgg_word_apply(rs: RootSystem, word: Sequence[int], q: Poly) -> Poly:
    """A_{i_1} ... A_{i_r} q (the rightmost letter acts first)."""
    for i in reversed(tuple(word)):
        if q.is_zero():
            break
        q = bgg_apply(rs, i, q)
    return q


def braid_words(rs: RootSystem, i: int, j: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """The two sides of the braid relation between letters i and j."""
    mij = rs.cartan[i][j] * rs.cartan[j][i]
    order = {0: 2, 1: 3, 2: 4, 3: 6}[mij]
    left = tuple(i if k % 2 == 0 else j for k in range(order))
    right = tuple(j if k % 2 == 0 else i for k in range(order))
    return left, right


# -- invariant theory ---------------------------------------------------------------

def _series_inverse(p: Sequence[int], n: int) -> List[Fraction]:
    """Power series of 1/p(t) up to t^n (p[0] must be 1)."""
    out = [Fraction(0)] * (n + 1)
    out[0] = Fraction(1, p[0])
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, min(k, len(p) - 1) + 1):
            acc += p[j] * out[k - j]
        out[k] = -acc / p[0]
    return out


@lru_cache(maxsize=None)
def molien_series(rs: RootSystem, n: int) -> Tuple[Fraction, ...]:
    """Hilbert series of S(h)^W up to t^n via Molien's formula."""
    classes: Counter = Counter()
    for w in rs.weyl_group:
        cp = flint.fmpz_mat([list(r) for r in w.matrix]).charpoly()
        coeffs = [int(c) for c in cp.coeffs()]  # ascending in x
        classes[tuple(reversed(coeffs))] += 1  # det(1 - t w), ascending in t
    total = [Fraction(0)] * (n + 1)
    for p, mult in classes.items():
        for k, c in enumerate(_series_inverse(p, n)):
            total[k] += mult * c
    order = len(rs.weyl_group)
    return tuple(c / order for c in total)


def invariant_degrees(rs: RootSystem) -> List[int]:
    """Degrees of the basic invariants read off the Molien series."""
    n = 8
    while True:
        h = molien_series(rs, n)
        found: List[int] = []
        prod = [Fraction(0)] * (n + 1)
        prod[0] = Fraction(1)
        for k in range(1, n + 1):
            extra = h[k] - prod[k]
            if extra < 0 or extra.denominator != 1:
                raise InconsistencyError("Molien series is not a product of geometric series")
            for _ in range(int(extra)):
                found.append(k)
                for t in range(k, n + 1):
                    prod[t] += prod[t - k]
            if len(found) == rs.rank:
                return found
        n *= 2


def _orbit(rs: RootSystem, v: Sequence[Fraction]) -> List[Tuple[Fraction, ...]]:
    start = tuple(v)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for i in range(rs.rank):
            k = sum(c * rs.cartan[j][i] for j, c in enumerate(x))
            y = list(x)
            y[i] -= k
            y = tuple(y)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return sorted(seen)


def _power_sum(rs: RootSystem, orbit, k: int) -> Poly:
    n = rs.rank
    acc = Poly(n)
    for v in orbit:
        acc = acc + Poly.linear(n, v) ** k
    return acc


def _normalize(q: Poly) -> Poly:
    """Scale to primitive integer coefficients with positive leading coefficient."""
    terms = q.terms
    den = lcm(*[c.denominator for c in terms.values()])
    nums = [int(c * den) for c in terms.values()]
    g = 0
    for x in nums:
        g = gcd(g, x)
    lead = max(terms, key=lambda e: (sum(e), e))
    sign = 1 if terms[lead] > 0 else -1
    return q.scale(Fraction(sign * den, g))


def _candidate_vectors(rs: RootSystem) -> List[Tuple[Fraction, ...]]:
    n = rs.rank
    out = [tuple(Fraction(int(j == i)) for j in range(n)) for i in range(n)]
    inv = rs.inverse_cartan
    for i in range(n):
        out.append(tuple(inv[i][k] for k in range(n)))  # fundamental coweight
    for i in range(n):
        for j in range(i + 1, n):
            out.append(tuple(inv[i][k] + 2 * inv[j][k] for k in range(n)))
    return out


def _span_rank(vectors: List[List[Fraction]]) -> int:
    if not vectors:
        return 0
    m = flint.fmpq_mat(len(vectors), len(vectors[0]), [to_fmpq(x) for v in vectors for x in v])
    return m.rank()


def _products(gens: List[Poly], degs: List[int], d: int) -> List[Poly]:
    """All products of the given generators of total degree d."""
    out: List[Poly] = []

    def rec(start: int, remaining: int, acc: Poly) -> None:
        if remaining == 0:
            out.append(acc)
            return
        for k in range(start, len(gens)):
            if degs[k] <= remaining:
                rec(k, remaining - degs[k], acc * gens[k])

    if gens:
        rec(0, d, Poly.const(gens[0].rank, 1))
    return out


@lru_cache(maxsize=None)
def invariant_generators(rs: RootSystem) -> Tuple[Poly, ...]:
    """Homogeneous basic invariants, one per degree (with multiplicity).

    Built from power sums over W-orbits of coroot-lattice vectors, keeping a
    candidate only when it is independent of the subalgebra generated so far.
    The quadratic generator is scaled so that its divided gradient is the
    all-ones tuple.
    """
    from .poly import weight_partial
    degrees = invariant_degrees(rs)
    orbits = [_orbit(rs, v) for v in _candidate_vectors(rs)]
    gens: List[Poly] = []
    gdeg: List[int] = []
    for d in degrees:
        base = [coefficient_vector(p, d) for p in _products(gens, gdeg, d)]
        r0 = _span_rank(base)
        chosen = None
        for orb in orbits:
            cand = _power_sum(rs, orb, d)
            if cand.is_zero():
                continue
            if _span_rank(base + [coefficient_vector(cand, d)]) > r0:
                chosen = cand
                break
        if chosen is None:
            raise InconsistencyError(f"no invariant generator found in degree {d}")
        chosen = _normalize(chosen)
        if d == 2:
            c = weight_partial(rs, 0, chosen).divexact(Poly.gen(rs.rank, 0))
            chosen = chosen.scale(1 / c.constant_value())
        gens.append(chosen)
        gdeg.append(d)
    for g in gens:
        for i in range(rs.rank):
            if reflect_poly(rs, i, g) != g:
                raise InconsistencyError("generator is not W-invariant")
    return tuple(gens)


# -- coinvariant algebra -------------------------------------------------------------

class CoinvariantSpace:
    """Q = S(h)/L degree by degree, with reduction to coordinates.

    In degree d the ideal L_d is spanned by (generator x monomial); after row
    reduction the non-pivot monomials give a basis of Q_d and a polynomial is
    reduced by eliminating its pivot coordinates.
    """

    def __init__(self, rs: RootSystem, generators: Sequence[Poly], max_degree: int):
        self.rs = rs
        self.rank = rs.rank
        self.generators = list(generators)
        self.max_degree = max_degree
        self._data: Dict[int, Tuple[List[int], List[int], flint.fmpq_mat]] = {}
        for d in range(max_degree + 1):
            self._build(d)

    def _build(self, d: int) -> None:
        mons = monomials(self.rank, d)
        rows: List[List[Fraction]] = []
        for g in self.generators:
            e = g.degree()
            if 0 < e <= d:
                for mu in monomials(self.rank, d - e):
                    rows.append(coefficient_vector(g * monomial(self.rank, mu), d))
        ncols = len(mons)
        if rows:
            m = flint.fmpq_mat(len(rows), ncols, [to_fmpq(x) for r in rows for x in r])
            red, rank = m.rref()
        else:
            red, rank = flint.fmpq_mat(0, ncols), 0
        pivots: List[int] = []
        for r in range(rank):
            c = next(c for c in range(ncols) if red[r, c] != 0)
            pivots.append(c)
        pivset = set(pivots)
        free = [c for c in range(ncols) if c not in pivset]
        tail = flint.fmpq_mat(rank, len(free), [red[r, c] for r in range(rank) for c in free])
        self._data[d] = (pivots, free, tail)

    def dim(self, d: int) -> int:
        return len(self._data[d][1])

    def dims(self) -> List[int]:
        return [self.dim(d) for d in range(self.max_degree + 1)]

    def reduce_homogeneous(self, q: Poly, d: int) -> Tuple[Fraction, ...]:
        """Coordinates in Q_d of the degree-d part of q."""
        if d > self.max_degree:
            raise ValueError(f"coinvariant space built only up to degree {self.max_degree}")
        pivots, free, tail = self._data[d]
        v = coefficient_vector(q, d)
        out = [v[c] for c in free]
        if pivots and free:
            vp = flint.fmpq_mat(1, len(pivots), [to_fmpq(v[c]) for c in pivots])
            corr = vp * tail
            out = [out[k] - to_fraction(corr[0, k]) for k in range(len(free))]
        return tuple(out)

    def reduce_mod_L(self, q: Poly) -> Dict[int, Tuple[Fraction, ...]]:
        """Coordinates of every homogeneous part of q (zero parts omitted)."""
        out = {}
        for d, part in q.graded_parts().items():
            c = self.reduce_homogeneous(part, d)
            if any(c):
                out[d] = c
        return out

    def in_L(self, q: Poly) -> bool:
        return not self.reduce_mod_L(q)

    def lift(self, coords: Sequence[Fraction], d: int) -> Poly:
        """Canonical representative: a combination of basis monomials."""
        pivots, free, _ = self._data[d]
        full = [Fraction(0)] * len(monomials(self.rank, d))
        for k, c in zip(free, coords):
            full[k] = c
        return from_coefficient_vector(self.rank, d, full)

    def apply_A(self, i: int, coords: Sequence[Fraction], d: int) -> Tuple[Fraction, ...]:
        """A_i on a class of degree d, giving a class of degree d - 1."""
        if d == 0:
            return ()
        return self.reduce_homogeneous(bgg_apply(self.rs, i, self.lift(coords, d)), d - 1)


def is_zero_class(coords: Sequence[Fraction]) -> bool:
    return not any(coords)


def class_key(coords: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Scalar-class key: divide by the first nonzero coordinate."""
    for c in coords:
        if c != 0:
            return tuple(x / c for x in coords)
    return tuple(coords)


def find_killing_word(cs: CoinvariantSpace, coords: Sequence[Fraction], d: int) -> Tuple[int, ...]:
    """A word w of length d with A_w f a nonzero scalar.

    Returned as the operator product A_{w_1} ... A_{w_d} (rightmost acts first).
    """
    if is_zero_class(coords):
        raise ValueError("the zero class has no killing word")

    def search(c: Tuple[Fraction, ...], deg: int) -> Optional[List[int]]:
        if deg == 0:
            return []
        for i in range(cs.rank):
            nxt = cs.apply_A(i, c, deg)
            if is_zero_class(nxt):
                continue
            sub = search(nxt, deg - 1)
            if sub is not None:
                return sub + [i]
        return None

    word = search(tuple(coords), d)
    if word is None:
        raise InconsistencyError("nonzero class with no nonzero scalar image")
    return tuple(word)


def poincare_dims(rs: RootSystem) -> List[int]:
    """dim Q_d from prod (1 - t^{d_i}) / (1 - t)."""
    poly = [1]
    for e in invariant_degrees(rs):
        factor = [1] * e  # (1 - t^e)/(1 - t)
        out = [0] * (len(poly) + e - 1)
        for a, x in enumerate(poly):
            for b, y in enumerate(factor):
                out[a + b] += x * y
        poly = out
    return poly

