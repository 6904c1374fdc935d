"""Chevalley basis of the Langlands dual algebra and the principal nilpotent.

The roots of the dual algebra are the coroots of the original one (integer
tuples in the h-basis).  Its Cartan subalgebra is h*, with basis the simple
roots t_j = alpha_j, and [t, x_c] = <t, c> x_c.  Structure constants are fixed
by the extraspecial-pair normalization: roots are ordered by height then
lexicographically and N is +(p+1) on every extraspecial pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import flint

from .bgg import InconsistencyError
from .rootsys import CartanError, RootSystem, Vec, height


def _neg(v: Sequence[int]) -> Vec:
    return tuple(-x for x in v)


def _add(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _is_pos(v: Sequence[int]) -> bool:
    return all(x >= 0 for x in v)


class ChevalleyBasis:
    """Structure constants N[x, y] for all pairs of dual roots."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        self.roots: List[Vec] = rs.coroots()
        self._is_root = set(self.roots)
        self._order = {v: k for k, v in enumerate(rs.positive_coroots)}
        self._pos_table: Dict[Tuple[Vec, Vec], int] = {}
        self._build()

    # -- helpers ------------------------------------------------------------
    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._is_root

    def norm(self, v: Sequence[int]) -> int:
        return self.rs.coroot_form(v, v)

    def _p(self, a: Vec, b: Vec) -> int:
        """Largest p with b - p a a root."""
        p = 0
        cur = _sub(b, a)
        while self.is_root(cur):
            p += 1
            cur = _sub(cur, a)
        return p

    # -- construction -------------------------------------------------------
    def _build(self) -> None:
        pos = self.rs.positive_coroots
        for xi in pos:
            if height(xi) == 1:
                continue
            specials = [(a, _sub(xi, a)) for a in pos
                        if self._order[a] < self._order.get(_sub(xi, a), -1)]
            a0, b0 = specials[0]
            self._pos_table[(a0, b0)] = self._p(a0, b0) + 1
            for g, d in specials[1:]:
                t1 = Fraction(0)
                if self.is_root(_sub(d, a0)):
                    t1 = Fraction(self.N(d, _neg(a0)) * self.N(g, _neg(b0)), self.norm(_sub(d, a0)))
                t2 = Fraction(0)
                if self.is_root(_sub(g, a0)):
                    t2 = Fraction(self.N(_neg(a0), g) * self.N(d, _neg(b0)), self.norm(_sub(g, a0)))
                val = Fraction(self.norm(xi), self._pos_table[(a0, b0)]) * (t1 + t2)
                if val.denominator != 1:
                    raise InconsistencyError(f"non-integral structure constant at {g}, {d}")
                self._pos_table[(g, d)] = int(val)

    def N(self, x: Sequence[int], y: Sequence[int]) -> int:
        """[x_x, x_y] = N x_{x+y}; zero unless x, y, x+y are all roots."""
        x, y = tuple(x), tuple(y)
        z = _add(x, y)
        if not (self.is_root(x) and self.is_root(y) and self.is_root(z)):
            return 0
        px, py = _is_pos(x), _is_pos(y)
        if px and py:
            if (x, y) in self._pos_table:
                return self._pos_table[(x, y)]
            return -self._pos_table[(y, x)]
        if not px and not py:
            return -self.N(_neg(x), _neg(y))
        if not px:
            return -self.N(y, x)
        # x positive, y negative
        if _is_pos(z):
            val = Fraction(-self.norm(z), self.norm(x)) * self.N(_neg(y), z)
        else:
            val = Fraction(self.norm(z), self.norm(y)) * self.N(_neg(z), x)
        if val.denominator != 1:
            raise InconsistencyError(f"non-integral structure constant at {x}, {y}")
        return int(val)

    def table(self) -> List[Tuple[Vec, Vec, int]]:
        """All nonzero N as (x, y, N) rows, in a fixed order."""
        out = []
        for x in self.roots:
            for y in self.roots:
                n = self.N(x, y)
                if n:
                    out.append((x, y, n))
        return out

    # -- brackets of basis elements -----------------------------------------
    def cartan_of(self, c: Sequence[int]) -> Tuple[int, ...]:
        """[x_c, x_{-c}] as a vector in the t-basis (the root paired with c)."""
        return self.rs.root_of[tuple(c)]

    def bracket(self, u: "DualElement", v: "DualElement") -> "DualElement":
        zero = u.zero
        cart = [zero] * self.rank
        roots: Dict[Vec, object] = {}

        def add_root(r: Vec, c) -> None:
            roots[r] = roots.get(r, zero) + c

        for j, a in enumerate(u.cartan):
            if a == zero:
                continue
            for r, b in v.roots.items():
                add_root(r, a * b * self.rs.pair(j, r))
        for j, b in enumerate(v.cartan):
            if b == zero:
                continue
            for r, a in u.roots.items():
                add_root(r, -(a * b) * self.rs.pair(j, r))
        for r, a in u.roots.items():
            for s, b in v.roots.items():
                if _add(r, s) == (0,) * self.rank:
                    h = self.cartan_of(r)
                    for j in range(self.rank):
                        if h[j]:
                            cart[j] = cart[j] + a * b * h[j]
                else:
                    n = self.N(r, s)
                    if n:
                        add_root(_add(r, s), a * b * n)
        return DualElement(tuple(cart), {r: c for r, c in roots.items() if c != zero}, zero)

    def basis(self) -> List["DualElement"]:
        out = []
        for j in range(self.rank):
            out.append(DualElement.cartan_vector([Fraction(int(k == j)) for k in range(self.rank)]))
        for r in self.roots:
            out.append(DualElement.root_vector(self.rank, r))
        return out


@dataclass
class DualElement:
    """Element of the dual algebra: Cartan part over t_j plus root part.

    Coefficients may be Fractions or univariate polynomials in s (any ring
    type supporting +, -, * with ints); ``zero`` is the ring's zero.
    """
    cartan: Tuple
    roots: Dict[Vec, object] = field(default_factory=dict)
    zero: object = Fraction(0)

    @classmethod
    def cartan_vector(cls, coeffs: Sequence, zero=Fraction(0)) -> "DualElement":
        return cls(tuple(coeffs), {}, zero)

    @classmethod
    def root_vector(cls, rank: int, r: Sequence[int], coeff=Fraction(1), zero=Fraction(0)) -> "DualElement":
        return cls(tuple([zero] * rank), {tuple(r): coeff}, zero)

    def is_zero(self) -> bool:
        return all(c == self.zero for c in self.cartan) and all(c == self.zero for c in self.roots.values())

    def __add__(self, other: "DualElement") -> "DualElement":
        roots = dict(self.roots)
        for r, c in other.roots.items():
            roots[r] = roots.get(r, self.zero) + c
        return DualElement(tuple(a + b for a, b in zip(self.cartan, other.cartan)),
                           {r: c for r, c in roots.items() if c != self.zero}, self.zero)

    def scale(self, c) -> "DualElement":
        return DualElement(tuple(a * c for a in self.cartan),
                           {r: v * c for r, v in self.roots.items() if v * c != self.zero}, self.zero)

    def support_heights(self) -> List[int]:
        return sorted({height(r) for r in self.roots})


def principal_e(cb: ChevalleyBasis, zero=Fraction(0), one=Fraction(1)) -> DualElement:
    """e = sum of the simple root vectors of the dual algebra."""
    roots = {cb.rs.simple(i): one for i in range(cb.rank)}
    return DualElement(tuple([zero] * cb.rank), roots, zero)


def principal_f(cb: ChevalleyBasis, zero=Fraction(0), one=Fraction(1)) -> DualElement:
    roots = {_neg(cb.rs.simple(i)): one for i in range(cb.rank)}
    return DualElement(tuple([zero] * cb.rank), roots, zero)


def ad_power(cb: ChevalleyBasis, x: DualElement, v: DualElement, k: int) -> DualElement:
    """ad(x)^k v."""
    if k < 0:
        raise ValueError("negative power")
    for _ in range(k):
        if v.is_zero():
            break
        v = cb.bracket(x, v)
    return v


def annihilating_power(cb: ChevalleyBasis, x: DualElement, v: DualElement, limit: int = 100) -> int:
    """Smallest k with ad(x)^k v = 0."""
    k = 0
    while not v.is_zero():
        if k > limit:
            raise InconsistencyError("ad(x) does not annihilate the vector")
        v = cb.bracket(x, v)
        k += 1
    return k


def embed_weight_vector(rs: RootSystem, coeffs: Sequence, zero=Fraction(0)) -> DualElement:
    """sum_i c_i varpi_i as a Cartan element sum_j (C^-1)_{ji} c_i t_j."""
    inv = rs.inverse_cartan
    exact = isinstance(zero, Fraction)
    out = []
    for j in range(rs.rank):
        acc = zero
        for i, c in enumerate(coeffs):
            x = inv[j][i]
            if x:
                acc = acc + c * (x if exact else flint.fmpq(x.numerator, x.denominator))
        out.append(acc)
    return DualElement(tuple(out), {}, zero)


def build_Mr(cb: ChevalleyBasis, r: int) -> List[List[int]]:
    """Rows: simple alpha; columns: coroots of height r; entries N_{-alpha, gamma}."""
    cols = cb.rs.coroots_of_height(r)
    return [[cb.N(_neg(cb.rs.simple(a)), g) for g in cols] for a in range(cb.rank)]


def rank_of(m: List[List[int]]) -> int:
    if not m or not m[0]:
        return 0
    return flint.fmpq_mat(len(m), len(m[0]), [flint.fmpq(Fraction(x).numerator, Fraction(x).denominator)
                                             for row in m for x in row]).rank()


# -- verification ---------------------------------------------------------------------

@dataclass
class IdentityReport:
    checked: int = 0
    failures: List[Tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, good: bool, tag: Tuple) -> None:
        self.checked += 1
        if not good:
            self.failures.append(tag)


def check_jacobi(cb: ChevalleyBasis, triples: Optional[Sequence[Tuple[int, int, int]]] = None) -> IdentityReport:
    """Jacobi identity on basis triples (all of them by default)."""
    basis = cb.basis()
    rep = IdentityReport()
    idx = range(len(basis))
    for a, b, c in (triples if triples is not None else product(idx, idx, idx)):
        if not (a < b < c):
            continue
        x, y, z = basis[a], basis[b], basis[c]
        s = cb.bracket(x, cb.bracket(y, z)) + cb.bracket(y, cb.bracket(z, x)) + cb.bracket(z, cb.bracket(x, y))
        rep.record(s.is_zero(), (a, b, c))
    return rep


def verify_72_identities(cb: ChevalleyBasis) -> Dict[str, IdentityReport]:
    """The structure-constant identities (i)-(v) for simple alpha, beta, delta and positive gamma.

    Instances where gamma minus a simple coroot is zero are skipped: there the
    Jacobi identity produces a Cartan term instead of a structure constant.
    G2 is rejected: its root strings of length four break (i) and (ii).
    """
    rs = cb.rs
    if rs.family == "G":
        raise CartanError("the structure-constant identities are not stated for G2")
    n = rs.rank
    N = cb.N
    simple = [rs.simple(i) for i in range(n)]
    reps = {k: IdentityReport() for k in ("i", "ii", "iii", "iv", "v")}
    for a, al in enumerate(simple):
        for g in rs.positive_coroots:
            v = rs.pair(a, g)
            if v < 0:
                reps["i"].record(N(al, g) * N(_neg(al), _add(al, g)) == -v, (a, g))
            if v > 0 and g != al:
                reps["ii"].record(N(_neg(al), g) * N(al, _sub(g, al)) == v, (a, g))
            if v == 0:
                both_short = rs.is_short_coroot(al) and rs.is_short_coroot(g)
                if not both_short:
                    reps["iii"].record(N(al, g) == 0 and N(_neg(al), g) == 0, (a, g))
            for b, be in enumerate(simple):
                if b == a:
                    continue
                if g != be:
                    lhs = N(al, g) * N(_neg(be), _add(al, g))
                    rhs = N(_neg(be), g) * N(al, _sub(g, be))
                    reps["iv"].record(lhs == rhs, (a, b, g))
                ag = _add(al, g)
                if not cb.is_root(ag) or cb.is_root(_add(ag, be)):
                    continue
                for d, de in enumerate(simple):
                    if g == de:
                        continue
                    val = N(_neg(de), g) * N(al, _sub(g, de)) * N(be, _sub(ag, de))
                    want = N(al, g) * rs.pair(b, ag) if d == b else 0
                    reps["v"].record(val == want, (a, b, d, g))
    return reps
