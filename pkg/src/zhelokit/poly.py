"""Exact polynomials in the coordinates h_1..h_l on h*, and their Weyl actions.

A ``Poly`` wraps a python-flint ``fmpq_mpoly``; the variables are the simple
coroots h_i viewed as linear functions lambda -> lambda(h_i).  Univariate
polynomials in the formal scalar ``s`` are plain ``flint.fmpq_poly`` objects.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import flint

from .rootsys import RootSystem, WeylElement

Exp = Tuple[int, ...]
Scalar = Union[int, Fraction, flint.fmpq]


@lru_cache(maxsize=None)
def ring(rank: int) -> flint.fmpq_mpoly_ctx:
    names = tuple(f"h{i + 1}" for i in range(rank))
    return flint.fmpq_mpoly_ctx.get(names, "deglex")


def to_fraction(c: flint.fmpq) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def to_fmpq(c: Scalar) -> flint.fmpq:
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    return flint.fmpq(c)


class Poly:
    """Immutable multivariate polynomial with rational coefficients."""

    __slots__ = ("rank", "p")

    def __init__(self, rank: int, p=None):
        self.rank = rank
        ctx = ring(rank)
        if p is None:
            p = ctx.from_dict({})
        elif not isinstance(p, flint.fmpq_mpoly):
            p = ctx.constant(to_fmpq(p))
        self.p = p

    # construction ---------------------------------------------------------
    @classmethod
    def gen(cls, rank: int, i: int) -> "Poly":
        return cls(rank, ring(rank).gens()[i])

    @classmethod
    def gens(cls, rank: int) -> List["Poly"]:
        return [cls(rank, g) for g in ring(rank).gens()]

    @classmethod
    def const(cls, rank: int, c: Scalar) -> "Poly":
        return cls(rank, ring(rank).constant(to_fmpq(c)))

    @classmethod
    def from_terms(cls, rank: int, terms: Dict[Exp, Scalar]) -> "Poly":
        return cls(rank, ring(rank).from_dict({tuple(e): to_fmpq(c) for e, c in terms.items() if c != 0}))

    @classmethod
    def linear(cls, rank: int, coeffs: Sequence[Scalar], const: Scalar = 0) -> "Poly":
        terms: Dict[Exp, Scalar] = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[tuple(int(j == i) for j in range(rank))] = c
        if const:
            terms[(0,) * rank] = const
        return cls.from_terms(rank, terms)

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> Dict[Exp, Fraction]:
        return {tuple(int(x) for x in e): to_fraction(c) for e, c in self.p.terms()}

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return -1 if self.p.is_zero() else int(self.p.total_degree())

    def is_constant(self) -> bool:
        return self.p.is_constant()

    def constant_value(self) -> Fraction:
        if not self.p.is_constant():
            raise ValueError("polynomial is not constant")
        return to_fraction(self.p.coefficient(0)) if not self.p.is_zero() else Fraction(0)

    def homogeneous_part(self, d: int) -> "Poly":
        terms = {e: c for e, c in self.p.terms() if sum(e) == d}
        return Poly(self.rank, ring(self.rank).from_dict(terms))

    def graded_parts(self) -> Dict[int, "Poly"]:
        parts: Dict[int, Dict] = {}
        for e, c in self.p.terms():
            parts.setdefault(sum(e), {})[e] = c
        ctx = ring(self.rank)
        return {d: Poly(self.rank, ctx.from_dict(t)) for d, t in sorted(parts.items())}

    def leading_form(self) -> "Poly":
        """Top-degree homogeneous component."""
        return self.homogeneous_part(self.degree()) if not self.is_zero() else self

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> flint.fmpq_mpoly:
        if isinstance(other, Poly):
            return other.p
        return ring(self.rank).constant(to_fmpq(other))

    def __add__(self, other) -> "Poly":
        return Poly(self.rank, self.p + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return Poly(self.rank, self.p - self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly(self.rank, self._coerce(other) - self.p)

    def __mul__(self, other) -> "Poly":
        return Poly(self.rank, self.p * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Poly":
        return Poly(self.rank, -self.p)

    def __pow__(self, k: int) -> "Poly":
        return Poly(self.rank, self.p ** k)

    def scale(self, c: Scalar) -> "Poly":
        return Poly(self.rank, self.p * to_fmpq(c))

    def divexact(self, other: "Poly") -> "Poly":
        """Exact division; raises ArithmeticError when it does not divide."""
        q, r = divmod(self.p, self._coerce(other))
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return Poly(self.rank, q)

    def divides_by(self, other: "Poly") -> bool:
        return divmod(self.p, self._coerce(other))[1].is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.rank == other.rank and self.p == other.p
        try:
            return self.p == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rank, self.to_text()))

    def __call__(self, point: Sequence[Scalar]) -> Fraction:
        return to_fraction(self.p(*[to_fmpq(x) for x in point]))

    # substitutions ----------------------------------------------------------
    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace h_i by ``images[i]`` for every i."""
        return Poly(self.rank, self.p.compose(*[im.p for im in images]))

    def to_text(self) -> str:
        """Canonical serialization: terms in degree-lex order, explicit rationals."""
        if self.p.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.p.terms(), key=lambda t: (-sum(t[0]), [-x for x in t[0]])):
            mono = "*".join(f"h{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            coef = str(to_fraction(c))
            parts.append(coef if not mono else f"{coef}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"


# -- monomial bookkeeping ------------------------------------------------------

@lru_cache(maxsize=None)
def monomials(rank: int, d: int) -> Tuple[Exp, ...]:
    """Exponent vectors of total degree d, in a fixed order."""
    if rank == 1:
        return ((d,),)
    out: List[Exp] = []
    for k in range(d, -1, -1):
        for rest in monomials(rank - 1, d - k):
            out.append((k,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(rank: int, d: int) -> Dict[Exp, int]:
    return {e: k for k, e in enumerate(monomials(rank, d))}


def monomial(rank: int, e: Exp) -> Poly:
    return Poly(rank, ring(rank).from_dict({tuple(e): 1}))


def coefficient_vector(q: Poly, d: int) -> List[Fraction]:
    """Coefficients of the degree-d part of q over ``monomials(rank, d)``."""
    idx = monomial_index(q.rank, d)
    v = [Fraction(0)] * len(idx)
    for e, c in q.p.terms():
        if sum(e) == d:
            v[idx[tuple(int(x) for x in e)]] = to_fraction(c)
    return v


def from_coefficient_vector(rank: int, d: int, v: Sequence[Scalar]) -> Poly:
    mons = monomials(rank, d)
    return Poly(rank, ring(rank).from_dict({mons[k]: to_fmpq(c) for k, c in enumerate(v) if c != 0}))


# -- Weyl actions ----------------------------------------------------------------

def _images(rs: RootSystem, matrix) -> List[Poly]:
    n = rs.rank
    return [Poly.linear(n, [matrix[r][c] for r in range(n)]) for c in range(n)]


@lru_cache(maxsize=None)
def _reflection_images(rs: RootSystem, i: int) -> Tuple[Poly, ...]:
    return tuple(_images(rs, rs.reflection_matrix(i)))


def weyl_act(rs: RootSystem, w: WeylElement, q: Poly) -> Poly:
    """Linear substitution h_j -> w(h_j)."""
    return q.substitute(_images(rs, w.matrix))


def reflect_poly(rs: RootSystem, i: int, q: Poly) -> Poly:
    """s_i acting on q by the untranslated action."""
    return q.substitute(_reflection_images(rs, i))


def theta(q: Poly) -> Poly:
    """h_i -> h_i + 1 for every i (translation by rho)."""
    return q.substitute([g + 1 for g in Poly.gens(q.rank)])


def theta_inv(q: Poly) -> Poly:
    return q.substitute([g - 1 for g in Poly.gens(q.rank)])


def dot_act(rs: RootSystem, w: WeylElement, q: Poly) -> Poly:
    """Translated action w.q = theta(w theta^{-1}(q))."""
    return theta(weyl_act(rs, w, theta_inv(q)))


def dot_reflect(rs: RootSystem, i: int, q: Poly) -> Poly:
    return theta(reflect_poly(rs, i, theta_inv(q)))


def eval_srho(q: Poly) -> flint.fmpq_poly:
    """Restriction to the line s*rho: every h_i becomes s."""
    out = flint.fmpq_poly(0)
    sp = flint.fmpq_poly([0, 1])
    for e, c in q.p.terms():
        out += flint.fmpq_poly([c]) * sp ** int(sum(e))
    return out


def partial(i: int, q: Poly) -> Poly:
    """Plain partial derivative with respect to the coordinate h_i."""
    return Poly(q.rank, q.p.derivative(i))


def weight_partial(rs: RootSystem, i: int, q: Poly) -> Poly:
    """The varpi_i-coefficient of the gradient of q.

    The differential of q at lambda lies in h; transporting it to h* with the
    invariant form sends h_j to a multiple of alpha_j, so the varpi_i
    coefficient is (1/d_i) sum_j cartan[j][i] dq/dh_j.  The result is
    W-equivariant, so for an invariant q it is divisible by h_i.
    """
    d = rs.datum.symmetrizer
    out = Poly(q.rank)
    for j in range(rs.rank):
        c = rs.cartan[j][i]
        if c:
            out = out + partial(j, q).scale(Fraction(c, d[i]))
    return out


def gradient(rs: RootSystem, q: Poly) -> List[Poly]:
    return [weight_partial(rs, i, q) for i in range(rs.rank)]


class RatFn:
    """Quotient of two polynomials; the denominator is kept as given (a product
    of linear factors in practice) and only simplified by exact division."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly.const(num.rank, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = num, den

    def __add__(self, other: "RatFn") -> "RatFn":
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFn") -> "RatFn":
        return self + RatFn(-other.num, other.den)

    def __mul__(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            return RatFn(self.num * other.num, self.den * other.den)
        return RatFn(self.num * other, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def simplify(self) -> "RatFn":
        g = self.num.p.gcd(self.den.p)
        if g.is_constant():
            return self
        return RatFn(Poly(self.num.rank, self.num.p / g), Poly(self.num.rank, self.den.p / g))

    def polynomial(self) -> Poly:
        return self.num.divexact(self.den)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFn):
            return self.num * other.den == other.num * self.den
        return self.num == self.den * other

    def __repr__(self) -> str:
        return f"({self.num.to_text()}) / ({self.den.to_text()})"


def s_poly_text(f: flint.fmpq_poly) -> str:
    """Canonical text for a polynomial in s."""
    coeffs = [to_fraction(c) for c in f.coeffs()]
    parts = [f"{c}*s^{k}" if k else f"{c}" for k, c in enumerate(coeffs) if c != 0]
    return " + ".join(reversed(parts)) if parts else "0"
