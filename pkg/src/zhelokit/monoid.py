"""The Zhelobenko monoid realized in the coinvariant algebra.

Elements are nonzero classes A_{i_1} ... A_{i_r} P0_{i_{r+1}} in Q, kept up to a
nonzero scalar.  The generators P0_i come from the divided gradient of a
basic invariant of top degree.  The length of an element counts the
generator as one letter, so the class of degree d has length m_l - d.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .bgg import (CoinvariantSpace, InconsistencyError, bgg_apply, class_key,
                  invariant_generators, is_zero_class)
from .chevalley import ChevalleyBasis
from .poly import Poly
from .rootsys import (CartanError, RootSystem, Vec, classify_pair, decreasing_reflection_paths,
                      format_word, height)
from .zhelobenko import leading_tuple

Key = Tuple[int, Tuple[Fraction, ...]]


# -- realization -------------------------------------------------------------------

@dataclass
class Realization:
    rs: RootSystem
    space: CoinvariantSpace
    invariant: Poly
    leading: Tuple[Poly, ...]
    classes: Tuple[Tuple[Fraction, ...], ...]

    @property
    def top(self) -> int:
        """Degree of the generators P0_i."""
        return self.invariant.degree() - 2


@lru_cache(maxsize=None)
def realize_P0(rs: RootSystem) -> Realization:
    """Classes in Q of the divided gradient of a top-degree basic invariant."""
    gens = invariant_generators(rs)
    q = max(gens, key=lambda g: g.degree())
    lead = leading_tuple(rs, q)
    d = q.degree() - 2
    cs = CoinvariantSpace(rs, gens, d)
    classes = tuple(cs.reduce_homogeneous(x, d) for x in lead)
    for i, c in enumerate(classes):
        if is_zero_class(c):
            raise InconsistencyError(f"P0_{i + 1} vanishes in the coinvariant algebra")
    return Realization(rs, cs, q, lead, classes)


def _key(degree: int, coords: Sequence[Fraction]) -> Key:
    return (degree, class_key(coords))


# -- enumeration ---------------------------------------------------------------------

@dataclass
class MonoidElement:
    index: int
    degree: int
    length: int
    coords: Tuple[Fraction, ...]
    letters: Tuple[int, ...]
    generator: int
    support: FrozenSet[int]

    @property
    def witness(self) -> str:
        return format_word(self.letters, self.generator)


@dataclass
class MonoidGraph:
    rs: RootSystem
    realization: Realization
    elements: List[MonoidElement] = field(default_factory=list)
    edges: List[Tuple[int, int, int]] = field(default_factory=list)
    by_key: Dict[Key, int] = field(default_factory=dict)
    image: Dict[Vec, int] = field(default_factory=dict)

    def levels(self) -> Dict[int, List[MonoidElement]]:
        out: Dict[int, List[MonoidElement]] = {}
        for e in self.elements:
            out.setdefault(e.length, []).append(e)
        return dict(sorted(out.items()))

    def level_counts(self) -> List[int]:
        return [len(v) for v in self.levels().values()]

    def lookup(self, degree: int, coords: Sequence[Fraction]) -> Optional[MonoidElement]:
        if is_zero_class(coords):
            return None
        k = self.by_key.get(_key(degree, coords))
        return None if k is None else self.elements[k]

    def word_element(self, letters: Sequence[int], generator: int) -> Optional[MonoidElement]:
        """The element A_{letters[0]} ... A_{letters[-1]} P0_generator, or None if zero."""
        cs, d = self.realization.space, self.realization.top
        c = self.realization.classes[generator]
        for i in reversed(letters):
            c = cs.apply_A(i, c, d)
            d -= 1
            if is_zero_class(c):
                return None
        hit = self.lookup(d, c)
        if hit is None:
            raise InconsistencyError("nonzero word outside the enumerated monoid")
        return hit

    def apply(self, i: int, e: MonoidElement) -> Optional[MonoidElement]:
        for src, letter, dst in self.edges:
            if src == e.index and letter == i:
                return self.elements[dst]
        return None

    def killed_by_all(self) -> List[MonoidElement]:
        sources = {src for src, _, _ in self.edges}
        return [e for e in self.elements if e.index not in sources]

    def maximal_elements(self) -> List[MonoidElement]:
        top = max(e.length for e in self.elements)
        return [e for e in self.elements if e.length == top]

    def to_json(self) -> Dict:
        inv = {v: k for k, v in self.image.items()}
        return {
            "type": self.rs.tag,
            "levels": self.level_counts(),
            "vertices": [{"length": e.length,
                          "support": sorted(i + 1 for i in e.support),
                          "witness": e.witness,
                          "in_P_image": e.index in inv} for e in self.elements],
        }


def enumerate_monoid(rs: RootSystem) -> MonoidGraph:
    """Breadth-first closure of the generators under the A_i, up to scalars."""
    real = realize_P0(rs)
    cs = real.space
    g = MonoidGraph(rs, real)

    def add(d: int, coords, letters, gen) -> Tuple[int, bool]:
        key = _key(d, coords)
        support = frozenset(letters) | {gen}
        if key in g.by_key:
            e = g.elements[g.by_key[key]]
            if e.support != support:
                raise InconsistencyError(f"support of {e.witness} depends on the word")
            return e.index, False
        e = MonoidElement(len(g.elements), d, real.top - d + 1, tuple(coords), tuple(letters), gen, support)
        g.elements.append(e)
        g.by_key[key] = e.index
        return e.index, True

    frontier = []
    for i, c in enumerate(real.classes):
        idx, new = add(real.top, c, (), i)
        if new:
            frontier.append(idx)
    while frontier:
        nxt = []
        for idx in frontier:
            e = g.elements[idx]
            if e.degree == 0:
                continue
            for i in range(rs.rank):
                c = cs.apply_A(i, e.coords, e.degree)
                if is_zero_class(c):
                    continue
                j, new = add(e.degree - 1, c, (i,) + e.letters, e.generator)
                g.edges.append((idx, i, j))
                if new:
                    nxt.append(j)
        frontier = nxt
    attach_pmap(g)
    return g


# -- the map from positive coroots ---------------------------------------------------

def _step_word(rs: RootSystem, i: int, gamma: Vec) -> Tuple[int, ...]:
    """Operators (leftmost first) carrying P(gamma) to P(s_i gamma)."""
    pk = classify_pair(rs, i, gamma)
    if pk.kind == "good":
        return (i,)
    if pk.is_bad:
        return (pk.companion, i)
    raise CartanError(f"step ({i}, {gamma}) is neither good nor bad")


def path_word(rs: RootSystem, steps: Sequence[int], terminal: int) -> Tuple[int, ...]:
    """Letters of the monoid word attached to a decreasing reflection path."""
    gamma = rs.simple(terminal)
    letters: Tuple[int, ...] = ()
    for j in reversed(steps):
        letters = _step_word(rs, j, gamma) + letters
        gamma = rs.reflect_coroot(j, gamma)
    return letters


@dataclass
class PmapReport:
    injective: bool
    lengths_ok: bool
    path_independent: bool
    transport_failures: List[Tuple[int, Vec]]
    neighbour_failures: List[Tuple[str, int, Vec]]

    @property
    def ok(self) -> bool:
        return (self.injective and self.lengths_ok and self.path_independent
                and not self.transport_failures and not self.neighbour_failures)


def attach_pmap(g: MonoidGraph) -> Dict[Vec, int]:
    """Fill ``g.image`` with the element index of P(gamma) for every positive coroot."""
    rs = g.rs
    if rs.family == "G":
        return g.image
    for gamma in rs.positive_coroots:
        path = next(iter(decreasing_reflection_paths(rs, gamma)))
        e = g.word_element(path_word(rs, path.steps, path.terminal), path.terminal)
        if e is None:
            raise InconsistencyError(f"P({gamma}) is zero")
        g.image[gamma] = e.index
    return g.image


def pmap(g: MonoidGraph) -> Dict[Vec, MonoidElement]:
    return {gamma: g.elements[k] for gamma, k in g.image.items()}


def check_pmap(g: MonoidGraph) -> PmapReport:
    """Injectivity, length = height, path independence and the transport lemmas."""
    rs = g.rs
    img = g.image
    injective = len(set(img.values())) == len(img)
    lengths_ok = all(g.elements[k].length == height(gamma) for gamma, k in img.items())
    independent = True
    for gamma in rs.positive_coroots:
        for path in decreasing_reflection_paths(rs, gamma):
            e = g.word_element(path_word(rs, path.steps, path.terminal), path.terminal)
            if e is None or e.index != img[gamma]:
                independent = False
    inverse = {k: gamma for gamma, k in img.items()}
    transport = []
    neighbours = []
    for gamma, k in img.items():
        for i in range(rs.rank):
            out = g.apply(i, g.elements[k])
            up = list(gamma)
            up[i] += 1
            down = list(gamma)
            down[i] -= 1
            up, down = tuple(up), tuple(down)
            if rs.pair(i, gamma) == -1 and out is not None and out.index in inverse:
                if inverse[out.index] != up:
                    transport.append((i, gamma))
            up_ok, down_ok = rs.is_coroot(up), min(down) >= 0 and rs.is_coroot(down)
            if up_ok and down_ok and (out is None or out.index != img.get(up)):
                neighbours.append(("i", i, gamma))
            if not up_ok and not down_ok and out is not None:
                neighbours.append(("ii", i, gamma))
    return PmapReport(injective, lengths_ok, independent, transport, neighbours)


# -- closed forms in types A, B, C -----------------------------------------------------

def word_ij(i: int, j: int) -> Tuple[Tuple[int, ...], int]:
    """[i, j] = i i-1 ... j+1 (j), 1-based arguments, 0-based letters."""
    return tuple(range(i - 1, j - 1, -1)), j - 1


def word_inj(i: int, n: int, j: int) -> Tuple[Tuple[int, ...], int]:
    """[i, n, j] = i i+1 ... n-1 n n-1 ... j+1 (j); [i, n, n] = i ... n-1 (n)."""
    if j == n:
        return tuple(range(i - 1, n - 1)), n - 1
    return tuple(range(i - 1, n)) + tuple(range(n - 2, j - 1, -1)), j - 1


def _eps(rs: RootSystem, k: int) -> List[Fraction]:
    """epsilon_k (1-based) in simple-coroot coordinates for B_n and C_n coroots."""
    n = rs.rank
    v = [Fraction(0)] * n
    for l in range(k - 1, n - 1):
        v[l] = Fraction(1)
    v[n - 1] = Fraction(1, 2) if rs.family == "B" else Fraction(1)
    return v


def _coroot(vec: Sequence[Fraction]) -> Vec:
    out = []
    for x in vec:
        if x.denominator != 1:
            raise ValueError("not an integral coroot")
        out.append(int(x))
    return tuple(out)


def closed_form_pmap(rs: RootSystem) -> Dict[Vec, Tuple[Tuple[int, ...], int]]:
    """The explicit words for P in types A, B, C."""
    n = rs.rank
    out: Dict[Vec, Tuple[Tuple[int, ...], int]] = {}
    if rs.family == "A":
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                out[tuple(int(j <= l + 1 <= i) for l in range(n))] = word_ij(i, j)
        return out
    if rs.family not in ("B", "C"):
        raise CartanError("closed forms exist only in types A, B, C")
    e = [None] + [_eps(rs, k) for k in range(1, n + 1)]

    def plus(a, b):
        return [x + y for x, y in zip(a, b)]

    def minus(a, b):
        return [x - y for x, y in zip(a, b)]

    for i in range(1, n):
        for j in range(1, i + 1):
            out[_coroot(minus(e[j], e[i + 1]))] = word_ij(i, j)
    if rs.family == "B":
        for i in range(1, n + 1):
            for j in range(1, i + 1):
                out[_coroot(plus(e[j], e[i]))] = word_inj(i, n, j)
    else:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out[_coroot(plus(e[i], e[j]))] = word_inj(i, n, j - 1)
            out[_coroot(e[i])] = word_inj(i, n, n)
    return out


def canonical_census(rs: RootSystem) -> List[Tuple[Tuple[int, ...], int]]:
    """All words [i, j] (i < n) and [i, n, j] in types B, C; [i, j] in type A."""
    n = rs.rank
    if rs.family == "A":
        return [word_ij(i, j) for i in range(1, n + 1) for j in range(1, i + 1)]
    words = [word_ij(i, j) for i in range(1, n) for j in range(1, i + 1)]
    words += [word_inj(i, n, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return words


# -- relations ---------------------------------------------------------------------------

def check_relations(g: MonoidGraph) -> List[str]:
    """Rank-two relations among the A_i and P_j, up to scalars, on the realization."""
    rs = g.rs
    real = g.realization
    cs = real.space
    failures = []

    def word_class(letters, gen):
        c, d = real.classes[gen], real.top
        for i in reversed(letters):
            c = cs.apply_A(i, c, d)
            d -= 1
        return d, c

    def same(a, b) -> bool:
        (da, ca), (db, cb) = a, b
        za, zb = is_zero_class(ca), is_zero_class(cb)
        if za or zb:
            return za and zb
        return _key(da, ca) == _key(db, cb)

    for i in range(rs.rank):
        if not is_zero_class(word_class((i,), i)[1]):
            failures.append(f"A{i + 1}P{i + 1} != 0")
        for j in range(i + 1, rs.rank):
            m = rs.cartan[i][j] * rs.cartan[j][i]
            if m == 0:
                ok = is_zero_class(word_class((i,), j)[1]) and is_zero_class(word_class((j,), i)[1])
            elif m == 1:
                ok = same(word_class((i,), j), word_class((j,), i))
            elif m == 2:
                ok = same(word_class((j, i), j), word_class((i, j), i))
            elif m == 3:
                ok = same(word_class((j, i, j, i), j), word_class((i, j, i, j), i))
            else:
                continue
            if not ok:
                failures.append(f"rank-two relation fails for ({i + 1}, {j + 1})")
    return failures


# -- the polynomial family P_gamma -----------------------------------------------------

@dataclass
class PGammaTable:
    rs: RootSystem
    polys: Dict[Vec, Poly]
    leading: bool
    disagreements: List[Vec] = field(default_factory=list)


def length_normalized(rs: RootSystem, P: Sequence[Poly]) -> List[Poly]:
    """P_i divided by (h_i, h_i) relative to the shortest simple coroot.

    This is the normalization under which the recurrence holds in every type;
    simply-laced input is left unchanged.
    """
    norms = [rs.coroot_form(rs.simple(i), rs.simple(i)) for i in range(rs.rank)]
    short = min(norms)
    return [p.scale(Fraction(short, c)) for p, c in zip(P, norms)]


def _candidates(rs: RootSystem, cb: ChevalleyBasis, polys: Dict[Vec, Poly], gamma: Vec,
                literal: bool = False) -> List[Tuple[str, int, Poly]]:
    """Every rule that defines P_gamma from an already known lower coroot."""
    out = []
    for i in range(rs.rank):
        a = rs.simple(i)
        neg_a = tuple(-x for x in a)
        low = list(gamma)
        low[i] -= 1
        low = tuple(low)
        if min(low) >= 0 and any(low) and low in polys and rs.pair(i, low) == -1:
            out.append(("good", i, bgg_apply(rs, i, polys[low]).scale(Fraction(1, cb.N(a, low)))))
        low = list(gamma)
        low[i] -= 2
        low = tuple(low)
        if not (min(low) >= 0 and any(low) and low in polys):
            continue
        pk = classify_pair(rs, i, low)
        if not pk.is_bad:
            continue
        a_plus = tuple(x + y for x, y in zip(a, low))
        if pk.kind == "starting_bad":
            if literal:
                c = Fraction(cb.N(neg_a, gamma), rs.pair(i, low) * cb.N(low, a))
            else:
                c = Fraction(-cb.N(neg_a, gamma), cb.N(low, a))
        else:
            top = cb.N(neg_a, a_plus) if literal else cb.N(neg_a, gamma)
            c = Fraction(top, rs.pair(pk.companion, a_plus) * cb.N(a, low))
        base = bgg_apply(rs, pk.companion, bgg_apply(rs, i, polys[low]))
        out.append((pk.kind, i, base.scale(c)))
    return out


def propagate_P(rs: RootSystem, P: Sequence[Poly], leading: bool = False,
                literal: bool = False) -> PGammaTable:
    """P_gamma for every positive coroot from the rules for good and bad steps.

    By default the input is divided by the squared coroot lengths and the
    bad-step scalars are the ones forced by the recurrence.  ``literal`` uses
    the input as given with the printed bad-step scalars; in non-simply-laced
    types that version is not consistent with the recurrence.  Every
    applicable rule is evaluated and they must agree.
    """
    if rs.family == "G":
        raise CartanError("the coroot family is not defined for G2")
    cb = ChevalleyBasis(rs)
    base = list(P) if literal else length_normalized(rs, P)
    polys: Dict[Vec, Poly] = {rs.simple(i): base[i] for i in range(rs.rank)}
    table = PGammaTable(rs, polys, leading)
    for gamma in rs.positive_coroots:
        if gamma in polys:
            continue
        cands = [c for _, _, c in _candidates(rs, cb, polys, gamma, literal)]
        if not cands:
            raise InconsistencyError(f"no rule reaches {gamma}")
        if any(c != cands[0] for c in cands[1:]):
            table.disagreements.append(gamma)
        polys[gamma] = cands[0]
    if table.disagreements and not literal:
        raise InconsistencyError(f"path-dependent values at {table.disagreements}")
    return table


@dataclass
class RecurrenceReport:
    checked: int = 0
    failures: List[Tuple[str, Optional[int], Vec]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _coroot_poly(rs: RootSystem, gamma: Vec) -> Poly:
    return Poly.linear(rs.rank, list(gamma))


def _recurrence(table: PGammaTable, shift: int) -> RecurrenceReport:
    rs = table.rs
    cb = ChevalleyBasis(rs)
    rep = RecurrenceReport()
    polys = table.polys
    for gamma, pg in polys.items():
        if height(gamma) > 1:
            rhs = Poly(rs.rank)
            for i in range(rs.rank):
                low = list(gamma)
                low[i] -= 1
                low = tuple(low)
                if low in polys:
                    n = cb.N(tuple(-x for x in rs.simple(i)), gamma)
                    if n:
                        rhs = rhs + polys[low].scale(n)
            den = _coroot_poly(rs, gamma) + shift
            rep.checked += 1
            if not rhs.divides_by(den) or rhs.divexact(den) != pg:
                rep.failures.append(("i", None, gamma))
        for i in range(rs.rank):
            up = list(gamma)
            up[i] += 1
            v = rs.pair(i, gamma)
            if shift:
                must_vanish = v > 0 or (v == 0 and not rs.is_coroot(tuple(up)))
                tag = "ii" if v > 0 else "iii"
            else:
                must_vanish = not rs.is_coroot(tuple(up))
                tag = "ii"
            if must_vanish:
                rep.checked += 1
                if not bgg_apply(rs, i, pg).is_zero():
                    rep.failures.append((tag, i, gamma))
    return rep


def verify_78(table: PGammaTable) -> RecurrenceReport:
    """(1+gamma) P_gamma = sum N_{-alpha,gamma} P_{gamma-alpha}, and the vanishing rules."""
    return _recurrence(table, 1)


def verify_81(table: PGammaTable) -> RecurrenceReport:
    """The same recurrence for leading terms, with denominator gamma."""
    return _recurrence(table, 0)


def image_consistency(g: MonoidGraph, table: PGammaTable) -> List[Vec]:
    """Coroots where the leading P_gamma is not a multiple of P(gamma) in Q."""
    real = g.realization
    bad = []
    for gamma, k in g.image.items():
        e = g.elements[k]
        c = real.space.reduce_homogeneous(table.polys[gamma], e.degree)
        if is_zero_class(c) or _key(e.degree, c) != _key(e.degree, e.coords):
            bad.append(gamma)
    return bad


# -- export ---------------------------------------------------------------------------------

def export_dot(g: MonoidGraph) -> str:
    """Graphviz text: one rank per length, edges labelled by letters, P-image boxed."""
    inv = set(g.image.values())
    lines = [f'digraph "{g.rs.tag}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for length, elems in g.levels().items():
        names = " ".join(f"v{e.index};" for e in elems)
        lines.append(f"  {{ rank=same; {names} }}")
    for e in g.elements:
        style = ", shape=box" if e.index in inv else ""
        lines.append(f'  v{e.index} [label="{e.witness}"{style}];')
    for src, letter, dst in g.edges:
        lines.append(f'  v{src} -> v{dst} [label="{letter + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def census_json(g: MonoidGraph) -> str:
    return json.dumps(g.to_json(), indent=2, sort_keys=True)
