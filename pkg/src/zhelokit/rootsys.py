"""Cartan data, root and coroot systems, Weyl groups, heights and exponents.

Conventions used throughout the package:

* indices are 0-based in the Python API (letters print 1-based);
* ``cartan[i][j] = alpha_j(h_i)`` where ``h_i`` is the i-th simple coroot;
* coroots are integer tuples in the basis ``h_1..h_l``, roots are integer
  tuples in the basis ``alpha_1..alpha_l``;
* a simple reflection acts on coroots by ``s_i(h_j) = h_j - cartan[j][i] h_i``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

Vec = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]


class CartanError(ValueError):
    """Raised for an invalid Cartan datum or an unknown type tag."""


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan: Matrix
    symmetrizer: Tuple[int, ...]

    def __post_init__(self) -> None:
        validate_cartan(self.cartan, self.symmetrizer)

    @property
    def tag(self) -> str:
        return f"{self.family}{self.rank}"


def validate_cartan(a: Sequence[Sequence[int]], d: Sequence[int]) -> None:
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise CartanError("Cartan matrix must be square and non-empty")
    if len(d) != n or any(x <= 0 for x in d):
        raise CartanError("symmetrizer must be n positive integers")
    for i in range(n):
        if a[i][i] != 2:
            raise CartanError(f"diagonal entry ({i},{i}) is {a[i][i]}, expected 2")
        for j in range(n):
            if i == j:
                continue
            if a[i][j] > 0:
                raise CartanError(f"off-diagonal entry ({i},{j}) is positive")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise CartanError(f"entries ({i},{j}) and ({j},{i}) disagree on vanishing")
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise CartanError(f"symmetrizer fails at ({i},{j})")


def _chain(n: int) -> List[List[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _freeze(a: List[List[int]]) -> Matrix:
    return tuple(tuple(row) for row in a)


def cartan_datum(tag: str) -> CartanDatum:
    """Parse a type tag such as ``"B4"`` into a Cartan datum.

    B and C follow Bourbaki (alpha_n is the root of distinct length); F4 is
    labelled in the reverse of Bourbaki so that alpha_1, alpha_2 are the short
    roots; G2 has alpha_1 short.
    """
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", tag)
    if not m:
        raise CartanError(f"unrecognised type tag {tag!r}")
    fam, n = m.group(1).upper(), int(m.group(2))
    d = [1] * n
    if fam == "A" and n >= 1:
        a = _chain(n)
    elif fam == "B" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1], a[n - 1][n - 2] = -1, -2
        d = [2] * (n - 1) + [1]
    elif fam == "C" and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1], a[n - 1][n - 2] = -2, -1
        d = [1] * (n - 1) + [2]
    elif fam == "D" and n >= 3:
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif fam == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    elif fam == "F" and n == 4:
        a = _chain(4)
        a[1][2], a[2][1] = -2, -1
        d = [1, 1, 2, 2]
    elif fam == "G" and n == 2:
        a = [[2, -3], [-1, 2]]
        d = [1, 3]
    else:
        raise CartanError(f"unsupported type {fam}{n}")
    return CartanDatum(fam, n, _freeze(a), tuple(d))


def height(v: Sequence[int]) -> int:
    return sum(v)


def dual_partition(parts: Sequence[int]) -> List[int]:
    parts = sorted((p for p in parts if p > 0), reverse=True)
    if not parts:
        return []
    return [sum(1 for p in parts if p >= k) for k in range(1, parts[0] + 1)]


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: a word in simple reflections and its matrix.

    ``matrix[r][c]`` is the h_r-coordinate of the image of h_c.
    """
    word: Tuple[int, ...]
    matrix: Matrix

    def __len__(self) -> int:
        return len(self.word)


def _matmul(x: Matrix, y: Matrix) -> Matrix:
    n = len(x)
    return tuple(tuple(sum(x[r][k] * y[k][c] for k in range(n)) for c in range(n)) for r in range(n))


def _apply(m: Matrix, v: Sequence[int]) -> Vec:
    n = len(m)
    return tuple(sum(m[r][c] * v[c] for c in range(n)) for r in range(n))


class RootSystem:
    """Roots, coroots and Weyl group of a Cartan datum.

    Positive coroots are kept in height-then-lexicographic order and
    ``positive_roots[k]`` is the root whose coroot is ``positive_coroots[k]``.
    """

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        self.rank = datum.rank
        self.cartan = datum.cartan
        self.family = datum.family
        self._build()

    @classmethod
    def from_tag(cls, tag: str) -> "RootSystem":
        return cls(cartan_datum(tag))

    @property
    def tag(self) -> str:
        return self.datum.tag

    # -- elementary actions -------------------------------------------------
    def pair(self, i: int, coroot: Sequence[int]) -> int:
        """alpha_i evaluated on a coroot-lattice vector."""
        return sum(c * self.cartan[j][i] for j, c in enumerate(coroot))

    def pair_root(self, root: Sequence[int], coroot: Sequence[int]) -> int:
        """<root, coroot> for a root in alpha-coordinates."""
        return sum(r * self.pair(j, coroot) for j, r in enumerate(root))

    def reflect_coroot(self, i: int, v: Sequence[int]) -> Vec:
        k = self.pair(i, v)
        out = list(v)
        out[i] -= k
        return tuple(out)

    def reflect_root(self, i: int, v: Sequence[int]) -> Vec:
        k = sum(c * self.cartan[i][j] for j, c in enumerate(v))
        out = list(v)
        out[i] -= k
        return tuple(out)

    def simple(self, i: int) -> Vec:
        return tuple(int(j == i) for j in range(self.rank))

    # -- closure ------------------------------------------------------------
    def _build(self) -> None:
        n = self.rank
        pairs: Dict[Vec, Vec] = {}
        queue = deque()
        for i in range(n):
            e = self.simple(i)
            pairs[e] = e
            queue.append(e)
        while queue:
            cv = queue.popleft()
            rv = pairs[cv]
            for i in range(n):
                c2 = self.reflect_coroot(i, cv)
                if c2 in pairs or min(c2) < 0:
                    continue
                pairs[c2] = self.reflect_root(i, rv)
                queue.append(c2)
        order = sorted(pairs, key=lambda v: (height(v), v))
        self.positive_coroots: List[Vec] = order
        self.positive_roots: List[Vec] = [pairs[v] for v in order]
        self.coroot_index: Dict[Vec, int] = {v: k for k, v in enumerate(order)}
        self.root_of: Dict[Vec, Vec] = dict(pairs)
        for cv, rv in pairs.items():
            self.root_of[tuple(-x for x in cv)] = tuple(-x for x in rv)
        self.highest_coroot = order[-1]
        roots_sorted = sorted(self.positive_roots, key=lambda v: (height(v), v))
        self.highest_root = roots_sorted[-1]
        if sum(1 for v in order if height(v) == height(order[-1])) != 1:
            raise CartanError("highest coroot is not unique; datum not of finite type")

    # -- predicates ---------------------------------------------------------
    def is_coroot(self, v: Sequence[int]) -> bool:
        return tuple(v) in self.root_of

    def coroots(self) -> List[Vec]:
        """All coroots: positives then negatives."""
        return self.positive_coroots + [tuple(-x for x in v) for v in self.positive_coroots]

    @cached_property
    def form_scale(self) -> int:
        return lcm(*self.datum.symmetrizer)

    def coroot_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """W-invariant integral form on the coroot lattice.

        (h_i, h_j) is proportional to cartan[j][i] / d_i.
        """
        L = self.form_scale
        d = self.datum.symmetrizer
        return sum(x[i] * y[j] * self.cartan[j][i] * (L // d[i])
                   for i in range(self.rank) for j in range(self.rank))

    def is_long_coroot(self, v: Sequence[int]) -> bool:
        """True for coroots of maximal length (all coroots in simply-laced types)."""
        top = max(self.coroot_form(c, c) for c in self.positive_coroots)
        return self.coroot_form(v, v) == top

    def is_short_coroot(self, v: Sequence[int]) -> bool:
        """Short coroots exist only in non-simply-laced types."""
        if self.simply_laced:
            return False
        return not self.is_long_coroot(v)

    @property
    def simply_laced(self) -> bool:
        return self.family in ("A", "D", "E")

    # -- heights ------------------------------------------------------------
    def level_counts(self) -> List[int]:
        """n_r = number of positive coroots of height r, for r = 1..max."""
        top = height(self.highest_coroot)
        counts = [0] * top
        for v in self.positive_coroots:
            counts[height(v) - 1] += 1
        return counts

    def coroots_of_height(self, r: int) -> List[Vec]:
        return [v for v in self.positive_coroots if height(v) == r]

    def rho_pairing(self, coroot: Sequence[int]) -> int:
        """rho(v) where rho(h_i) = 1; equals the height."""
        return sum(coroot)

    # -- Weyl group ---------------------------------------------------------
    def reflection_matrix(self, i: int) -> Matrix:
        n = self.rank
        cols = [self.reflect_coroot(i, self.simple(j)) for j in range(n)]
        return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))

    def identity(self) -> WeylElement:
        n = self.rank
        return WeylElement((), tuple(tuple(int(r == c) for c in range(n)) for r in range(n)))

    def element(self, word: Sequence[int]) -> WeylElement:
        m = self.identity().matrix
        for i in reversed(tuple(word)):
            m = _matmul(self.reflection_matrix(i), m)
        return WeylElement(tuple(word), m)

    def multiply(self, x: WeylElement, y: WeylElement) -> WeylElement:
        return WeylElement(x.word + y.word, _matmul(x.matrix, y.matrix))

    def reflect(self, w: WeylElement, v: Sequence[int]) -> Vec:
        """Action of w on a coroot-lattice vector."""
        return _apply(w.matrix, v)

    @cached_property
    def weyl_group(self) -> List[WeylElement]:
        """All elements, each with a shortlex-minimal reduced word (BFS)."""
        start = self.identity()
        seen: Dict[Matrix, WeylElement] = {start.matrix: start}
        frontier = [start]
        gens = [self.reflection_matrix(i) for i in range(self.rank)]
        while frontier:
            nxt = []
            for w in frontier:
                for i, g in enumerate(gens):
                    m = _matmul(g, w.matrix)
                    if m not in seen:
                        el = WeylElement((i,) + w.word, m)
                        seen[m] = el
                        nxt.append(el)
            frontier = nxt
        return list(seen.values())

    def order(self) -> int:
        return len(self.weyl_group)

    def length(self, w: WeylElement) -> int:
        """Reduced length: number of positive coroots sent to negative ones."""
        return sum(1 for v in self.positive_coroots if min(self.reflect(w, v)) < 0)

    def longest_element(self, prefer: str = "min") -> WeylElement:
        """The longest element with a reduced word built letter by letter.

        ``prefer`` chooses the smallest or largest available descent at each
        step, which gives two (usually different) reduced words.
        """
        w = self.identity()
        n = self.rank
        # grow w by left multiplication while the length increases
        while True:
            cand = range(n) if prefer == "min" else range(n - 1, -1, -1)
            grew = False
            for i in cand:
                w2 = WeylElement((i,) + w.word, _matmul(self.reflection_matrix(i), w.matrix))
                if self.length(w2) > len(w.word):
                    w = w2
                    grew = True
                    break
            if not grew:
                return w

    def longest_words(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        a = self.longest_element("min").word
        b = self.longest_element("max").word
        if a == b:
            b = tuple(reversed(a))
        return a, b

    # -- exponents ----------------------------------------------------------
    def exponents(self) -> List[int]:
        """Dual partition of the multiset of positive-coroot heights."""
        return sorted(dual_partition(self.level_counts()))

    # -- coordinates --------------------------------------------------------
    @cached_property
    def inverse_cartan(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """Exact inverse of the Cartan matrix (rows/cols as in ``cartan``)."""
        n = self.rank
        m = [[Fraction(self.cartan[r][c]) for c in range(n)] + [Fraction(int(r == c)) for c in range(n)]
             for r in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            p = m[col][col]
            m[col] = [x / p for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return tuple(tuple(row[n:]) for row in m)

    def pair_kind(self, i: int, coroot: Sequence[int]) -> "PairKind":
        return classify_pair(self, i, coroot)


# -- good and bad pairs --------------------------------------------------------

@dataclass(frozen=True)
class PairKind:
    """Classification of a pair (alpha_i, gamma) of a simple root and a positive coroot.

    ``kind`` is one of ``"good"``, ``"starting_bad"``, ``"intermediate_bad"``,
    ``"neither"``; ``companion`` is the simple index beta used by the bad-pair
    propagation rule (gamma itself for a starting bad pair).
    """
    kind: str
    companion: Optional[int] = None

    @property
    def is_bad(self) -> bool:
        return self.kind in ("starting_bad", "intermediate_bad")


def classify_pair(rs: RootSystem, i: int, gamma: Sequence[int]) -> PairKind:
    if rs.family == "G":
        raise CartanError("pair classification is not defined for G2")
    gamma = tuple(gamma)
    v = rs.pair(i, gamma)
    if v == -1:
        return PairKind("good")
    if v != -2:
        return PairKind("neither")
    target = list(gamma)
    target[i] += 2
    target = tuple(target)
    if not rs.is_coroot(target):
        return PairKind("neither")
    hits = []
    for d in range(rs.rank):
        t = list(target)
        t[d] -= 1
        if rs.is_coroot(tuple(t)):
            hits.append(d)
    if hits != [i]:
        return PairKind("neither")
    if height(gamma) == 1:
        return PairKind("starting_bad", gamma.index(1))
    comps = [b for b in range(rs.rank)
             if b != i and rs.cartan[i][b] == -1 and rs.pair(b, gamma) == 2]
    if len(comps) != 1:
        raise CartanError(f"intermediate bad pair ({i}, {gamma}) without a unique companion")
    return PairKind("intermediate_bad", comps[0])


@dataclass(frozen=True)
class ReflectionPath:
    """gamma = s_{j_1} ... s_{j_s} alpha_{j_{s+1}}^vee with decreasing heights."""
    steps: Tuple[int, ...]
    terminal: int


def decreasing_reflection_paths(rs: RootSystem, gamma: Sequence[int],
                                require_pairs: Optional[bool] = None) -> Iterator[ReflectionPath]:
    """All decreasing reflection paths down to a simple coroot, in a fixed order.

    With ``require_pairs`` (default: True outside G2) each step must be a good
    or a bad pair.
    """
    gamma = tuple(gamma)
    if require_pairs is None:
        require_pairs = rs.family != "G"
    if height(gamma) == 1:
        yield ReflectionPath((), gamma.index(1))
        return
    for j in range(rs.rank):
        if rs.pair(j, gamma) <= 0:
            continue
        lower = rs.reflect_coroot(j, gamma)
        if require_pairs:
            pk = classify_pair(rs, j, lower)
            if pk.kind == "neither":
                continue
        for sub in decreasing_reflection_paths(rs, lower, require_pairs):
            yield ReflectionPath((j,) + sub.steps, sub.terminal)


def decreasing_reflection_path(rs: RootSystem, gamma: Sequence[int],
                               require_pairs: Optional[bool] = None) -> ReflectionPath:
    for p in decreasing_reflection_paths(rs, gamma, require_pairs):
        return p
    raise CartanError(f"no decreasing reflection path for {tuple(gamma)}")


def exponents(rs: RootSystem, check: bool = False) -> List[int]:
    """Exponents as the dual partition of coroot heights.

    With ``check`` the result is compared against the degrees of the basic
    invariants (computed independently from the Molien series).
    """
    ex = rs.exponents()
    if check:
        from .bgg import invariant_degrees
        degs = invariant_degrees(rs)
        if sorted(d - 1 for d in degs) != ex:
            raise CartanError(f"exponents {ex} disagree with invariant degrees {degs}")
    return ex


def format_word(letters: Sequence[int], generator: Optional[int] = None) -> str:
    """Render a word like ``1232(1)`` (letters 1-based)."""
    s = "".join(str(i + 1) for i in letters)
    if generator is not None:
        s += f"({generator + 1})"
    return s
