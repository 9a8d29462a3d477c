"""Root systems and Weyl groups for types A (any rank), B2, and G2.

Type A:n keeps the concrete realization in n ambient variables t_1..t_n:
roots are the vectors e_i - e_j, Weyl elements are :class:`Permutation`
objects, and the bilinear form is the standard dot product.  B2 and G2 live
in simple-root coordinates (variables a_1, a_2): roots are integer vectors
over the simple roots, reflections come from the symmetrized Cartan
pairing, and Weyl elements are stored as permutations of the full root
list.  Both backends expose one interface, so the moment-graph and
cohomology layers never branch on type.

Inversion sets follow the usual convention: Inv(w) is the set of positive
roots that w^{-1} makes negative, and len(Inv(w)) is the Coxeter length.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coxeter import (
    Permutation,
    all_permutations,
    inversion_pairs,
    parse_permutation,
)
from .polyring import Polynomial, exact_divide

__all__ = [
    "RootSystem",
    "TypeARootSystem",
    "RankTwoRootSystem",
    "root_system",
    "type_a",
]

RootVector = tuple[int, ...]


class RootSystem:
    """Shared interface for the concrete backends.

    Subclasses provide the group operations; this base class supplies the
    type-independent algorithms (reduced words, Bruhat intervals, the
    coadjoint divided difference).  Instances are immutable lookup tables;
    get them through :func:`root_system`, which caches one per label.
    """

    label: str
    dim: int  # ambient ring dimension
    rank: int  # number of simple roots
    var_prefix: str
    simple_roots: tuple[RootVector, ...]
    positive_roots: tuple[RootVector, ...]
    _bilinear: tuple[tuple[int, ...], ...]

    # -- subclass surface ----------------------------------------------------

    def identity(self):
        raise NotImplementedError

    def elements(self) -> tuple:
        raise NotImplementedError

    def mul(self, u, v):
        raise NotImplementedError

    def inv(self, w):
        raise NotImplementedError

    def length(self, w) -> int:
        raise NotImplementedError

    def inversions(self, w) -> tuple[RootVector, ...]:
        raise NotImplementedError

    def simple_reflection(self, i: int):
        raise NotImplementedError

    def reflection(self, alpha: RootVector):
        """The reflection attached to a positive root."""
        raise NotImplementedError

    def act_on_root(self, w, alpha: RootVector) -> RootVector:
        raise NotImplementedError

    def coadjoint_substitution(self, w) -> dict[int, Polynomial]:
        """Variable assignment realizing w on the coordinate ring."""
        raise NotImplementedError

    def element_str(self, w) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    # -- shared algorithms -----------------------------------------------------

    def _pair(self, alpha: RootVector, beta: RootVector) -> Fraction:
        """Cartan pairing <beta, alpha^vee> = 2 B(alpha, beta) / B(alpha, alpha)."""
        b = self._bilinear
        dot_ab = sum(
            alpha[i] * b[i][j] * beta[j]
            for i in range(self.dim)
            for j in range(self.dim)
        )
        dot_aa = sum(
            alpha[i] * b[i][j] * alpha[j]
            for i in range(self.dim)
            for j in range(self.dim)
        )
        return Fraction(2 * dot_ab, dot_aa)

    def is_root(self, vec: RootVector) -> bool:
        vec = tuple(vec)
        neg = tuple(-x for x in vec)
        return vec in self.positive_roots or neg in self.positive_roots

    def reflect(self, alpha: RootVector, beta: RootVector) -> RootVector:
        """Image of the root beta under the reflection through alpha."""
        alpha, beta = tuple(alpha), tuple(beta)
        if not self.is_root(alpha) or not self.is_root(beta):
            raise ValueError(f"not roots of {self.label}: {alpha}, {beta}")
        c = self._pair(alpha, beta)
        if c.denominator != 1:
            raise ValueError(f"non-integral Cartan pairing for {alpha}, {beta}")
        out = tuple(b - int(c) * a for a, b in zip(alpha, beta))
        if not self.is_root(out):
            raise ValueError(f"reflection left the root system: {out}")
        return out

    def cartan_matrix(self) -> list[list[int]]:
        """Entries a_ij = <alpha_j, alpha_i^vee>."""
        out = []
        for ai in self.simple_roots:
            row = []
            for aj in self.simple_roots:
                c = self._pair(ai, aj)
                row.append(int(c))
            out.append(row)
        return out

    def root_form(self, vec: RootVector) -> Polynomial:
        """The root as a linear form in the coordinate ring."""
        return Polynomial.linear_form(
            self.dim, {i + 1: c for i, c in enumerate(vec) if c}
        )

    def simple_root_form(self, i: int) -> Polynomial:
        if not 1 <= i <= self.rank:
            raise ValueError(f"simple index {i} outside 1..{self.rank}")
        return self.root_form(self.simple_roots[i - 1])

    def left_descent(self, w) -> int | None:
        lw = self.length(w)
        for i in range(1, self.rank + 1):
            if self.length(self.mul(self.simple_reflection(i), w)) < lw:
                return i
        return None

    def reduced_word(self, w) -> list[int]:
        """Reduced word by the leftmost-descent rule: w = s_{i_1} ... s_{i_k}."""
        word: list[int] = []
        cur = w
        while True:
            i = self.left_descent(cur)
            if i is None:
                return word
            word.append(i)
            cur = self.mul(self.simple_reflection(i), cur)

    def lower_interval(self, w) -> frozenset:
        """All v <= w in Bruhat order, via products of subwords."""
        cached = self._interval_cache.get(w)
        if cached is not None:
            return cached
        out = {self.identity()}
        for i in self.reduced_word(w):
            s = self.simple_reflection(i)
            out |= {self.mul(u, s) for u in out}
        result = frozenset(out)
        self._interval_cache[w] = result
        return result

    def bruhat_leq(self, v, w) -> bool:
        return v in self.lower_interval(w)

    def longest_element(self):
        return max(self.elements(), key=self.length)

    def divided_difference(self, p: Polynomial, i: int) -> Polynomial:
        """Coadjoint divided difference (p - s_i . p) / alpha_i."""
        s = self.simple_reflection(i)
        num = p - p.substitute(self.coadjoint_substitution(s))
        if num.is_zero():
            return Polynomial.zero(self.dim)
        return exact_divide(num, self.simple_root_form(i))

    def descriptor(self) -> dict:
        return {
            "type": self.label,
            "rank": self.rank,
            "dim": self.dim,
            "var_prefix": self.var_prefix,
            "cartan_matrix": self.cartan_matrix(),
            "positive_roots": [list(r) for r in self.positive_roots],
        }

    def __repr__(self) -> str:
        return f"<RootSystem {self.label}>"


class TypeARootSystem(RootSystem):
    """S_n acting on n ambient variables; roots are e_i - e_j."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("type A needs n >= 1")
        self.label = f"A:{n}"
        self.n = n
        self.dim = n
        self.rank = n - 1
        self.var_prefix = "t"
        self.simple_roots = tuple(
            self._pair_root(i, i + 1) for i in range(1, n)
        )
        self.positive_roots = tuple(
            self._pair_root(i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        )
        self._bilinear = tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)
        )
        self._interval_cache: dict = {}
        self._elements = tuple(all_permutations(n))

    def _pair_root(self, i: int, j: int) -> RootVector:
        vec = [0] * self.n
        vec[i - 1], vec[j - 1] = 1, -1
        return tuple(vec)

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    def elements(self) -> tuple[Permutation, ...]:
        return self._elements

    def mul(self, u: Permutation, v: Permutation) -> Permutation:
        return u * v

    def inv(self, w: Permutation) -> Permutation:
        return w.inverse()

    def length(self, w: Permutation) -> int:
        return w.length()

    def inversions(self, w: Permutation) -> tuple[RootVector, ...]:
        return tuple(self._pair_root(i, j) for i, j in inversion_pairs(w))

    def simple_reflection(self, i: int) -> Permutation:
        return Permutation.simple(self.n, i)

    def reflection(self, alpha: RootVector) -> Permutation:
        i, j = self._root_indices(alpha)
        return Permutation.transposition(self.n, i, j)

    def _root_indices(self, alpha: RootVector) -> tuple[int, int]:
        alpha = tuple(alpha)
        plus = [i + 1 for i, c in enumerate(alpha) if c == 1]
        minus = [i + 1 for i, c in enumerate(alpha) if c == -1]
        if len(plus) != 1 or len(minus) != 1 or any(c not in (-1, 0, 1) for c in alpha):
            raise ValueError(f"not a type A root: {alpha}")
        return min(plus[0], minus[0]), max(plus[0], minus[0])

    def act_on_root(self, w: Permutation, alpha: RootVector) -> RootVector:
        out = [0] * self.n
        for i, c in enumerate(alpha, start=1):
            if c:
                out[w(i) - 1] = c
        return tuple(out)

    def coadjoint_substitution(self, w: Permutation) -> dict[int, Polynomial]:
        return {
            i: Polynomial.variable(self.n, w(i))
            for i in range(1, self.n + 1)
            if w(i) != i
        }

    def element_str(self, w: Permutation) -> str:
        return str(w)

    def parse_element(self, text: str) -> Permutation:
        return parse_permutation(text, self.n)

    def longest_element(self) -> Permutation:
        return Permutation(tuple(range(self.n, 0, -1)))


# Cartan data for the rank-two types: symmetrized bilinear form on the
# simple-root coordinates, with alpha_1 the short root in both cases.
_RANK2_DATA = {
    "B2": ((2, -2), (-2, 4)),
    "G2": ((2, -3), (-3, 6)),
}


class RankTwoRootSystem(RootSystem):
    """B2 or G2 in simple-root coordinates.

    Weyl elements are permutations of the full root list, stored as index
    tuples; the group (order 8 or 12) is enumerated once at construction.
    """

    def __init__(self, label: str):
        if label not in _RANK2_DATA:
            raise ValueError(f"unsupported rank-two type {label!r}")
        self.label = label
        self.dim = 2
        self.rank = 2
        self.var_prefix = "a"
        self._bilinear = _RANK2_DATA[label]
        self.simple_roots = ((1, 0), (0, 1))
        self.positive_roots = self._close_roots()
        self._interval_cache: dict = {}

        pos = self.positive_roots
        self._roots = pos + tuple(tuple(-x for x in r) for r in pos)
        self._root_index = {r: k for k, r in enumerate(self._roots)}
        self._npos = len(pos)

        self._simple = tuple(
            self._reflection_table(a) for a in self.simple_roots
        )
        self._enumerate_group()

    def _close_roots(self) -> tuple[RootVector, ...]:
        roots = set(self.simple_roots) | {
            tuple(-x for x in r) for r in self.simple_roots
        }
        frontier = set(roots)
        while frontier:
            new = set()
            for beta in frontier:
                for alpha in self.simple_roots:
                    c = self._pair(alpha, beta)
                    img = tuple(b - int(c) * a for a, b in zip(alpha, beta))
                    if img not in roots:
                        new.add(img)
            roots |= new
            frontier = new
        pos = [r for r in roots if all(x >= 0 for x in r)]
        return tuple(sorted(pos, key=lambda r: (sum(r), r)))

    def _reflection_table(self, alpha: RootVector) -> tuple[int, ...]:
        imgs = []
        for beta in self._roots:
            c = self._pair(alpha, beta)
            imgs.append(
                self._root_index[tuple(b - int(c) * a for a, b in zip(alpha, beta))]
            )
        return tuple(imgs)

    def _enumerate_group(self) -> None:
        ident = tuple(range(len(self._roots)))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self._simple:
                    prod = tuple(s[w[k]] for k in range(len(w)))
                    if prod not in seen:
                        seen.add(prod)
                        nxt.append(prod)
            frontier = nxt
        self._length = {w: self._length_of(w) for w in seen}
        # canonical words need lengths, so fill them in a second pass
        self._word = {w: tuple(self.reduced_word(w)) for w in seen}
        self._elements = tuple(
            sorted(seen, key=lambda w: (self._length[w], self._word[w]))
        )

    def _length_of(self, w) -> int:
        count = 0
        for k in range(self._npos, len(self._roots)):
            if w[k] < self._npos:  # w sends a negative root to a positive one
                count += 1
        return count

    def identity(self):
        return tuple(range(len(self._roots)))

    def elements(self) -> tuple:
        return self._elements

    def mul(self, u, v):
        return tuple(u[v[k]] for k in range(len(v)))

    def inv(self, w):
        out = [0] * len(w)
        for k, img in enumerate(w):
            out[img] = k
        return tuple(out)

    def length(self, w) -> int:
        got = self._length.get(w)
        return got if got is not None else self._length_of(w)

    def inversions(self, w) -> tuple[RootVector, ...]:
        inv = []
        for k in range(self._npos, len(self._roots)):
            img = w[k]
            if img < self._npos:
                inv.append(self._roots[img])
        return tuple(sorted(inv, key=lambda r: (sum(r), r)))

    def simple_reflection(self, i: int):
        if not 1 <= i <= 2:
            raise ValueError(f"simple index {i} outside 1..2")
        return self._simple[i - 1]

    def reflection(self, alpha: RootVector):
        alpha = tuple(alpha)
        if alpha not in self._root_index:
            raise ValueError(f"not a root of {self.label}: {alpha}")
        return self._reflection_table(alpha)

    def act_on_root(self, w, alpha: RootVector) -> RootVector:
        k = self._root_index.get(tuple(alpha))
        if k is None:
            raise ValueError(f"not a root of {self.label}: {alpha}")
        return self._roots[w[k]]

    def coadjoint_substitution(self, w) -> dict[int, Polynomial]:
        return {
            i + 1: self.root_form(self.act_on_root(w, a))
            for i, a in enumerate(self.simple_roots)
        }

    def element_str(self, w) -> str:
        word = self._word.get(w)
        if word is None:
            word = tuple(self.reduced_word(w))
        return "".join(map(str, word)) if word else "e"

    def parse_element(self, text: str):
        s = text.strip()
        if s == "e" or s == "":
            return self.identity()
        if not s.isdigit():
            raise ValueError(f"cannot parse {self.label} element {text!r}")
        w = self.identity()
        for ch in s:
            i = int(ch)
            if not 1 <= i <= self.rank:
                raise ValueError(f"simple index {ch} outside 1..{self.rank}")
            w = self.mul(w, self.simple_reflection(i))
        return w


@lru_cache(maxsize=None)
def root_system(label: str) -> RootSystem:
    """Factory with one cached instance per type label ('A:3', 'B2', 'G2')."""
    label = label.strip()
    if label.upper().startswith("A:"):
        return TypeARootSystem(int(label[2:]))
    if label.upper() in _RANK2_DATA:
        return RankTwoRootSystem(label.upper())
    raise ValueError(f"unknown type selector {label!r} (use A:n, B2, or G2)")


def type_a(n: int) -> RootSystem:
    return root_system(f"A:{n}")
