"""Symmetric group combinatorics for the type A flag variety.

Permutations are stored in one-line notation ``[w(1), ..., w(n)]`` with the
convention that w sends the basis vector e_i to e_{w(i)}.  Products compose
as functions: (u * v)(i) = u(v(i)).  Inversions are the pairs (i, j) with
i < j whose values w^{-1}(i) > w^{-1}(j); each corresponds to the linear
form t_i - t_j, and the length of w counts them.

Bruhat order is decided by the subword property: v <= w exactly when v is
the ordered product of a subsequence of a fixed reduced word for w.

>>> s1, s2 = Permutation.simple(3, 1), Permutation.simple(3, 2)
>>> (s1 * s2).one_line
(2, 3, 1)
>>> reduced_word(Permutation((3, 2, 1)))
[1, 2, 1]
>>> sorted(str(v) for v in lower_interval(s1 * s2))
['123', '132', '213', '231']
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _all_tuples

from .polyring import Polynomial

__all__ = [
    "Permutation",
    "compose",
    "length",
    "inversion_pairs",
    "inversions",
    "bruhat_leq",
    "lower_interval",
    "reduced_word",
    "apply_to_variables",
    "all_permutations",
    "parse_permutation",
]


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..n in one-line notation."""

    one_line: tuple[int, ...]

    def __post_init__(self):
        n = len(self.one_line)
        if sorted(self.one_line) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.one_line}")
        object.__setattr__(self, "one_line", tuple(self.one_line))

    @property
    def n(self) -> int:
        return len(self.one_line)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, n: int, i: int) -> "Permutation":
        """The adjacent transposition exchanging i and i+1."""
        return cls.transposition(n, i, i + 1)

    @classmethod
    def transposition(cls, n: int, j: int, k: int) -> "Permutation":
        if not 1 <= j < k <= n:
            raise ValueError(f"need 1 <= j < k <= n, got j={j} k={k} n={n}")
        w = list(range(1, n + 1))
        w[j - 1], w[k - 1] = k, j
        return cls(tuple(w))

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return Permutation(tuple(self.one_line[v - 1] for v in other.one_line))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.one_line, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.one_line, start=1))

    def length(self) -> int:
        return len(inversion_pairs(self))

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(map(str, self.one_line))
        return ",".join(map(str, self.one_line))

    def cycle_str(self) -> str:
        """Cycle notation with fixed points omitted; identity prints as 'e'."""
        if self.n > 9:
            raise ValueError("cycle notation is only offered for n <= 9")
        seen: set[int] = set()
        cycles: list[list[int]] = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cyc, i = [start], self(start)
            seen.add(start)
            while i != start:
                cyc.append(i)
                seen.add(i)
                i = self(i)
            if len(cyc) > 1:
                cycles.append(cyc)
        if not cycles:
            return "e"
        return "".join("(" + "".join(map(str, c)) + ")" for c in cycles)


def compose(u: Permutation, v: Permutation) -> Permutation:
    """Function composition (u o v)(i) = u(v(i))."""
    return u * v


def length(w: Permutation) -> int:
    return w.length()


def inversion_pairs(w: Permutation) -> list[tuple[int, int]]:
    """Sorted pairs (i, j), i < j, with w^{-1}(i) > w^{-1}(j)."""
    pos = {v: i for i, v in enumerate(w.one_line, start=1)}
    n = w.n
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if pos[i] > pos[j]
    ]


def inversions(w: Permutation) -> frozenset[Polynomial]:
    """The inversion set as linear forms t_i - t_j."""
    n = w.n
    return frozenset(
        Polynomial.linear_form(n, {i: 1, j: -1}) for i, j in inversion_pairs(w)
    )


def _left_descent(w: Permutation) -> int | None:
    """Smallest i with l(s_i w) < l(w), i.e. i appears after i+1 in w."""
    pos = {v: i for i, v in enumerate(w.one_line, start=1)}
    for i in range(1, w.n):
        if pos[i] > pos[i + 1]:
            return i
    return None


def reduced_word(w: Permutation) -> list[int]:
    """Reduced word by the leftmost-descent rule: w = s_{i_1} ... s_{i_k}."""
    word: list[int] = []
    cur = w
    while True:
        i = _left_descent(cur)
        if i is None:
            return word
        word.append(i)
        cur = Permutation.simple(cur.n, i) * cur


def lower_interval(w: Permutation) -> frozenset[Permutation]:
    """All v <= w in Bruhat order, as products of subwords of reduced_word(w)."""
    out = {Permutation.identity(w.n)}
    for i in reduced_word(w):
        s = Permutation.simple(w.n, i)
        out |= {u * s for u in out}
    return frozenset(out)


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    if v.n != w.n:
        raise ValueError(f"size mismatch: {v.n} vs {w.n}")
    return v in lower_interval(w)


def apply_to_variables(u: Permutation, p: Polynomial) -> Polynomial:
    """The variable action u . p(t_1, ..., t_n) = p(t_{u(1)}, ..., t_{u(n)})."""
    if u.n != p.n:
        raise ValueError(f"size mismatch: permutation {u.n} vs ring {p.n}")
    return p.substitute(
        {i: Polynomial.variable(p.n, u(i)) for i in range(1, u.n + 1) if u(i) != i}
    )


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n, sorted by (length, one-line) for deterministic iteration."""
    perms = [Permutation(t) for t in _all_tuples(range(1, n + 1))]
    return sorted(perms, key=lambda w: (w.length(), w.one_line))


_CYCLES = re.compile(r"^(\(\d+\))*$")


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse one-line ('231' or '2,3,1') or cycle ('(123)', '(12)(34)') forms.

    Cycle form and 'e' need n when the largest moved point does not pin it.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty permutation text")
    if s == "e":
        if n is None:
            raise ValueError("'e' needs an explicit n")
        return Permutation.identity(n)
    if s.startswith("("):
        if not _CYCLES.match(s.replace(" ", "")):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = [
            [int(ch) for ch in grp.replace(" ", "")]
            for grp in re.findall(r"\(([0-9 ]+)\)", s)
        ]
        moved = [x for cyc in cycles for x in cyc]
        if len(set(moved)) != len(moved):
            raise ValueError(f"cycles must be disjoint: {text!r}")
        size = n if n is not None else max(moved, default=0)
        mapping = list(range(1, size + 1))
        for cyc in cycles:
            if any(not 1 <= x <= size for x in cyc):
                raise ValueError(f"bad cycle {cyc} for n={size}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                mapping[a - 1] = b
        return Permutation(tuple(mapping))
    if "," in s:
        values = tuple(int(x) for x in s.split(","))
    elif s.isdigit():
        values = tuple(int(ch) for ch in s)
    else:
        raise ValueError(f"cannot parse permutation {text!r}")
    if n is not None and len(values) != n:
        raise ValueError(f"expected a permutation of 1..{n}, got {text!r}")
    return Permutation(values)
