"""Absolute finite root systems with exact arithmetic.

Simple roots follow Bourbaki numbering.  The inner product is normalized
so that long roots have squared length 2.  Roots are integer tuples giving
coordinates in the simple-root basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


class RootSystemError(ValueError):
    """Illegal type or bad root input."""


def _legal(family: str, rank: int) -> str | None:
    """Return None if (family, rank) is legal, else an explanation."""
    if family not in FAMILIES:
        return f"unknown family {family!r}"
    if rank < 1:
        return "rank must be positive"
    lo = {"A": 1, "B": 2, "C": 2, "D": 4}
    if family in lo and rank < lo[family]:
        if family == "D" and rank == 3:
            return "D3 is not canonical; use A3"
        if family == "D" and rank == 2:
            return "D2 is not simple (A1xA1)"
        if family in "BC" and rank == 1:
            return f"{family}1 is not canonical; use A1"
        return f"{family}{rank} is not a legal type"
    if family == "E" and rank not in (6, 7, 8):
        return "E requires rank 6, 7 or 8"
    if family == "F" and rank != 4:
        return "F requires rank 4"
    if family == "G" and rank != 2:
        return "G requires rank 2"
    return None


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        why = _legal(self.family, self.rank)
        if why:
            raise RootSystemError(why)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\{?\s*(\d+)\s*\}?\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def dimension(self) -> int:
        return build_root_system(self).dimension


def _diagram(t: SimpleType) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of simple roots and the edges (0-based) of the diagram."""
    l = t.rank
    two, one = Fraction(2), Fraction(1)
    f = t.family
    if f in "ADE":
        lengths = [two] * l
    elif f == "B":
        lengths = [two] * (l - 1) + [one]
    elif f == "C":
        lengths = [one] * (l - 1) + [two]
    elif f == "F":
        lengths = [two, two, one, one]
    else:
        lengths = [Fraction(2, 3), two]
    if f in "ABCFG":
        edges = [(i, i + 1) for i in range(l - 1)]
    elif f == "D":
        edges = [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
    else:
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, l - 1)]
    return lengths, edges


@dataclass(frozen=True)
class RootSystem:
    simple_type: SimpleType
    gram: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Root, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.simple_type.rank

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @cached_property
    def root_set(self) -> frozenset[Root]:
        return frozenset(self.roots)

    @cached_property
    def positive_set(self) -> frozenset[Root]:
        return frozenset(self.positive_roots)

    @property
    def dimension(self) -> int:
        return len(self.roots) + self.rank

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """a[i][j] = <alpha_i, alpha_j^vee>."""
        g = self.gram
        return tuple(
            tuple(int(2 * g[i][j] / g[j][j]) for j in range(self.rank)) for i in range(self.rank)
        )

    def simple(self, i: int) -> Root:
        """The simple root alpha_{i+1} (0-based index)."""
        return tuple(1 if k == i else 0 for k in range(self.rank))

    @cached_property
    def _scaled_gram(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """(d, d * gram) with d the least common denominator of the Gram entries."""
        d = 1
        for row in self.gram:
            for x in row:
                d = d * x.denominator // gcd(d, x.denominator)
        return d, tuple(tuple(int(x * d) for x in row) for row in self.gram)

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        d, g = self._scaled_gram
        total = 0
        for i, x in enumerate(a):
            if x:
                row = g[i]
                for j, y in enumerate(b):
                    if y:
                        total += x * y * row[j]
        return Fraction(total, d)

    def norm2(self, a: Sequence) -> Fraction:
        return self.inner(a, a)

    def pairing(self, a: Sequence, b: Sequence) -> Fraction:
        """<a, b^vee> = 2(a,b)/(b,b)."""
        return 2 * self.inner(a, b) / self.norm2(b)

    def is_root(self, a: Sequence) -> bool:
        return tuple(a) in self.root_set

    def is_long(self, a: Root) -> bool:
        return self.norm2(a) == 2

    def height(self, a: Sequence) -> int:
        return sum(a)

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.gram[i][j] != 0

    def components(self, nodes: Iterable[int]) -> list[list[int]]:
        """Connected components of the diagram restricted to ``nodes``."""
        return _components(self.gram, nodes)

    def identify(self, nodes: Iterable[int]) -> list[tuple[SimpleType, tuple[int, ...]]]:
        """Identify each component of a subdiagram, with nodes in Bourbaki order."""
        return [identify_component(self.gram, c) for c in self.components(nodes)]


def neg(a: Sequence[int]) -> Root:
    return tuple(-x for x in a)


def add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def is_positive(a: Sequence[int]) -> bool:
    return any(a) and all(x >= 0 for x in a)


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType) -> RootSystem:
    """All positive roots, generated by root strings from the simple roots."""
    lengths, edges = _diagram(t)
    l = t.rank
    g = [[Fraction(0)] * l for _ in range(l)]
    for i in range(l):
        g[i][i] = lengths[i]
    for i, j in edges:
        g[i][j] = g[j][i] = -max(lengths[i], lengths[j]) / 2
    gram = tuple(tuple(r) for r in g)
    cartan = [[int(2 * g[i][j] / g[j][j]) for j in range(l)] for i in range(l)]

    simple = [tuple(1 if k == i else 0 for k in range(l)) for i in range(l)]
    found: set[Root] = set(simple)
    layer = list(simple)
    while layer:
        nxt: list[Root] = []
        for a in layer:
            for i in range(l):
                # alpha-string through a: a - p alpha_i, ..., a + q alpha_i
                p = 0
                b = list(a)
                while True:
                    b[i] -= 1
                    if tuple(b) in found:
                        p += 1
                    else:
                        break
                pair = sum(a[j] * cartan[j][i] for j in range(l))
                q = p - pair
                if q > 0:
                    c = list(a)
                    c[i] += 1
                    c = tuple(c)
                    if c not in found:
                        found.add(c)
                        nxt.append(c)
        layer = nxt
    pos = tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))
    return RootSystem(t, gram, pos)


def highest_root(rs: RootSystem) -> Root:
    """The unique root maximal in the dominance order."""
    top = max(sum(r) for r in rs.positive_roots)
    cands = [r for r in rs.positive_roots if sum(r) == top]
    if len(cands) != 1:
        raise AssertionError(f"highest root not unique in {rs.simple_type}")
    hr = cands[0]
    assert rs.norm2(hr) == 2
    return hr


def coroot_grading(rs: RootSystem, beta: Sequence[int]) -> dict[int, frozenset[Root]]:
    """Partition all roots by the pairing <alpha, beta^vee>."""
    beta = tuple(beta)
    if beta not in rs.root_set:
        raise RootSystemError(f"{beta} is not a root of {rs.simple_type}")
    if not rs.is_long(beta):
        raise RootSystemError(f"{beta} is not a long root of {rs.simple_type}")
    d, g = rs._scaled_gram
    w = [sum(g[i][j] * beta[j] for j in range(rs.rank)) for i in range(rs.rank)]
    nb = sum(w[i] * beta[i] for i in range(rs.rank))
    levels: dict[int, set[Root]] = {}
    for a in rs.roots:
        k, rem = divmod(2 * sum(x * w[i] for i, x in enumerate(a) if x), nb)
        assert rem == 0
        levels.setdefault(k, set()).add(a)
    return {k: frozenset(v) for k, v in sorted(levels.items())}


# ---------------------------------------------------------------------------
# Subdiagram identification


def _components(gram: Sequence[Sequence], nodes: Iterable[int]) -> list[list[int]]:
    nodes = sorted(set(nodes))
    seen: set[int] = set()
    out: list[list[int]] = []
    for n in nodes:
        if n in seen:
            continue
        comp, stack = [], [n]
        seen.add(n)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in nodes:
                if y not in seen and gram[x][y] != 0:
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def _bond(gram: Sequence[Sequence], i: int, j: int) -> int:
    """Number of lines joining nodes i and j."""
    return int(4 * gram[i][j] ** 2 / (gram[i][i] * gram[j][j]))


def _walk(gram, comp: set[int], start: int, avoid: set[int]) -> list[int]:
    path = [start]
    prev = set(avoid) | {start}
    cur = start
    while True:
        nxt = [y for y in comp if y not in prev and gram[cur][y] != 0]
        if not nxt:
            return path
        assert len(nxt) == 1
        cur = nxt[0]
        prev.add(cur)
        path.append(cur)


def identify_component(gram: Sequence[Sequence], comp: Sequence[int]) -> tuple[SimpleType, tuple[int, ...]]:
    """Cartan type of a connected subdiagram and its nodes in Bourbaki order.

    Conventions: a rank-2 double bond is reported as C2 (first node short);
    a three-node simple chain is A3, never D3.
    """
    cs = set(comp)
    n = len(cs)
    if n == 1:
        return SimpleType("A", 1), tuple(comp)
    nbrs = {x: [y for y in cs if y != x and gram[x][y] != 0] for x in cs}
    branch = [x for x in cs if len(nbrs[x]) == 3]
    if branch:
        b = branch[0]
        arms = sorted((_walk(gram, cs, y, {b}) for y in nbrs[b]), key=lambda p: (len(p), p[0]))
        lens = [len(a) for a in arms]
        if lens[0] == 1 and lens[1] == 1:
            if lens[2] == 1:
                # D4: order the three ends by index
                e = sorted(a[0] for a in arms)
                return SimpleType("D", 4), (e[0], b, e[1], e[2])
            long_arm = arms[2]
            order = list(reversed(long_arm)) + [b, arms[0][0], arms[1][0]]
            return SimpleType("D", n), tuple(order)
        if lens[0] == 1 and lens[1] == 2 and n in (6, 7, 8):
            a2 = arms[0][0]
            a3, a1 = arms[1]
            order = [a1, a2, a3, b] + arms[2]
            return SimpleType("E", n), tuple(order)
        raise RootSystemError("subdiagram is not of finite type")
    ends = sorted(x for x in cs if len(nbrs[x]) == 1)
    path = _walk(gram, cs, ends[0], set())
    bonds = [_bond(gram, path[i], path[i + 1]) for i in range(n - 1)]
    if all(b == 1 for b in bonds):
        return SimpleType("A", n), tuple(path)
    if n == 2:
        short, long_ = sorted(path, key=lambda x: (gram[x][x], x))
        if bonds[0] == 3:
            return SimpleType("G", 2), (short, long_)
        return SimpleType("C", 2), (short, long_)
    if bonds.count(2) != 1 or any(b > 2 for b in bonds):
        raise RootSystemError("subdiagram is not of finite type")
    k = bonds.index(2)
    if n == 4 and k == 1:
        if gram[path[0]][path[0]] < gram[path[-1]][path[-1]]:
            path.reverse()
        return SimpleType("F", 4), tuple(path)
    if k == 0:
        path.reverse()
    elif k != n - 2:
        raise RootSystemError("subdiagram is not of finite type")
    last, prev = path[-1], path[-2]
    fam = "B" if gram[last][last] < gram[prev][prev] else "C"
    return SimpleType(fam, n), tuple(path)


def positive_root_count(t: SimpleType) -> int:
    """Closed-form number of positive roots."""
    l = t.rank
    return {
        "A": l * (l + 1) // 2,
        "B": l * l,
        "C": l * l,
        "D": l * (l - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(l, 0),
        "F": 24,
        "G": 6,
    }[t.family]
