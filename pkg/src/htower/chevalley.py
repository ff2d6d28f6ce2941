"""Chevalley basis structure constants.

Signs are fixed on extraspecial pairs and propagated with the standard
relations for a Chevalley basis:

* N(b, a) = -N(a, b)
* N(-a, -b) = -N(a, b)
* N(a, b)/(c, c) = N(b, c)/(a, a) = N(c, a)/(b, b) when a + b + c = 0
* the four-term relation for a + b + c + d = 0.

Positive roots are ordered by height, then lexicographically; the
extraspecial pair of a positive root xi is (g, xi - g) with g the least
positive root such that xi - g is also a positive root.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations

from htower.rootsys import Root, RootSystem, add, is_positive, neg, sub


class JacobiError(AssertionError):
    """Structure constants violate the Jacobi identity."""


class ChevalleyConstants:
    """N(a, b) with [X_a, X_b] = N(a, b) X_{a+b} for all roots a, b.

    ``sign`` is the sign assigned to every extraspecial pair; both choices
    give valid Chevalley bases.
    """

    def __init__(self, rs: RootSystem, sign: int = 1) -> None:
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.rs = rs
        self.sign = sign
        self._order = {r: i for i, r in enumerate(rs.positive_roots)}
        self._pos: dict[tuple[Root, Root], int] = {}
        self._extra: dict[Root, tuple[Root, Root]] = {}
        for xi in rs.positive_roots:
            for g in rs.positive_roots:
                d = sub(xi, g)
                if d in rs.positive_set:
                    self._extra[xi] = (g, d)
                    break

    def string_p(self, a: Root, b: Root) -> int:
        """Largest p with b - p a a root."""
        p = 0
        c = sub(b, a)
        while c in self.rs.root_set:
            p += 1
            c = sub(c, a)
        return p

    def extraspecial(self, xi: Root) -> tuple[Root, Root] | None:
        return self._extra.get(xi)

    def __call__(self, a: Root, b: Root) -> int:
        """N(a, b); zero when a + b is not a root."""
        c = add(a, b)
        if c not in self.rs.root_set:
            return 0
        return self._n(a, b)

    def _n(self, a: Root, b: Root) -> int:
        pa, pb = is_positive(a), is_positive(b)
        if pa and pb:
            return self._npos(a, b)
        if not pa and not pb:
            return -self._npos(neg(a), neg(b))
        if not pa:
            return -self._n(b, a)
        # a positive, b negative, a + b + c = 0
        rs = self.rs
        c = neg(add(a, b))
        if is_positive(c):
            # N(a,b)/(c,c) = N(c,a)/(b,b), both c and a positive
            val = Fraction(rs.norm2(c)) / rs.norm2(b) * self._npos(c, a)
        else:
            # N(a,b)/(c,c) = N(b,c)/(a,a), b and c negative
            val = Fraction(rs.norm2(c)) / rs.norm2(a) * -self._npos(neg(b), neg(c))
        assert val.denominator == 1
        return int(val)

    def _npos(self, a: Root, b: Root) -> int:
        key = (a, b)
        hit = self._pos.get(key)
        if hit is not None:
            return hit
        rs = self.rs
        xi = add(a, b)
        g, d = self._extra[xi]
        if (a, b) == (g, d):
            val = self.sign * (self.string_p(g, d) + 1)
        elif (a, b) == (d, g):
            val = -self._npos(g, d)
        else:
            # four-term relation for (a, b, -g, -d)
            t1 = self(b, neg(g)) * self(a, neg(d))
            t2 = self(neg(g), a) * self(b, neg(d))
            s = Fraction(0)
            if t1:
                s += Fraction(t1) / rs.norm2(sub(b, g))
            if t2:
                s += Fraction(t2) / rs.norm2(sub(a, g))
            v = rs.norm2(xi) / Fraction(self._npos(g, d)) * s
            assert v.denominator == 1
            val = int(v)
        self._pos[key] = val
        return val

    @cached_property
    def positive_table(self) -> dict[tuple[Root, Root], int]:
        """All nonzero N(a, b) with a, b positive."""
        out = {}
        pos = self.rs.positive_roots
        for a in pos:
            for b in pos:
                n = self(a, b)
                if n:
                    out[(a, b)] = n
        return out


def chevalley_constants(rs: RootSystem, sign: int = 1) -> ChevalleyConstants:
    return ChevalleyConstants(rs, sign)


class ChevalleyAlgebra:
    """The full Lie algebra on basis {X_a : a root} and simple coroots h_i.

    Basis labels are ``("x", root)`` and ``("h", i)``.  Brackets are
    returned as dicts label -> integer coefficient.
    """

    def __init__(self, consts: ChevalleyConstants) -> None:
        self.N = consts
        self.rs = consts.rs
        self.basis = [("x", r) for r in self.rs.roots] + [("h", i) for i in range(self.rs.rank)]

    def coroot(self, a: Root) -> dict[int, int]:
        """Coordinates of the coroot of a in the simple coroots."""
        rs = self.rs
        na = rs.norm2(a)
        out = {}
        for i, c in enumerate(a):
            v = Fraction(c) * rs.gram[i][i] / na
            assert v.denominator == 1
            if v:
                out[i] = int(v)
        return out

    def bracket(self, u, v) -> dict:
        ku, lu = u
        kv, lv = v
        rs = self.rs
        if ku == "h" and kv == "h":
            return {}
        if ku == "h":
            c = int(rs.pairing(lv, rs.simple(lu)))
            return {v: c} if c else {}
        if kv == "h":
            return {lbl: -c for lbl, c in self.bracket(v, u).items()}
        s = add(lu, lv)
        if not any(s):
            return {("h", i): c for i, c in self.coroot(lu).items()}
        n = self.N(lu, lv)
        return {("x", s): n} if n else {}

    def bracket_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                for w, c in self.bracket(u, v).items():
                    out[w] = out.get(w, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def jacobi_failures(self, limit: int | None = None) -> list[tuple]:
        bad = []
        for u, v, w in combinations(self.basis, 3):
            total: dict = {}
            for x, y, z in ((u, v, w), (v, w, u), (w, u, v)):
                for k, c in self.bracket_vec(self.bracket(x, y), {z: 1}).items():
                    total[k] = total.get(k, 0) + c
            if any(total.values()):
                bad.append((u, v, w))
                if limit and len(bad) >= limit:
                    break
        return bad


def check_positive_jacobi(consts: ChevalleyConstants, roots: list[Root] | None = None) -> int:
    """Jacobi identity on the span of the given positive roots (default all).

    Returns the number of triples checked; raises JacobiError on failure.
    """
    rs = consts.rs
    roots = list(rs.positive_roots if roots is None else roots)
    rset = set(roots)
    N = consts
    checked = 0
    for i, a in enumerate(roots):
        for j in range(i + 1, len(roots)):
            b = roots[j]
            ab = add(a, b)
            for k in range(j + 1, len(roots)):
                c = roots[k]
                s = add(ab, c)
                if s not in rs.root_set:
                    continue
                checked += 1
                total = 0
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    xy = add(x, y)
                    if xy in rset:
                        total += N(x, y) * N(xy, z)
                    elif xy in rs.root_set:
                        raise JacobiError(f"root set not closed: {xy}")
                if total:
                    raise JacobiError(f"Jacobi fails on {a}, {b}, {c}")
    return checked
