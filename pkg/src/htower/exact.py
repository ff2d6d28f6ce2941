"""Exact rational linear algebra and a seeded rational sampler."""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

SparseRow = dict[int, Fraction]


def _as_sparse(row: Sequence | Mapping) -> SparseRow:
    if isinstance(row, Mapping):
        items = row.items()
    else:
        items = enumerate(row)
    return {c: Fraction(v) for c, v in items if v != 0}


class Echelon:
    """Incremental row echelon form over Q.

    Rows are reduced against the pivots seen so far; a row that does not
    reduce to zero becomes a new pivot row.  ``rank`` counts pivots.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: SparseRow) -> SparseRow:
        row = dict(row)
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            f = row[c] / piv[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: Sequence | Mapping) -> bool:
        """Insert a row; return True if it increased the rank."""
        red = self.reduce(_as_sparse(row))
        if not red:
            return False
        self.pivots[min(red)] = red
        return True

    def contains(self, row: Sequence | Mapping) -> bool:
        return not self.reduce(_as_sparse(row))


def rank(rows: Iterable[Sequence | Mapping]) -> int:
    """Rank over Q of a matrix given as dense rows or sparse {col: value} rows.

    Rows are fed to the echelon form sparsest first, which keeps fill-in low
    for the skew forms met here (a few sparse central pairings plus a dense
    generic block).
    """
    ech = Echelon()
    for r in sorted((_as_sparse(r) for r in rows), key=len):
        if r:
            ech.add(r)
    return ech.rank


def rank_fraction_free(rows: Iterable[Sequence | Mapping]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    An independent route to ``rank``: each row is scaled to integers and
    every intermediate entry stays an integer minor of the input.
    """
    sparse = [r for r in (_as_sparse(r) for r in rows) if r]
    if not sparse:
        return 0
    cols = sorted({c for r in sparse for c in r})
    where = {c: i for i, c in enumerate(cols)}
    m = []
    for r in sparse:
        d = lcm(*(v.denominator for v in r.values()))
        row = [0] * len(cols)
        for c, v in r.items():
            row[where[c]] = v.numerator * (d // v.denominator)
        m.append(row)
    rk, prev = 0, 1
    for c in range(len(cols)):
        p = next((i for i in range(rk, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        piv_row = m[rk]
        pv = piv_row[c]
        for i in range(rk + 1, len(m)):
            a = m[i][c]
            m[i] = [(pv * x - a * y) // prev for x, y in zip(m[i], piv_row)]
        prev = pv
        rk += 1
        if rk == len(m):
            break
    return rk


def solve_coordinates(basis: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Coefficients x with sum x_i basis_i = target, or None if not in the span.

    ``basis`` must be linearly independent.
    """
    n = len(basis)
    dim = len(target)
    # Augmented system: columns are basis vectors, last column the target.
    rows = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(dim)]
    piv_cols: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, dim) if rows[i][c] != 0), None)
        if p is None:
            raise ValueError("basis vectors are linearly dependent")
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(dim):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][n] != 0 for i in range(r, dim)):
        return None
    return [rows[i][n] for i in range(n)]


class RationalSampler:
    """Deterministic source of small random rationals."""

    def __init__(self, seed: int = 0, max_num: int = 9, max_den: int = 5) -> None:
        self.rng = random.Random(seed)
        self.max_num = max_num
        self.max_den = max_den

    def rational(self, nonzero: bool = False) -> Fraction:
        while True:
            q = Fraction(self.rng.randint(-self.max_num, self.max_num), self.rng.randint(1, self.max_den))
            if q or not nonzero:
                return q

    def vector(self, n: int, density: float = 1.0) -> list[Fraction]:
        return [self.rational() if self.rng.random() < density else Fraction(0) for _ in range(n)]

    def randint(self, a: int, b: int) -> int:
        return self.rng.randint(a, b)

    def random(self) -> float:
        return self.rng.random()
