"""Classical groups: type I groups over R, C or H, and SL_{l+1}(R).

Everything is checked at the matrix level with exact rational arithmetic.
Vectors are columns and matrices act on the left, so a D-linear map of the
right D-vector space V is an ordinary matrix with entries in D.  The form is
``(u, v) = u^* G v``, where ``u^*`` is the conjugate transpose.

Basis order of V: e_1..e_r, f_1..f_{n-2r}, e*_1..e*_r.  Subspaces are
tuples of basis indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from htower.exact import RationalSampler, rank

Matrix = list[list]


class ClassicalInputError(ValueError):
    """Malformed group name or a block violating its defining constraint."""


# ---------------------------------------------------------------------------
# Scalars


_ZERO = Fraction(0)


class Quaternion:
    """a + b i + c j + d k with rational coordinates; also used for C (c = d = 0)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0) -> None:
        self.a, self.b, self.c, self.d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> Quaternion:
        q = object.__new__(cls)
        q.a, q.b, q.c, q.d = a, b, c, d
        return q

    def __add__(self, o: Quaternion) -> Quaternion:
        return Quaternion._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: Quaternion) -> Quaternion:
        return Quaternion._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> Quaternion:
        return Quaternion._raw(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o: Quaternion) -> Quaternion:
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        if not (c1 or d1 or c2 or d2):
            return Quaternion._raw(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, _ZERO, _ZERO)
        return Quaternion._raw(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, Quaternion):
            o = Quaternion(o)  # type: ignore[arg-type]
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def conj(self) -> Quaternion:
        return Quaternion._raw(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> Fraction:
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def inverse(self) -> Quaternion:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("zero quaternion")
        q = self.conj()
        return Quaternion(q.a / n, q.b / n, q.c / n, q.d / n)

    def real(self) -> Fraction:
        return self.a

    def __repr__(self) -> str:
        parts = [f"{v}{u}" for v, u in zip((self.a, self.b, self.c, self.d), ("", "i", "j", "k")) if v]
        return "+".join(parts) or "0"


@dataclass(frozen=True)
class DivisionAlgebra:
    """R, C or H with the standard involution.

    Elements of R are Fractions; elements of C and H are Quaternions.
    """

    kind: str

    def __post_init__(self) -> None:
        if self.kind not in ("R", "C", "H"):
            raise ClassicalInputError(f"unknown division algebra {self.kind!r}; expected R, C or H")

    @property
    def dim(self) -> int:
        return {"R": 1, "C": 2, "H": 4}[self.kind]

    def zero(self):
        return _ZERO if self.kind == "R" else _QZERO

    def one(self):
        return Fraction(1) if self.kind == "R" else Quaternion(1)

    def scalar(self, a=0, b=0, c=0, d=0):
        if self.kind == "R":
            if b or c or d:
                raise ClassicalInputError("R has no imaginary units")
            return Fraction(a)
        if self.kind == "C" and (c or d):
            raise ClassicalInputError("C has no j or k component")
        return Quaternion(a, b, c, d)

    def conj(self, x):
        return x if self.kind == "R" else x.conj()

    def inverse(self, x):
        return 1 / x if self.kind == "R" else x.inverse()

    def real(self, x) -> Fraction:
        return x if self.kind == "R" else x.real()

    def units(self) -> list:
        """A real basis of D."""
        return [self.scalar(*(1 if k == i else 0 for k in range(4))) for i in range(self.dim)]

    def random(self, sampler: RationalSampler):
        if self.kind == "R":
            return sampler.rational()
        coords = [sampler.rational() for _ in range(self.dim)]
        return Quaternion(*coords)

    def left_block(self, x) -> list[list[Fraction]]:
        """Real matrix of y -> x y on D = R^dim (basis 1, i, j, k)."""
        if self.kind == "R":
            return [[x]]
        units = self.units()
        cols = [x * u for u in units]
        coords = [[c.a, c.b, c.c, c.d][: self.dim] for c in cols]
        return [[coords[j][i] for j in range(self.dim)] for i in range(self.dim)]


_QZERO = Quaternion()
R = DivisionAlgebra("R")
C = DivisionAlgebra("C")
H = DivisionAlgebra("H")


# ---------------------------------------------------------------------------
# Matrices over D


def zeros(D: DivisionAlgebra, rows: int, cols: int) -> Matrix:
    return [[D.zero() for _ in range(cols)] for _ in range(rows)]


def identity(D: DivisionAlgebra, n: int) -> Matrix:
    M = zeros(D, n, n)
    for i in range(n):
        M[i][i] = D.one()
    return M


def matmul(D: DivisionAlgebra, A: Matrix, B: Matrix) -> Matrix:
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = zeros(D, rows, cols)
    nz_b = [[(j, b) for j, b in enumerate(B[k]) if b] for k in range(inner)]
    for i in range(rows):
        row = out[i]
        for k, a in enumerate(A[i]):
            if not a:
                continue
            for j, b in nz_b[k]:
                row[j] = row[j] + a * b
    return out


def madd(A: Matrix, B: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def msub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mneg(A: Matrix) -> Matrix:
    return [[-x for x in r] for r in A]


def lscale(D: DivisionAlgebra, c, A: Matrix) -> Matrix:
    """Entrywise left multiplication by the scalar c (a D-linear map again)."""
    return [[c * x for x in r] for r in A]


def adjoint(D: DivisionAlgebra, A: Matrix) -> Matrix:
    """Conjugate transpose."""
    if not A:
        return []
    return [[D.conj(A[i][j]) for i in range(len(A))] for j in range(len(A[0]))]


def commutator(D: DivisionAlgebra, A: Matrix, B: Matrix) -> Matrix:
    return msub(matmul(D, A, B), matmul(D, B, A))


def is_zero(A: Matrix) -> bool:
    return not any(x for r in A for x in r)


def mat_equal(A: Matrix, B: Matrix) -> bool:
    return all(x == y for r, s in zip(A, B) for x, y in zip(r, s)) and len(A) == len(B)


def trace_real(D: DivisionAlgebra, A: Matrix) -> Fraction:
    """Real part of the trace (the reduced trace pairing is cyclic for it)."""
    return sum((D.real(A[i][i]) for i in range(len(A))), Fraction(0))


def solve_left(D: DivisionAlgebra, P: Matrix, B: Matrix) -> Matrix:
    """Solve P X = B for X by Gauss-Jordan elimination over D (P square, invertible)."""
    n = len(P)
    m = len(B[0]) if B else 0
    aug = [list(P[i]) + list(B[i]) for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c]), None)
        if p is None:
            raise ClassicalInputError("pairing matrix is singular")
        aug[c], aug[p] = aug[p], aug[c]
        inv = D.inverse(aug[c][c])
        aug[c] = [inv * x for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n : n + m] for row in aug]


def real_rank(D: DivisionAlgebra, A: Matrix, cols: Sequence[int] | None = None) -> int:
    """Rank over R of A (optionally only the listed columns) as a real-linear map."""
    cols = list(range(len(A[0]))) if cols is None else list(cols)
    d = D.dim
    rows = []
    for i in range(len(A)):
        blocks = [D.left_block(A[i][j]) for j in cols]
        for s in range(d):
            rows.append({jj * d + t: blocks[jj][s][t] for jj in range(len(cols)) for t in range(d) if blocks[jj][s][t]})
    return rank(rows)


def d_rank(D: DivisionAlgebra, A: Matrix, cols: Sequence[int] | None = None) -> int:
    """Rank over D: the image is a D-subspace, so real rank = dim_R(D) * D-rank."""
    rr = real_rank(D, A, cols)
    assert rr % D.dim == 0, "real rank of a D-linear map must be a multiple of dim D"
    return rr // D.dim


def format_matrix(A: Matrix) -> list[list[str]]:
    return [[str(x) for x in r] for r in A]


# ---------------------------------------------------------------------------
# Type I groups


@dataclass(frozen=True)
class HomBlock:
    """A D-linear map between two spans of basis vectors, embedded as a full
    n x n matrix that vanishes off the source columns and target rows."""

    name: str
    source: tuple[int, ...]
    target: tuple[int, ...]
    matrix: tuple[tuple, ...]

    @classmethod
    def from_full(cls, name: str, source: Sequence[int], target: Sequence[int], M: Matrix) -> HomBlock:
        return cls(name, tuple(source), tuple(target), tuple(tuple(r) for r in M))

    @property
    def full(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def block(self) -> Matrix:
        return [[self.matrix[i][j] for j in self.source] for i in self.target]

    def supported(self) -> bool:
        """True when no entry lies outside the (target, source) block."""
        src, tgt = set(self.source), set(self.target)
        return not any(x for i, r in enumerate(self.matrix) for j, x in enumerate(r) if x and (i not in tgt or j not in src))


@dataclass(frozen=True)
class TypeIGroup:
    """Isometry group of an epsilon-Hermitian form on D^n with Witt index r.

    ``eps`` is +1 for Hermitian and -1 for skew-Hermitian forms.  On the
    anisotropic part the form is positive definite with an orthonormal
    f-basis (for skew-Hermitian H-forms, ``(f, f) = j``).
    """

    name: str
    D: DivisionAlgebra
    eps: int
    n: int
    r: int

    def __post_init__(self) -> None:
        m = self.n - 2 * self.r
        if self.r < 1 or m < 0:
            raise ClassicalInputError(f"{self.name}: need 1 <= r <= n/2, got n={self.n}, r={self.r}")
        if self.eps not in (1, -1):
            raise ClassicalInputError("eps must be +1 or -1")
        if self.eps == -1 and self.D.kind == "R" and m:
            raise ClassicalInputError("a real skew-symmetric form has no anisotropic part")
        if self.eps == -1 and self.D.kind == "C":
            raise ClassicalInputError("use the Hermitian form i*(.,.) for skew-Hermitian C-forms")
        if self.eps == -1 and self.D.kind == "H" and m > 1:
            raise ClassicalInputError("a skew-Hermitian H-form has anisotropic part of dimension at most 1")

    # -- basis -----------------------------------------------------------
    @property
    def m(self) -> int:
        return self.n - 2 * self.r

    def e(self, i: int) -> int:
        return i - 1

    def f(self, a: int) -> int:
        return self.r + a - 1

    def es(self, i: int) -> int:
        return self.r + self.m + i - 1

    def X(self, k: int) -> tuple[int, ...]:
        return tuple(self.e(i) for i in range(1, k + 1))

    def Xs(self, k: int) -> tuple[int, ...]:
        return tuple(self.es(i) for i in range(1, k + 1))

    def Y(self, k: int) -> tuple[int, ...]:
        return tuple(self.e(i) for i in range(k, self.r + 1))

    def Ys(self, k: int) -> tuple[int, ...]:
        return tuple(self.es(i) for i in range(k, self.r + 1))

    @property
    def Vc(self) -> tuple[int, ...]:
        return tuple(self.f(a) for a in range(1, self.m + 1))

    def V_perp(self, k: int) -> tuple[int, ...]:
        """Basis of the orthogonal complement of V_k = X_k + X_k*."""
        return self.Y(k + 1) + self.Vc + self.Ys(k + 1)

    @property
    def k1(self) -> int:
        return k1_of(self)

    # -- the form ----------------------------------------------------------
    @cached_property
    def gram(self) -> Matrix:
        D = self.D
        G = zeros(D, self.n, self.n)
        for i in range(1, self.r + 1):
            G[self.e(i)][self.es(i)] = D.one()
            G[self.es(i)][self.e(i)] = D.one() if self.eps == 1 else -D.one()
        for a in range(1, self.m + 1):
            G[self.f(a)][self.f(a)] = D.one() if self.eps == 1 else D.scalar(0, 0, 1, 0)
        return G

    @cached_property
    def gram_inverse(self) -> Matrix:
        return solve_left(self.D, self.gram, identity(self.D, self.n))

    def pair(self, u: Sequence, v: Sequence):
        """(u, v) = u^* G v for column vectors u, v."""
        D = self.D
        total = D.zero()
        for a, ua in enumerate(u):
            if not ua:
                continue
            ca = D.conj(ua)
            for b, gab in enumerate(self.gram[a]):
                if gab and v[b]:
                    total = total + ca * gab * v[b]
        return total

    def column(self, M: Matrix, j: int) -> list:
        return [M[i][j] for i in range(self.n)]

    def unit(self, j: int) -> list:
        v = [self.D.zero()] * self.n
        v[j] = self.D.one()
        return v

    def in_lie_algebra(self, M: Matrix) -> bool:
        """M^* G + G M = 0, i.e. (Mu, v) + (u, Mv) = 0 for all u, v."""
        D = self.D
        return is_zero(madd(matmul(D, adjoint(D, M), self.gram), matmul(D, self.gram, M)))

    def inv_defect(self, M: Matrix, domain: Sequence[int]) -> list[tuple[int, int]]:
        """Pairs (i, j) of domain indices with (M u_i, u_j) + (u_i, M u_j) != 0.

        Entry (i, j) of M^* G + G M is exactly that sum for basis vectors.
        """
        D = self.D
        cols = list(domain)
        Mc = [[M[i][j] for j in cols] for i in range(self.n)]
        left = matmul(D, adjoint(D, Mc), [[self.gram[a][j] for j in cols] for a in range(self.n)])
        right = matmul(D, [[self.gram[i][a] for a in range(self.n)] for i in cols], Mc)
        return [(cols[a], cols[b]) for a in range(len(cols)) for b in range(len(cols)) if left[a][b] + right[a][b]]

    # -- blocks ------------------------------------------------------------
    def random_block(self, sampler: RationalSampler, source: Sequence[int], target: Sequence[int], name: str = "") -> HomBlock:
        M = zeros(self.D, self.n, self.n)
        for i in target:
            for j in source:
                M[i][j] = self.D.random(sampler)
        return HomBlock.from_full(name, source, target, M)

    def skew_part(self, A: Matrix) -> Matrix:
        """A - G^{-1} A^* G: the element of the Lie algebra whose 'upper' part is A."""
        D = self.D
        return msub(A, matmul(D, self.gram_inverse, matmul(D, adjoint(D, A), self.gram)))

    def random_inv(self, sampler: RationalSampler, source: Sequence[int], target: Sequence[int], name: str = "") -> HomBlock:
        """Random element of Hom^inv(source, target) for a pair of isotropic spans in duality."""
        A = self.random_block(sampler, source, target).full
        return HomBlock.from_full(name, source, target, self.skew_part(A))

    def transpose(self, T: HomBlock, domain: Sequence[int], codomain: Sequence[int]) -> HomBlock:
        """T^t: domain -> codomain with (T v, x) + (v, T^t x) = 0 for v in T.source, x in domain.

        Solved from the pairing between T.source and codomain, which must be perfect.
        """
        D = self.D
        src, cod = list(T.source), list(codomain)
        if len(src) != len(cod):
            raise ClassicalInputError("source and codomain of a transpose must have equal dimension")
        P = [[self.gram[a][b] for b in cod] for a in src]
        # (T v_a, x) is entry (a, x) of T^* G
        TG = matmul(D, adjoint(D, [[T.matrix[i][a] for a in src] for i in range(self.n)]), [[self.gram[i][x] for x in domain] for i in range(self.n)])
        rhs = [[-v for v in row] for row in TG]
        sol = solve_left(D, P, rhs) if src else []
        M = zeros(D, self.n, self.n)
        for bi, b in enumerate(cod):
            for xi, x in enumerate(domain):
                M[b][x] = sol[bi][xi]
        return HomBlock.from_full(f"{T.name}^t", domain, codomain, M)

    def tilde(self, T: HomBlock, k: int) -> Matrix:
        """The endomorphism T~: T on V_k^perp, 0 on X_k*, T^t on X_k."""
        vp = self.V_perp(k)
        if not set(T.source) <= set(vp) or not set(T.target) <= set(self.Xs(k)):
            raise ClassicalInputError("tilde needs T in Hom(V_k^perp, X_k*)")
        ext = HomBlock(T.name, vp, T.target, T.matrix)
        Tt = self.transpose(ext, self.X(k), vp)
        return madd(T.full, Tt.full)

    def restrict_cols(self, M: Matrix, cols: Sequence[int]) -> Matrix:
        keep = set(cols)
        return [[x if j in keep else self.D.zero() for j, x in enumerate(r)] for r in M]

    # -- operators of the rank computation ------------------------------------
    def S_operator(self, Y: HomBlock) -> Matrix:
        """S: Y_1* -> X_{k1}*, S e*_i = e*_i for i <= k1 and S e*_i = Y e*_i for i > k1."""
        k = self.k1
        S = [list(r) for r in Y.full]
        for i in range(1, k + 1):
            S[self.es(i)][self.es(i)] = self.D.one()
        return S

    def V_operator(self) -> Matrix:
        """V: X_{k1}* -> X_{k1}, V e*_l = (-1)^(l+1) e_{k1-l+1}."""
        k = self.k1
        M = zeros(self.D, self.n, self.n)
        for l in range(1, k + 1):
            M[self.e(k - l + 1)][self.es(l)] = self.D.one() if l % 2 == 1 else -self.D.one()
        return M

    def character_scalar(self):
        """Scalar a making a V an element of Hom^inv(X_{k1}*, X_{k1}).

        The required symmetry is conj(a) = eps (-1)^k1 a, so a = i when that sign is -1.
        """
        sign = self.eps * (1 if self.k1 % 2 == 0 else -1)
        if sign == 1:
            return self.D.one()
        if self.D.kind == "R":
            raise ClassicalInputError("no purely imaginary scalar in R")
        return self.D.scalar(0, 1)

    def svs_element(self, Y: HomBlock) -> Matrix:
        """-(a/k1) S^t V S as an element of Hom^inv(Y_1*, Y_1)."""
        D = self.D
        S = self.S_operator(Y)
        St = self.transpose(HomBlock.from_full("S", self.Ys(1), self.Xs(self.k1), S), self.X(self.k1), self.Y(1)).full
        c = lscale(D, -self.character_scalar(), self.V_operator())
        c = [[x / self.k1 if D.kind == "R" else x * Quaternion(Fraction(1, self.k1)) for x in r] for r in c]
        return matmul(D, St, matmul(D, c, S))

    def to_json(self) -> dict:
        return {"name": self.name, "D": self.D.kind, "eps": self.eps, "n": self.n, "r": self.r, "k1": self.k1}


def k1_of(g: TypeIGroup) -> int:
    """Old-rank quantum: 2 for real orthogonal groups, 1 otherwise."""
    return 2 if g.D.kind == "R" and g.eps == 1 else 1


@dataclass(frozen=True)
class SLGroup:
    """SL_{l+1}(R) with its standard basis e_1..e_{l+1}."""

    l: int

    def __post_init__(self) -> None:
        if self.l < 2:
            raise ClassicalInputError("SL_{l+1}(R) needs l >= 2")

    @property
    def name(self) -> str:
        return f"SL({self.l + 1},R)"

    @property
    def r(self) -> int:
        return (self.l + 1) // 2

    k1 = 1

    def to_json(self) -> dict:
        return {"name": self.name, "D": "R", "l": self.l, "r": self.r, "k1": 1}


_NAME = re.compile(r"^\s*(SO\*|SO|SU|U|SP|SL)\s*[\(_]\s*(\d+)\s*(?:,\s*(\d+|R)\s*)?\)?\s*$", re.I)


def parse_classical(s: str) -> TypeIGroup | SLGroup:
    """Parse SO(p,q), Sp(2n,R), SU(p,q), Sp(p,q), SO*(2n) or SL(n,R)."""
    mt = _NAME.match(s)
    if not mt:
        raise ClassicalInputError(f"cannot parse classical group {s!r}; expected e.g. SO(6,6), Sp(6,R), SU(2,3), SO*(8), SL(5,R)")
    fam, a, b = mt.group(1).upper(), int(mt.group(2)), mt.group(3)
    label = f"{mt.group(1)}({a}{',' + b if b else ''})"
    if fam == "SL":
        if b is not None and b.upper() != "R":
            raise ClassicalInputError("only SL(n,R) is supported")
        return SLGroup(a - 1)
    if fam == "SO*":
        if b is not None or a % 2:
            raise ClassicalInputError("SO*(2n) takes one even argument")
        return TypeIGroup(f"SO*({a})", H, -1, a // 2, a // 4)
    if b is None:
        raise ClassicalInputError(f"{label} needs two arguments")
    if b.upper() == "R":
        if fam != "SP" or a % 2:
            raise ClassicalInputError("only Sp(2n,R) takes the field argument R")
        return TypeIGroup(f"Sp({a},R)", R, -1, a, a // 2)
    p, q = int(a), int(b)
    if fam == "SO":
        return TypeIGroup(f"SO({p},{q})", R, 1, p + q, min(p, q))
    if fam in ("SU", "U"):
        return TypeIGroup(f"SU({p},{q})", C, 1, p + q, min(p, q))
    return TypeIGroup(f"Sp({p},{q})", H, 1, p + q, min(p, q))


def form_label(g: TypeIGroup | SLGroup) -> str:
    """Catalog label of the Lie algebra of g."""
    if isinstance(g, SLGroup):
        return f"sl_{g.l + 1}(R)"
    nm = g.name
    if nm.startswith("SO*"):
        return "so*(" + nm[4:]
    if nm.startswith("Sp(") and nm.endswith(",R)"):
        return f"sp_{g.n}(R)"
    p, q = (int(x) for x in nm[nm.index("(") + 1 : -1].split(","))
    p, q = min(p, q), max(p, q)
    return f"{nm[:nm.index('(')].lower()}({p},{q})"


# ---------------------------------------------------------------------------
# Reports


@dataclass
class LemmaReport:
    lemma: str
    group: str
    trials: int
    seed: int
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, trial: int, check: str, **mats: Matrix) -> None:
        self.failures.append({"trial": trial, "check": check, "matrices": {k: format_matrix(v) for k, v in mats.items()}})

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "group": self.group, "trials": self.trials, "seed": self.seed, "ok": self.ok, "failures": self.failures}


def _require_room(g: TypeIGroup) -> int:
    k = g.k1
    if g.r < k + 1:
        raise ClassicalInputError(f"{g.name}: need split rank r >= k1 + 1 = {k + 1}, got {g.r}")
    return k


def verify_lemmafortrans(g: TypeIGroup, trials: int = 200, seed: int = 0) -> LemmaReport:
    """[X~, Y~] = X Y^t - Y X^t for X in Hom(Y_{k1+1}, X_{k1}*), Y in Hom(Y*_{k1+1}, X_{k1}*)."""
    k = _require_room(g)
    D, rep, smp = g.D, LemmaReport("lemmafortrans", g.name, trials, seed), RationalSampler(seed)
    for t in range(trials):
        X = g.random_block(smp, g.Y(k + 1), g.Xs(k), "X")
        Y = g.random_block(smp, g.Ys(k + 1), g.Xs(k), "Y")
        Xt, Yt = g.tilde(X, k), g.tilde(Y, k)
        if not (g.in_lie_algebra(Xt) and g.in_lie_algebra(Yt)):
            rep.fail(t, "tilde lies in the Lie algebra", Xt=Xt, Yt=Yt)
            continue
        br = commutator(D, Xt, Yt)
        Xtr = g.transpose(X, g.X(k), g.Ys(k + 1)).full
        Ytr = g.transpose(Y, g.X(k), g.Y(k + 1)).full
        formula = msub(matmul(D, X.full, Ytr), matmul(D, Y.full, Xtr))
        if not mat_equal(br, formula):
            rep.fail(t, "[X~,Y~] = XY^t - YX^t", X=X.full, Y=Y.full, bracket=br, formula=formula)
        elif not HomBlock.from_full("br", g.X(k), g.Xs(k), br).supported() or g.inv_defect(br, g.X(k)):
            rep.fail(t, "bracket lies in Hom^inv(X_k1, X_k1*)", bracket=br)
    return rep


def verify_actionHOM(g: TypeIGroup, trials: int = 200, seed: int = 0) -> LemmaReport:
    """ad_X(Y~) = -(YX)~ for X in Hom^inv(Y_{k1+1}, Y*_{k1+1}), Y in Hom(V_{k1}^perp, X_{k1}*)."""
    k = _require_room(g)
    D, rep, smp = g.D, LemmaReport("actionHOM", g.name, trials, seed), RationalSampler(seed)
    for t in range(trials):
        X = g.random_inv(smp, g.Y(k + 1), g.Ys(k + 1), "X")
        Y = g.random_block(smp, g.V_perp(k), g.Xs(k), "Y")
        if g.inv_defect(X.full, g.Y(k + 1)) or not g.in_lie_algebra(X.full):
            rep.fail(t, "X lies in Hom^inv", X=X.full)
            continue
        Yt = g.tilde(Y, k)
        ad = commutator(D, X.full, Yt)
        YX = HomBlock.from_full("YX", g.V_perp(k), g.Xs(k), matmul(D, Y.full, X.full))
        expected = mneg(g.tilde(YX, k))
        if not mat_equal(ad, expected):
            rep.fail(t, "ad_X(Y~) = -(YX)~", X=X.full, Y=Y.full, ad=ad, expected=expected)
            continue
        lhs = g.transpose(YX, g.X(k), g.V_perp(k)).full
        rhs = mneg(matmul(D, X.full, g.transpose(Y, g.X(k), g.V_perp(k)).full))
        if not mat_equal(lhs, rhs):
            rep.fail(t, "(YX)^t = -X Y^t", lhs=lhs, rhs=rhs)
    return rep


def verify_weilaction(g: TypeIGroup, trials: int = 200, seed: int = 0) -> LemmaReport:
    """-S X S^t against the three cases of the Schrodinger-model action."""
    k = _require_room(g)
    D, rep, smp = g.D, LemmaReport("Weilaction", g.name, trials, seed), RationalSampler(seed)
    Xk = g.X(k)
    for t in range(trials):
        Y = g.random_block(smp, g.Ys(k + 1), g.Xs(k), "Y")
        Yt = g.tilde(Y, k)
        S = g.S_operator(Y)
        St = g.transpose(HomBlock.from_full("S", g.Ys(1), g.Xs(k), S), Xk, g.Y(1)).full
        Ytr = g.transpose(Y, Xk, g.Y(k + 1)).full
        claimed = madd(mneg(g.restrict_cols(identity(D, g.n), Xk)), Ytr)
        if not mat_equal(St, claimed):
            rep.fail(t, "S^t e_i = -e_i + Y^t e_i", St=St, claimed=claimed)
            continue

        def action(X: Matrix) -> Matrix:
            return mneg(matmul(D, S, matmul(D, X, St)))

        # (a) X in Hom(Y_{k1+1}, X_{k1}*), acting through X~
        Xa = g.random_block(smp, g.Y(k + 1), g.Xs(k), "X")
        Xat = g.tilde(Xa, k)
        lhs = action(Xat)
        rhs = g.restrict_cols(commutator(D, Yt, Xat), Xk)
        if g.inv_defect(Xat, g.Y(1)) or not mat_equal(lhs, rhs):
            rep.fail(t, "case (a): -SXS^t = [Y,X]", X=Xa.full, Y=Y.full, lhs=lhs, rhs=rhs)
        # (b) X in Hom^inv(Y_{k1+1}, Y*_{k1+1})
        Xb = g.random_inv(smp, g.Y(k + 1), g.Ys(k + 1), "X").full
        lhs = action(Xb)
        rhs = mneg(matmul(D, Y.full, matmul(D, Xb, Ytr)))
        YX = HomBlock.from_full("YX", g.V_perp(k), g.Xs(k), matmul(D, Y.full, Xb))
        half = commutator(D, Yt, g.tilde(YX, k))
        half = g.restrict_cols([[x * Fraction(1, 2) if D.kind == "R" else x * Quaternion(Fraction(1, 2)) for x in r] for r in half], Xk)
        if not (mat_equal(lhs, rhs) and mat_equal(lhs, half)):
            rep.fail(t, "case (b): -SXS^t = -YXY^t = (1/2)[Y,YX]", X=Xb, Y=Y.full, lhs=lhs, rhs=rhs, half=half)
        # (c) X central
        Xc = g.random_inv(smp, Xk, g.Xs(k), "X").full
        lhs = action(Xc)
        if not mat_equal(lhs, Xc):
            rep.fail(t, "case (c): -SXS^t = X", X=Xc, lhs=lhs)
    return rep


def verify_svs(g: TypeIGroup, trials: int = 200, seed: int = 0) -> LemmaReport:
    """The character of a rank-one rankable representation corresponds to an
    element of Hom^inv(Y_1*, Y_1) of D-rank k1, still k1 on X_{k1}*."""
    k = _require_room(g)
    D, rep, smp = g.D, LemmaReport("svs", g.name, trials, seed), RationalSampler(seed)
    aV = lscale(D, g.character_scalar(), g.V_operator())
    if g.inv_defect(aV, g.Xs(k)):
        rep.fail(-1, "aV lies in Hom^inv(X_k1*, X_k1)", aV=aV)
        return rep
    center = [HomBlock.from_full("Z", g.X(k), g.Xs(k), g.random_inv(smp, g.X(k), g.Xs(k)).full) for _ in range(3)]
    if not any(trace_real(D, matmul(D, aV, z.full)) for z in center):
        rep.fail(-1, "the central functional is nonzero", aV=aV)
    for t in range(trials):
        Y = g.random_block(smp, g.Ys(k + 1), g.Xs(k), "Y")
        A = g.svs_element(Y)
        if g.inv_defect(A, g.Ys(1)):
            rep.fail(t, "A lies in Hom^inv(Y_1*, Y_1)", A=A)
            continue
        if d_rank(D, A) != k or d_rank(D, A, g.Xs(k)) != k:
            rep.fail(t, "rank k1, also on X_k1*", A=A)
            continue
        # trace duality: Re tr(A X) = (1/k1) Re tr(aV (-S X S^t)) for X in Hom^inv(Y_1, Y_1*)
        X = g.random_inv(smp, g.Y(1), g.Ys(1)).full
        S = g.S_operator(Y)
        St = g.transpose(HomBlock.from_full("S", g.Ys(1), g.Xs(k), S), g.X(k), g.Y(1)).full
        lhs = trace_real(D, matmul(D, A, X))
        rhs = trace_real(D, matmul(D, aV, mneg(matmul(D, S, matmul(D, X, St))))) / k
        if lhs != rhs:
            rep.fail(t, "trace duality", A=A, X=X)
    return rep


def char_rank(g: TypeIGroup, A: Matrix | HomBlock) -> int:
    """D-rank of A in Hom^inv(Y_1*, Y_1); this is the rank of the character it labels."""
    M = A.full if isinstance(A, HomBlock) else A
    src, tgt = set(g.Ys(1)), set(g.Y(1))
    if any(x for i, r in enumerate(M) for j, x in enumerate(r) if x and (i not in tgt or j not in src)):
        raise ClassicalInputError("character matrix must map Y_1* into Y_1")
    bad = g.inv_defect(M, g.Ys(1))
    if bad:
        raise ClassicalInputError(f"not in Hom^inv(Y_1*, Y_1): (Ae*_i, e*_j) + (e*_i, Ae*_j) != 0 at {bad[0]}")
    return d_rank(g.D, M)


# ---------------------------------------------------------------------------
# SL_{l+1}(R)


def sl_case_verify(l: int, trials: int = 200, seed: int = 0) -> LemmaReport:
    """Y1+ X Y2+ against the case formulas, and the rank-one dual operator."""
    G = SLGroup(l)
    n, r = l + 1, G.r
    rep, smp = LemmaReport("SL lemma", G.name, trials, seed), RationalSampler(seed)
    Xr = list(range(1, r))  # e_2..e_r
    Yr = list(range(r, l))  # e_{r+1}..e_l
    top, bottom = 0, l  # e_1, e_{l+1}

    def zero() -> Matrix:
        return zeros(R, n, n)

    def value(Y1: list, Y2: list, X: Matrix) -> Fraction:
        # Y1+ = [1, Y1] on e_1..e_r; Y2+ = [-Y2; 1] on e_{r+1}..e_{l+1}
        y1p = [Fraction(1)] + list(Y1)
        y2p = [-y for y in Y2] + [Fraction(1)]
        return sum((y1p[a] * X[a][r + b] * y2p[b] for a in range(r) for b in range(n - r)), Fraction(0))

    for t in range(trials):
        Y1 = [smp.rational() for _ in Xr]
        Y2 = [smp.rational() for _ in Yr]
        Yh = zero()
        for a, j in enumerate(Xr):
            Yh[top][j] = Y1[a]
        for b, i in enumerate(Yr):
            Yh[i][bottom] = Y2[b]
        # case 1: X in Hom(Y_{r+1}, X_r)
        X = zero()
        for i in Xr:
            for j in Yr:
                X[i][j] = smp.rational()
        v = value(Y1, Y2, X)
        formula = -sum((Y1[a] * X[i][j] * Y2[b] for a, i in enumerate(Xr) for b, j in enumerate(Yr)), Fraction(0))
        central = commutator(R, commutator(R, X, Yh), Yh)[top][bottom] / 2
        if not (v == formula == central):
            rep.fail(t, "case 1: Y1+XY2+ = -Y1XY2 = (1/2)[[X,Y],Y]", X=X, Y=Yh)
        # case 2: X = X1 + X2 in Hom(Y_{r+1}, Re_1) + Hom(Re_{l+1}, X_r)
        X = zero()
        for j in Yr:
            X[top][j] = smp.rational()
        for i in Xr:
            X[i][bottom] = smp.rational()
        v = value(Y1, Y2, X)
        formula = -sum((X[top][j] * Y2[b] for b, j in enumerate(Yr)), Fraction(0)) + sum(
            (Y1[a] * X[i][bottom] for a, i in enumerate(Xr)), Fraction(0)
        )
        central = commutator(R, Yh, X)[top][bottom]
        if not (v == formula == central):
            rep.fail(t, "case 2: Y1+XY2+ = -X1Y2 + Y1X2 = [Y,X]", X=X, Y=Yh)
        # case 3: central X
        X = zero()
        X[top][bottom] = smp.rational()
        if value(Y1, Y2, X) != X[top][bottom]:
            rep.fail(t, "case 3: Y1+XY2+ = X", X=X)
        # dual operator Y2+ Y1+: rank one, nonzero on e_1; trace duality
        A = [[(-Y2[b] if b < len(Y2) else Fraction(1)) * (Fraction(1) if a == 0 else Y1[a - 1]) for a in range(r)] for b in range(n - r)]
        Xg = [[smp.rational() for _ in range(n - r)] for _ in range(r)]
        Xfull = zero()
        for a in range(r):
            for b in range(n - r):
                Xfull[a][r + b] = Xg[a][b]
        tr = sum((A[b][a] * Xg[a][b] for a in range(r) for b in range(n - r)), Fraction(0))
        if rank(A) != 1 or not any(A[b][0] for b in range(n - r)) or tr != value(Y1, Y2, Xfull):
            rep.fail(t, "Y2+Y1+ has rank one, is nonzero on e_1 and represents the character", A=A)
    return rep


# ---------------------------------------------------------------------------
# Rank charts


def attainable_old_ranks(g: TypeIGroup | SLGroup) -> list[int]:
    """Ranks of characters of the center of the rank-parabolic nilradical.

    Each rank is realized by an explicit element whose rank is recomputed.
    """
    if isinstance(g, SLGroup):
        n, r = g.l + 1, g.r
        out = []
        for q in range(r + 1):
            A = [[Fraction(1) if (a == b and a < q) else Fraction(0) for b in range(n - r)] for a in range(r)]
            assert rank(A) == q
            out.append(q)
        return out
    out = []
    step = g.k1
    for q in range(0, g.r + 1, step):
        A = zeros(g.D, g.n, g.n)
        for blk in range(q // step):
            if step == 2:
                i, j = 2 * blk + 1, 2 * blk + 2
                A[g.e(i)][g.es(j)] = g.D.one()
                A[g.e(j)][g.es(i)] = -g.D.one()
            else:
                i = blk + 1
                A[g.e(i)][g.es(i)] = g.character_scalar()
        assert char_rank(g, A) == q
        out.append(q)
    return out


@dataclass(frozen=True)
class RankChart:
    group: str
    form: str
    height: int
    k1: int
    rows: tuple[tuple[int, tuple[int, ...]], ...]

    def as_dict(self) -> dict[int, list[int]]:
        return {k: list(v) for k, v in self.rows}

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "form": self.form,
            "height": self.height,
            "k1": self.k1,
            "chart": [{"new_rank": k, "old_ranks": list(v)} for k, v in self.rows],
        }

    def text(self) -> str:
        lines = [f"{self.group}  (form {self.form}, height {self.height}, k1 = {self.k1})", "old rank | new rank", "---------+---------"]
        for k, v in self.rows:
            for o in v:
                lines.append(f"{o:>8} | {k}")
        return "\n".join(lines)


def rank_chart(g: TypeIGroup | SLGroup | str, height_of: Callable[[str], int] | None = None) -> RankChart:
    """New rank k corresponds to old rank k*k1 below the height; at the height
    every attainable old rank from height*k1 upward occurs."""
    if isinstance(g, str):
        g = parse_classical(g)
    label = form_label(g)
    if height_of is None:
        from htower.cascade import cascade_form
        from htower.forms import lookup_form

        def height_of(lbl: str) -> int:
            return cascade_form(lookup_form(lbl)).height

    ht = height_of(label)
    k1 = g.k1
    old = attainable_old_ranks(g)
    rows = [(k, (k * k1,)) for k in range(ht)]
    rows.append((ht, tuple(x for x in old if x >= ht * k1)))
    return RankChart(g.name, label, ht, k1, tuple(rows))


SUPPORTED_GROUPS = ("Sp(6,R)", "SU(3,4)", "SO(5,7)", "SU(2,2)", "SO(4,6)", "Sp(8,R)", "SO*(8)", "SO*(10)", "Sp(2,3)")

VERIFIERS: dict[str, Callable[..., LemmaReport]] = {
    "lemmafortrans": verify_lemmafortrans,
    "actionHOM": verify_actionHOM,
    "Weilaction": verify_weilaction,
    "svs": verify_svs,
}


def verify_all(trials: int = 200, seed: int = 0, groups: Sequence[str] = SUPPORTED_GROUPS, sl_ranks: Sequence[int] = (4, 5)) -> list[LemmaReport]:
    """Every matrix lemma on every listed group, then the SL lemma."""
    reports = []
    for name in groups:
        g = parse_classical(name)
        for fn in VERIFIERS.values():
            reports.append(fn(g, trials, seed))
    for l in sl_ranks:
        reports.append(sl_case_verify(l, trials, seed))
    return reports


__all__ = [
    "C",
    "ClassicalInputError",
    "DivisionAlgebra",
    "H",
    "HomBlock",
    "LemmaReport",
    "Quaternion",
    "R",
    "RankChart",
    "SLGroup",
    "TypeIGroup",
    "attainable_old_ranks",
    "char_rank",
    "d_rank",
    "form_label",
    "k1_of",
    "parse_classical",
    "rank_chart",
    "sl_case_verify",
    "verify_actionHOM",
    "verify_all",
    "verify_lemmafortrans",
    "verify_svs",
    "verify_weilaction",
]
