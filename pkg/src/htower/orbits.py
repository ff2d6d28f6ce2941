"""The nilradical n_gamma of a split form as an exact nilpotent Lie algebra,
and Kirillov orbit dimensions of functionals on it.

The basis of n_gamma is indexed by positive roots (Chevalley basis
vectors X_a).  The orbit of a functional lam has dimension equal to the
rank of the skew form (X, Y) -> lam([X, Y]).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from htower.cascade import HTower, cascade_type
from htower.chevalley import ChevalleyConstants, JacobiError, check_positive_jacobi
from htower.exact import RationalSampler, rank
from htower.heisenberg import PreconditionError
from htower.rootsys import Root, SimpleType, add, build_root_system, sub


@dataclass(frozen=True)
class Functional:
    """A linear functional, as coefficients on the basis."""

    coeffs: tuple[Fraction, ...]

    @classmethod
    def zero(cls, n: int) -> "Functional":
        return cls(tuple(Fraction(0) for _ in range(n)))

    @classmethod
    def from_dict(cls, n: int, values: Mapping[int, Fraction]) -> "Functional":
        c = [Fraction(0)] * n
        for i, v in values.items():
            c[i] = Fraction(v)
        return cls(tuple(c))

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.coeffs) if c)


@dataclass(frozen=True)
class RankableSpec:
    k: int
    central_values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.central_values) != self.k:
            raise ValueError("need one central value per layer")
        if any(v == 0 for v in self.central_values):
            raise ValueError("central values must be nonzero")


class NilpotentAlgebra:
    """Structure constants on a basis of root vectors.

    ``brackets[(i, j)] = (k, c)`` means [X_i, X_j] = c X_k; only pairs with
    nonzero bracket are stored (both orders).
    """

    def __init__(self, basis: Sequence[Root], brackets: Mapping[tuple[int, int], tuple[int, int]], layers=()) -> None:
        self.basis = list(basis)
        self.index = {r: i for i, r in enumerate(self.basis)}
        self.brackets = dict(brackets)
        self.layers: list[list[int]] = [list(l) for l in layers]
        self.centers: list[int] = []
        self.type: SimpleType | None = None
        self.tower: HTower | None = None
        self.consts: ChevalleyConstants | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_basis(self, i: int, j: int) -> tuple[int, int] | None:
        return self.brackets.get((i, j))

    def bracket(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                hit = self.brackets.get((i, j))
                if hit:
                    k, c = hit
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def ad(self, x: Mapping[int, Fraction]) -> dict[int, dict[int, Fraction]]:
        """ad_x as a sparse map: column j -> image of X_j."""
        return {j: self.bracket(x, {j: Fraction(1)}) for j in range(self.dim)}

    # ----------------------------------------------------------- checks

    def antisymmetric(self) -> bool:
        for (i, j), (k, c) in self.brackets.items():
            if self.brackets.get((j, i)) != (k, -c):
                return False
        return True

    def jacobi_failures(self, limit: int = 1) -> list[tuple[int, int, int]]:
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    tot: dict[int, Fraction] = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        ab = self.brackets.get((a, b))
                        if not ab:
                            continue
                        abc = self.brackets.get((ab[0], c))
                        if abc:
                            tot[abc[0]] = tot.get(abc[0], 0) + ab[1] * abc[1]
                    if any(tot.values()):
                        bad.append((i, j, k))
                        if len(bad) >= limit:
                            return bad
        return bad

    def check_jacobi(self) -> int:
        """Exhaustive Jacobi check over triples whose total is a basis root."""
        if self.consts is not None:
            return check_positive_jacobi(self.consts, self.basis)
        bad = self.jacobi_failures()
        if bad:
            raise JacobiError(f"Jacobi fails on {bad[0]}")
        return self.dim

    def lower_central_series(self) -> list[int]:
        """Dimensions of the lower central series, ending at 0 for a nilpotent algebra."""
        cur = set(range(self.dim))
        dims = [len(cur)]
        while cur:
            nxt = {self.brackets[(i, j)][0] for i in range(self.dim) for j in cur if (i, j) in self.brackets}
            if nxt == cur:
                break
            cur = nxt
            dims.append(len(cur))
        return dims

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1] == 0

    def subalgebra(self, idx: Sequence[int]) -> "NilpotentAlgebra":
        """The span of the given basis vectors (must be bracket-closed)."""
        pos = {i: k for k, i in enumerate(idx)}
        br = {}
        for i in idx:
            for j in idx:
                hit = self.brackets.get((i, j))
                if hit:
                    if hit[0] not in pos:
                        raise ValueError("span is not a subalgebra")
                    br[(pos[i], pos[j])] = (pos[hit[0]], hit[1])
        out = NilpotentAlgebra([self.basis[i] for i in idx], br)
        out.layers = [[pos[i] for i in l if i in pos] for l in self.layers]
        out.centers = [pos.get(c, -1) for c in self.centers]
        out.type = self.type
        return out

    def to_json(self) -> dict:
        return {
            "type": str(self.type) if self.type else None,
            "basis": [list(r) for r in self.basis],
            "layers": self.layers,
            "centers": self.centers,
            "brackets": [[i, j, k, c] for (i, j), (k, c) in sorted(self.brackets.items()) if i < j],
        }


def build_ngamma(t: SimpleType, sign: int = 1) -> NilpotentAlgebra:
    """n_gamma of the split form of type t with its H-tower layers."""
    if t == SimpleType("A", 1):
        raise PreconditionError("condition (gdefine) fails: the algebra is sl2")
    rs = build_root_system(t)
    tower = cascade_type(t)
    removed = {i for s in tower.steps for i in s.removed}
    basis = [a for a in rs.positive_roots if any(a[i] for i in removed)]
    index = {r: i for i, r in enumerate(basis)}
    N = ChevalleyConstants(rs, sign)
    br = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            s = add(a, b)
            if s in index:
                br[(i, j)] = (index[s], N(a, b))
    # layer i: roots of the i-th stage algebra with positive level
    layers: list[list[int]] = []
    for st in tower.steps:
        nodes = set(st.nodes)
        hr = st.highest_root
        layers.append([i for i, a in enumerate(basis) if all(a[x] == 0 for x in range(t.rank) if x not in nodes) and rs.inner(a, hr) > 0])
    n = NilpotentAlgebra(basis, br, layers)
    n.centers = [index[st.highest_root] for st in tower.steps]
    n.type = t
    n.tower = tower
    n.consts = N
    return n


# ---------------------------------------------------------------------------
# Orbit dimensions


def skew_form(n: NilpotentAlgebra, lam: Functional, idx: Sequence[int] | None = None) -> list[dict[int, Fraction]]:
    """Rows of B_ij = lam([X_i, X_j]) for i, j in idx (default: all)."""
    idx = list(range(n.dim)) if idx is None else list(idx)
    c = lam.coeffs
    rows = []
    for i in idx:
        row = {}
        for col, j in enumerate(idx):
            hit = n.brackets.get((i, j))
            if hit and c[hit[0]]:
                row[col] = c[hit[0]] * hit[1]
        rows.append(row)
    return rows


def orbit_dimension(n: NilpotentAlgebra, lam: Functional, idx: Sequence[int] | None = None) -> int:
    """Dimension of the coadjoint orbit of lam (restricted to the span of idx
    when given, which must be a subalgebra)."""
    if len(lam.coeffs) != n.dim:
        raise ValueError("functional has the wrong dimension")
    return rank(skew_form(n, lam, idx))


def rankable_functional(n: NilpotentAlgebra, spec: RankableSpec) -> Functional:
    """lam supported on the centers of the first k layers with the given values."""
    if not 0 <= spec.k <= len(n.centers):
        raise ValueError(f"k must lie in 0..{len(n.centers)}")
    return Functional.from_dict(n.dim, {n.centers[i]: spec.central_values[i] for i in range(spec.k)})


def expected_rankable_dimension(n: NilpotentAlgebra, layers: Iterable[int]) -> int:
    """2 * sum of n_i over the given layers, with n_i = (dim of layer i - 1)/2."""
    return sum(len(n.layers[i]) - 1 for i in layers)


def coadjoint_translate(n: NilpotentAlgebra, lam: Functional, x: Mapping[int, Fraction]) -> Functional:
    """The functional Y -> lam(exp(-ad x) Y)."""
    adx = n.ad(x)
    out = []
    for j in range(n.dim):
        # apply exp(-ad x) to X_j
        term = {j: Fraction(1)}
        total = dict(term)
        k = 1
        while term:
            nxt: dict[int, Fraction] = {}
            for i, a in term.items():
                for l, b in adx[i].items():
                    nxt[l] = nxt.get(l, 0) + a * b
            term = {i: -v / k for i, v in nxt.items() if v}
            for i, v in term.items():
                total[i] = total.get(i, 0) + v
            k += 1
        out.append(sum((lam.coeffs[i] * v for i, v in total.items()), Fraction(0)))
    return Functional(tuple(out))


def congruence_invariant(n: NilpotentAlgebra, lam: Functional, sampler: RationalSampler) -> bool:
    """rank(M^T B M) equals rank(B) for a random invertible (unitriangular) M."""
    dim = n.dim
    B = [[Fraction(0)] * dim for _ in range(dim)]
    for i, row in enumerate(skew_form(n, lam)):
        for j, v in row.items():
            B[i][j] = v
    M = [[Fraction(1) if i == j else (sampler.rational() if j > i and sampler.random() < 0.3 else Fraction(0)) for j in range(dim)] for i in range(dim)]
    BM = [[sum((B[i][k] * M[k][j] for k in range(dim) if B[i][k] and M[k][j]), Fraction(0)) for j in range(dim)] for i in range(dim)]
    MtBM = [[sum((M[k][i] * BM[k][j] for k in range(dim) if M[k][i] and BM[k][j]), Fraction(0)) for j in range(dim)] for i in range(dim)]
    return rank(MtBM) == rank(B)


# ---------------------------------------------------------------------------
# S_gamma and n_gamma^beta


@dataclass
class SGammaData:
    beta: int  # index into the basis of the chosen simple root beta
    beta_root: Root
    s_gamma: list[int]
    c: int
    levi_roots: frozenset[Root]
    closed_under_bracket: bool
    closed_under_beta: bool
    contains_upper_layers: bool

    @property
    def ok(self) -> bool:
        return self.closed_under_bracket and self.closed_under_beta and self.contains_upper_layers


def s_gamma_set(n: NilpotentAlgebra) -> SGammaData:
    """S_gamma for the split form whose n_gamma is n; beta is the first
    simple root with (beta, highest root) = 1."""
    t = n.type
    tower = n.tower
    assert t is not None and tower is not None
    if tower.height <= 1:
        raise PreconditionError("S_gamma needs an H-tower of height > 1")
    rs = build_root_system(t)
    hr = tower.steps[0].highest_root
    beta_i = next(i for i in range(rs.rank) if rs.inner(rs.simple(i), hr) == 1)
    beta = rs.simple(beta_i)
    gamma_nodes = set(range(rs.rank)) - {i for s in tower.steps for i in s.removed}
    levi = frozenset(a for a in rs.roots if all(a[i] == 0 for i in range(rs.rank) if i not in gamma_nodes))
    # n_beta is the nilradical of the parabolic whose Levi is generated by beta:
    # every positive root except beta itself
    s_idx = [i for i, a in enumerate(n.basis) if a != beta and sub(a, beta) not in levi]
    sset = set(s_idx)
    closed = all(n.brackets[(i, j)][0] in sset for i in s_idx for j in s_idx if (i, j) in n.brackets)
    shift_ok = True
    for i in s_idx:
        a = n.basis[i]
        for b in (add(a, beta), sub(a, beta)):
            if b in rs.root_set and b not in {n.basis[k] for k in sset}:
                shift_ok = False
    upper = all(i in sset for layer in n.layers[1:] for i in layer)
    return SGammaData(n.index[beta], beta, s_idx, n.dim - len(s_idx), levi, closed, shift_ok, upper)


@dataclass
class Ordim2Report:
    type: str
    k: int
    c: int
    expected: int
    translated_dims: list[int]
    representative_dim: int
    heisenberg_rank: int
    heisenberg_expected: int
    abelian_count: int
    abelian_central: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def ordim2_check(n: NilpotentAlgebra, k: int, sampler: RationalSampler | None = None, translates: int = 2) -> Ordim2Report:
    """Orbit dimensions of constituents of a rank-k rankable functional
    restricted to n_gamma^beta."""
    sampler = sampler or RationalSampler(0)
    ht = len(n.centers)
    if ht <= 1:
        raise PreconditionError("ordim2 needs an H-tower of height > 1")
    if not 1 <= k <= ht:
        raise ValueError(f"k must lie in 1..{ht}")
    sg = s_gamma_set(n)
    ns = [(len(l) - 1) // 2 for l in n.layers]
    expected = 2 * (sum(ns[:k]) - sg.c)
    fails: list[str] = []
    if not sg.ok:
        fails.append("S_gamma closure checks failed")
    vals = tuple(sampler.rational(nonzero=True) for _ in range(k))
    lam = rankable_functional(n, RankableSpec(k, vals))
    dims = []
    for _ in range(translates):
        x = {i: sampler.rational() for i in range(n.dim)}
        mu = coadjoint_translate(n, lam, x)
        d = orbit_dimension(n, mu, sg.s_gamma)
        dims.append(d)
        if d != expected:
            fails.append(f"translated functional: rank {d}, expected {expected}")
    # the representative with trivial character on the abelian directions
    rep = orbit_dimension(n, lam, sg.s_gamma)
    if rep != expected:
        fails.append(f"representative: rank {rep}, expected {expected}")
    # split of the first layer inside n_gamma^beta
    hr = n.basis[n.centers[0]]
    sset = set(sg.s_gamma)
    layer1 = [i for i in n.layers[0] if i != n.centers[0]]
    h1s = [i for i in layer1 if i in sset]
    abelian = [n.index[sub(hr, n.basis[i])] for i in layer1 if i not in sset]
    heis = [i for i in h1s if i not in abelian]
    z = Functional.from_dict(n.dim, {n.centers[0]: 1})
    hrank = orbit_dimension(n, z, heis)
    if hrank != 2 * (ns[0] - sg.c) or len(heis) != hrank:
        fails.append(f"Heisenberg part: pairing rank {hrank} on {len(heis)} vectors, expected {2 * (ns[0] - sg.c)}")
    if len(abelian) != sg.c or not set(abelian) <= sset:
        fails.append(f"abelian part: {len(abelian)} directions, expected c = {sg.c}")
    central = all((a, j) not in n.brackets for a in abelian for j in sg.s_gamma)
    if not central:
        fails.append("abelian directions are not central in n_gamma^beta")
    return Ordim2Report(str(n.type), k, sg.c, expected, dims, rep, hrank, 2 * (ns[0] - sg.c), len(abelian), central, fails)


# ---------------------------------------------------------------------------
# Additivity over a split of the tower


@dataclass
class AdditivityReport:
    total: int
    part_lower: int
    part_upper: int
    conjugated_total: int
    precondition: bool

    @property
    def ok(self) -> bool:
        return self.precondition and self.total == self.part_lower + self.part_upper == self.conjugated_total


def layer_block(n: NilpotentAlgebra, layers: Iterable[int]) -> list[int]:
    return sorted(i for l in layers for i in n.layers[l])


def additivity_check(
    n: NilpotentAlgebra, lam_upper: Functional, lam_lower: Functional, split: int, sampler: RationalSampler | None = None
) -> AdditivityReport:
    """Orbit dimension of lam_upper + lam_lower against the two block ranks.

    ``lam_lower`` lives on layers 0..split-1 (the normal block), ``lam_upper``
    on layers split..; supports must be disjoint and lam([n', n'']) = 0.
    """
    lower = layer_block(n, range(split))
    upper = layer_block(n, range(split, len(n.layers)))
    if lam_upper.support & lam_lower.support:
        raise ValueError("functionals must have disjoint supports")
    if not lam_lower.support <= set(lower) or not lam_upper.support <= set(upper):
        raise ValueError("functionals must be supported on their blocks")
    lam = lam_upper + lam_lower
    cross = all(not lam.coeffs[n.brackets[(i, j)][0]] for i in upper for j in lower if (i, j) in n.brackets)
    total = orbit_dimension(n, lam)
    a = orbit_dimension(n, lam_lower, lower)
    b = orbit_dimension(n, lam_upper, upper)
    sampler = sampler or RationalSampler(0)
    # a sparse integral translate keeps the conjugated form cheap to rank
    x = {sampler.randint(0, n.dim - 1): Fraction(sampler.randint(1, 3)) for _ in range(4)}
    conj = orbit_dimension(n, coadjoint_translate(n, lam, x))
    return AdditivityReport(total, a, b, conj, cross)


def random_block_pair(n: NilpotentAlgebra, split: int, sampler: RationalSampler) -> tuple[Functional, Functional]:
    """lam_lower on the centers of layers 0..split-1, lam_upper generic on the rest."""
    lower = {n.centers[i]: sampler.rational(nonzero=True) for i in range(split)}
    upper = {i: sampler.rational() for i in layer_block(n, range(split, len(n.layers)))}
    return Functional.from_dict(n.dim, upper), Functional.from_dict(n.dim, lower)
