"""Catalog of isotropic F-forms (real and p-adic) and their restricted roots.

A form is described by its Satake/Tits index: the absolute type, the set
of black (anisotropic) nodes and the *-action, a group of diagram
automorphisms.  The restriction of a root to the maximal split torus is
the orthogonal projection onto the subspace orthogonal to the black
simple roots and fixed by the *-action.  Everything else (restricted
roots, multiplicities, split rank, anisotropic dimension) is computed
from that projection.
"""

from __future__ import annotations

import difflib
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from itertools import permutations, product
from typing import Callable, Iterable, Iterator, Sequence

import yaml

from htower.expr import evaluate, substitute
from htower.rootsys import Root, RootSystem, SimpleType, build_root_system, highest_root, identify_component

Perm = tuple[int, ...]


class CatalogMiss(KeyError):
    """Label not found in the forms catalog."""

    def __init__(self, label: str, nearest: Sequence[str]) -> None:
        self.label = label
        self.nearest = list(nearest)
        hint = f"; nearest: {', '.join(self.nearest)}" if self.nearest else ""
        super().__init__(f"unknown form label {label!r}{hint}")

    def __str__(self) -> str:
        return self.args[0]


class GdefineError(ValueError):
    """Condition (gdefine) fails for a form."""


# ---------------------------------------------------------------------------
# Tits indices


def _closure(gens: Iterable[Perm], n: int) -> frozenset[Perm]:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    gens = list(gens)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(h[g[i]] for i in range(n))
                if gh not in group:
                    group.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return frozenset(group)


def _perm_from_cycles(cycles: Sequence[Sequence[int]], n: int) -> Perm:
    p = list(range(n))
    for cyc in cycles:
        c = [x - 1 for x in cyc]
        for a, b in zip(c, c[1:] + c[:1]):
            p[a] = b
    return tuple(p)


@lru_cache(maxsize=None)
def diagram_automorphisms(t: SimpleType) -> frozenset[Perm]:
    """Automorphisms of the Dynkin diagram (0-based node permutations)."""
    l = t.rank
    ident = tuple(range(l))
    if t.family == "A" and l > 1:
        return frozenset({ident, tuple(reversed(ident))})
    if t.family == "D":
        if l == 4:
            out = set()
            for img in permutations((0, 2, 3)):
                p = list(ident)
                for src, dst in zip((0, 2, 3), img):
                    p[src] = dst
                out.add(tuple(p))
            return frozenset(out)
        swap = list(ident)
        swap[l - 2], swap[l - 1] = l - 1, l - 2
        return frozenset({ident, tuple(swap)})
    if t.family == "E" and l == 6:
        return frozenset({ident, (5, 1, 4, 3, 2, 0)})
    return frozenset({ident})


@dataclass(frozen=True)
class TitsIndex:
    """Absolute type, black nodes (0-based) and the *-action group."""

    type: SimpleType
    black: frozenset[int]
    star: frozenset[Perm]

    @classmethod
    def make(cls, t: SimpleType, black: Iterable[int], gens: Iterable[Perm] = ()) -> "TitsIndex":
        star = _closure(gens, t.rank)
        autos = diagram_automorphisms(t)
        assert star <= autos, "star action must consist of diagram automorphisms"
        black = frozenset(black)
        for g in star:
            assert {g[b] for b in black} == black, "black set must be star-stable"
        return cls(t, black, star)

    @property
    def white(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.type.rank) if i not in self.black)

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of the *-action on white nodes, sorted by least node."""
        seen: set[int] = set()
        out = []
        for i in self.white:
            if i in seen:
                continue
            orb = tuple(sorted({g[i] for g in self.star}))
            seen.update(orb)
            out.append(orb)
        return tuple(out)

    def canonical(self) -> "TitsIndex":
        """Rename B2 as C2 (node swap); other types are already canonical."""
        if self.type == SimpleType("B", 2):
            sw = (1, 0)
            return TitsIndex(SimpleType("C", 2), frozenset(sw[b] for b in self.black), frozenset({(0, 1)}))
        return self

    def equivalent(self, other: "TitsIndex") -> bool:
        """Equal up to a diagram automorphism."""
        a, b = self.canonical(), other.canonical()
        if a.type != b.type:
            return False
        for phi in diagram_automorphisms(a.type):
            inv = [0] * len(phi)
            for i, x in enumerate(phi):
                inv[x] = i
            if frozenset(phi[x] for x in a.black) != b.black:
                continue
            conj = frozenset(tuple(phi[g[inv[i]]] for i in range(len(phi))) for g in a.star)
            if conj == b.star:
                return True
        return False

    def restrict(self, nodes: Sequence[int], t: SimpleType) -> "TitsIndex":
        """Index induced on the subdiagram ``nodes`` (given in the order of t)."""
        pos = {x: k for k, x in enumerate(nodes)}
        gens = []
        for g in self.star:
            if {g[x] for x in nodes} != set(nodes):
                raise ValueError("subdiagram is not stable under the star action")
            gens.append(tuple(pos[g[x]] for x in nodes))
        black = [pos[x] for x in nodes if x in self.black]
        return TitsIndex.make(t, black, gens)


# ---------------------------------------------------------------------------
# Restricted roots


@dataclass(frozen=True)
class RestrictedRootSystem:
    """Restricted roots in the basis of restricted simple roots.

    Restricted simple roots are indexed by the white orbits of the index,
    in order of least node.
    """

    restricted_type: str
    rank: int
    gram: tuple[tuple[Fraction, ...], ...]
    mult: dict[Root, int] = field(compare=False)

    @cached_property
    def positive(self) -> tuple[Root, ...]:
        return tuple(r for r in self.mult if all(x >= 0 for x in r))

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        g = self.gram
        return sum((Fraction(x) * y * g[i][j] for i, x in enumerate(a) if x for j, y in enumerate(b) if y), Fraction(0))

    def level(self, a: Sequence, eta: Sequence) -> Fraction:
        return 2 * self.inner(a, eta) / self.inner(eta, eta)

    @cached_property
    def mult_by_length(self) -> dict[Fraction, set[int]]:
        out: dict[Fraction, set[int]] = {}
        for r, m in self.mult.items():
            out.setdefault(self.inner(r, r), set()).add(m)
        return out

    @property
    def total_mult(self) -> int:
        return sum(self.mult.values())


class Restriction:
    """Projection of the absolute roots of a Tits index."""

    def __init__(self, index: TitsIndex) -> None:
        self.index = index
        self.rs: RootSystem = build_root_system(index.type)
        self.orbit_of: dict[int, int] = {}
        for k, orb in enumerate(index.orbits):
            for i in orb:
                self.orbit_of[i] = k

    @property
    def split_rank(self) -> int:
        return len(self.index.orbits)

    def coords(self, a: Sequence[int]) -> Root:
        """Restricted coordinates: sum of coefficients over each white orbit."""
        out = [0] * self.split_rank
        for i, c in enumerate(a):
            k = self.orbit_of.get(i)
            if k is not None:
                out[k] += c
        return tuple(out)

    def project(self, v: Sequence) -> tuple[Fraction, ...]:
        """Orthogonal projection onto {x : x fixed by the star group, x orthogonal to black roots}."""
        rs = self.rs
        l = rs.rank
        star = self.index.star
        avg = [Fraction(0)] * l
        for g in star:
            for i, c in enumerate(v):
                avg[g[i]] += Fraction(c)
        avg = [x / len(star) for x in avg]
        black = sorted(self.index.black)
        if not black:
            return tuple(avg)
        # subtract the component in span(black): solve G_bb x = (avg, alpha_b)
        n = len(black)
        m = [[rs.gram[b][c] for c in black] + [rs.inner(avg, rs.simple(b))] for b in black]
        for col in range(n):
            p = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[p] = m[p], m[col]
            pv = m[col][col]
            m[col] = [x / pv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        out = list(avg)
        for k, b in enumerate(black):
            out[b] -= m[k][n]
        return tuple(out)

    @cached_property
    def simple_projections(self) -> tuple[tuple[Fraction, ...], ...]:
        projs = []
        for orb in self.index.orbits:
            ps = {self.project(self.rs.simple(i)) for i in orb}
            assert len(ps) == 1, "orbit members must restrict to the same root"
            projs.append(ps.pop())
        return tuple(projs)

    @cached_property
    def system(self) -> RestrictedRootSystem:
        rs = self.rs
        sp = self.simple_projections
        r = len(sp)
        gram = tuple(tuple(rs.inner(sp[i], sp[j]) for j in range(r)) for i in range(r))
        mult = Counter()
        for a in rs.roots:
            c = self.coords(a)
            if any(c):
                mult[c] += 1
        if r == 0:
            rtype = "none"
        else:
            t, _order = identify_component(gram, list(range(r)))
            doubled = any(tuple(2 * x for x in c) in mult for c in mult)
            rtype = f"BC{r}" if doubled else str(t)
        return RestrictedRootSystem(rtype, r, gram, dict(mult))

    @cached_property
    def anisotropic_dim(self) -> int:
        zero = sum(1 for a in self.rs.roots if not any(self.coords(a)))
        return self.rs.rank + zero - self.split_rank

    @cached_property
    def highest(self) -> Root:
        """Restriction of the absolute highest root."""
        return self.coords(highest_root(self.rs))

    def highest_mult(self) -> int:
        return self.system.mult.get(self.highest, 0)

    def highest_is_fixed(self) -> bool:
        """Structural form of gdefine: the highest root is orthogonal to black
        roots and fixed by the star action."""
        hr = highest_root(self.rs)
        return tuple(Fraction(x) for x in hr) == self.project(hr)


# ---------------------------------------------------------------------------
# Index shapes


def _nodes(xs: Iterable[int]) -> list[int]:
    return [x - 1 for x in xs]


def _flip(t: SimpleType) -> Perm:
    return tuple(reversed(range(t.rank)))


def _swap_last(t: SimpleType) -> Perm:
    l = t.rank
    p = list(range(l))
    p[l - 2], p[l - 1] = l - 1, l - 2
    return tuple(p)


def _shape_split(t, spec, args):
    return [], []


def _shape_unitary(t, spec, args):
    (p,) = args
    n = t.rank + 1
    white = set(range(1, p + 1)) | set(range(n - p, n))
    return [i for i in range(t.rank) if i + 1 not in white], [_flip(t)]


def _shape_quaternionic_a(t, spec, args):
    return [i for i in range(t.rank) if (i + 1) % 2 == 1], []


def _shape_orthogonal_b(t, spec, args):
    (p,) = args
    return list(range(p, t.rank)), []


def _shape_orthogonal_d(t, spec, args):
    p, q = args
    l = t.rank
    gens = [_swap_last(t)] if ((q - p) // 2) % 2 == 1 else []
    if p >= l - 1:
        return [], gens
    return list(range(p, l)), gens


def _shape_orthogonal_six(t, spec, args):
    (p,) = args
    if p == 1:
        return _shape_quaternionic_a(t, spec, ())
    if p == 2:
        return _shape_unitary(t, spec, (2,))
    return [], []


def _shape_quaternionic_c(t, spec, args):
    (p,) = args
    white = {2 * k for k in range(1, p + 1)}
    return [i for i in range(t.rank) if i + 1 not in white], []


def _shape_so_star(t, spec, args):
    (n,) = args
    if n % 2 == 0:
        black = [i for i in range(n) if (i + 1) % 2 == 1]
        return black, []
    black = [i for i in range(n - 2) if (i + 1) % 2 == 1]
    return black, [_swap_last(t)]


def _shape_white_initial(t, spec, args):
    (r,) = args
    return list(range(r, t.rank)), []


def _shape_quasi_split_d(t, spec, args):
    return [], [_swap_last(t)]


def _shape_white_even(t, spec, args):
    (r,) = args
    white = {2 * k for k in range(1, r + 1)}
    return [i for i in range(t.rank) if i + 1 not in white], []


def _shape_outer_even(t, spec, args):
    (r,) = args
    n = t.rank
    if n == 2 * r + 1:
        white = {2 * k for k in range(1, r)} | {n - 1, n}
    else:
        white = {2 * k for k in range(1, r + 1)}
    return [i for i in range(n) if i + 1 not in white], [_swap_last(t)]


def _shape_explicit(t, spec, args):
    white = set(spec["white"])
    gens = [_perm_from_cycles(g, t.rank) for g in spec.get("cycles", [])]
    return [i for i in range(t.rank) if i + 1 not in white], gens


SHAPES: dict[str, Callable] = {
    "split": _shape_split,
    "unitary": _shape_unitary,
    "quaternionic_a": _shape_quaternionic_a,
    "orthogonal_b": _shape_orthogonal_b,
    "orthogonal_d": _shape_orthogonal_d,
    "orthogonal_six": _shape_orthogonal_six,
    "quaternionic_c": _shape_quaternionic_c,
    "so_star": _shape_so_star,
    "white_initial": _shape_white_initial,
    "quasi_split_d": _shape_quasi_split_d,
    "white_even": _shape_white_even,
    "outer_even": _shape_outer_even,
    "explicit": _shape_explicit,
}


# ---------------------------------------------------------------------------
# Catalog


def normalize_label(s: str) -> str:
    """Canonical spelling used for label matching."""
    s = unicodedata.normalize("NFKC", s)
    s = s.replace("−", "-").replace("\\times", "×").replace("\\mathbb", "")
    s = re.sub(r"\s+", "", s)
    s = s.replace("*", "*")
    # "x" between two algebra names in exceptional labels means a product
    s = re.sub(r"(?<=[0-9)])x(?=[a-z])", "×", s)
    return s


@dataclass(frozen=True)
class Family:
    name: str
    field: str
    kind: str
    labels: tuple[str, ...]
    params: tuple[str, ...]
    where: str
    type: str
    shape: str
    args: tuple
    spec: dict = field(compare=False, hash=False, repr=False)

    @cached_property
    def patterns(self) -> list[re.Pattern]:
        out = []
        for lab in self.labels:
            lab = normalize_label(lab)
            parts, seen = [], set()
            i = 0
            while i < len(lab):
                j = lab.find("<", i)
                if j < 0:
                    parts.append(re.escape(lab[i:]))
                    break
                k = lab.index(">", j)
                parts.append(re.escape(lab[i:j]))
                name = lab[j + 1 : k]
                if name in self.params:
                    parts.append(f"(?P={name})" if name in seen else f"(?P<{name}>\\d+)")
                    seen.add(name)
                else:
                    parts.append(r"\d+")
                i = k + 1
            out.append(re.compile("".join(parts)))
        return out

    def admissible(self, env: dict[str, int]) -> bool:
        return bool(evaluate(self.where, env)) if self.where else True

    def absolute_type(self, env: dict[str, int]) -> SimpleType:
        return SimpleType.parse(substitute(self.type, env))

    def label(self, env: dict[str, int]) -> str:
        return substitute(self.labels[0], env)

    def build(self, env: dict[str, int]) -> "FormDescriptor":
        t = self.absolute_type(env)
        args = tuple(evaluate(a, env) for a in self.args)
        black, gens = SHAPES[self.shape](t, self.spec, args)
        index = TitsIndex.make(t, black, gens)
        return FormDescriptor(self.label(env), self.field, index, self.name, self.kind, tuple(sorted(env.items())))

    def instances(self, max_param: int = 24) -> Iterator[dict[str, int]]:
        if not self.params:
            yield {}
            return
        for vals in product(range(0, max_param + 1), repeat=len(self.params)):
            env = dict(zip(self.params, vals))
            try:
                if self.admissible(env):
                    yield env
            except ZeroDivisionError:
                continue


@dataclass(frozen=True)
class FormDescriptor:
    """An F-form of a simple Lie algebra given by its Tits index."""

    label: str
    field: str
    index: TitsIndex
    family: str = ""
    kind: str = ""
    params: tuple = ()

    @property
    def absolute_type(self) -> SimpleType:
        return self.index.type

    @cached_property
    def restriction(self) -> Restriction:
        return Restriction(self.index)

    @property
    def split_rank(self) -> int:
        return self.restriction.split_rank

    @property
    def anisotropic_dim(self) -> int:
        return self.restriction.anisotropic_dim

    @property
    def is_split(self) -> bool:
        return not self.index.black and len(self.index.star) == 1

    def __str__(self) -> str:
        return self.label


class Catalog:
    def __init__(self, families: Sequence[Family], version: int) -> None:
        self.families = list(families)
        self.version = version
        self._candidates: dict[tuple[SimpleType, str], tuple[FormDescriptor, ...]] = {}

    @classmethod
    def load(cls, text: str | None = None) -> "Catalog":
        if text is None:
            text = resources.files("htower").joinpath("data/forms.yaml").read_text(encoding="utf-8")
        raw = yaml.safe_load(text)
        if raw.get("schema") != "htower-forms":
            raise ValueError("not a forms catalog")
        fams = []
        for f in raw["families"]:
            fams.append(
                Family(
                    name=f["name"],
                    field=f["field"],
                    kind=f.get("kind", f["name"]),
                    labels=tuple(f["labels"]),
                    params=tuple(f.get("params", ())),
                    where=f.get("where", ""),
                    type=str(f["type"]),
                    shape=f["shape"],
                    args=tuple(f.get("args", ())),
                    spec=f,
                )
            )
        return cls(fams, int(raw["version"]))

    def parse(self, label: str) -> FormDescriptor:
        key = normalize_label(label)
        for fam in self.families:
            for pat in fam.patterns:
                m = pat.fullmatch(key)
                if not m:
                    continue
                env = {k: int(v) for k, v in m.groupdict().items()}
                if fam.admissible(env):
                    return fam.build(env)
        raise CatalogMiss(label, self.nearest(key))

    def example_labels(self, max_param: int = 8) -> list[str]:
        out = []
        for fam in self.families:
            for env in fam.instances(max_param):
                out.append(fam.label(env))
        return out

    def nearest(self, key: str, n: int = 3) -> list[str]:
        labels = self.example_labels()
        norm = {normalize_label(x): x for x in labels}
        return [norm[k] for k in difflib.get_close_matches(key, list(norm), n=n, cutoff=0.5)]

    def candidates(self, t: SimpleType, field_kind: str) -> tuple[FormDescriptor, ...]:
        """All catalog forms over the given field whose absolute type is t
        (B2 and C2 are treated as the same type)."""
        canon = TitsIndex.make(t, []).canonical().type
        key = (canon, field_kind)
        if key not in self._candidates:
            self._candidates[key] = tuple(self._scan(canon, field_kind))
        return self._candidates[key]

    def _scan(self, canon: SimpleType, field_kind: str) -> Iterator[FormDescriptor]:
        for fam in self.families:
            if fam.field != field_kind:
                continue
            for env in fam.instances(max(2 * canon.rank + 4, 8)):
                try:
                    ft = fam.absolute_type(env)
                except ValueError:
                    continue
                if TitsIndex.make(ft, []).canonical().type == canon:
                    yield fam.build(env)

    def identify(self, index: TitsIndex, field_kind: str, prefer_kind: str = "") -> FormDescriptor | None:
        """Catalog form with an equivalent index; like-named kinds are preferred,
        then forms whose own type is already canonical."""
        matches = [f for f in self.candidates(index.type, field_kind) if f.index.equivalent(index)]
        if not matches:
            return None

        def score(f: FormDescriptor):
            return (f.kind != prefer_kind, f.index.type != f.index.canonical().type, f.label)

        return min(matches, key=score)


@lru_cache(maxsize=1)
def catalog() -> Catalog:
    return Catalog.load()


def lookup_form(label: str) -> FormDescriptor:
    """Descriptor for a catalog label (real-form name or Tits index string)."""
    return catalog().parse(label)


def split_form(t: SimpleType, field_kind: str = "real") -> FormDescriptor:
    """The split form of type t, labelled from the catalog when possible."""
    idx = TitsIndex.make(t, [])
    f = catalog().identify(idx, field_kind)
    if f is not None and f.index.type == t:
        return f
    return FormDescriptor(f"{t} split", field_kind, idx, "split", "split", ())


def restricted_system(f: FormDescriptor) -> RestrictedRootSystem:
    return f.restriction.system


def satisfies_gdefine(f: FormDescriptor) -> bool:
    """g is not sl2 and the highest restricted root has multiplicity one."""
    if f.absolute_type == SimpleType("A", 1):
        return False
    if f.split_rank == 0:
        return False
    return f.restriction.highest_mult() == 1


def gdefine_reason(f: FormDescriptor) -> str | None:
    """Why (gdefine) fails, or None when it holds."""
    if f.absolute_type == SimpleType("A", 1):
        return "condition (gdefine) fails: the algebra is sl2"
    if f.split_rank == 0:
        return "condition (gdefine) fails: the form is anisotropic"
    m = f.restriction.highest_mult()
    if m != 1:
        return f"condition (gdefine) fails: highest restricted root multiplicity {m}"
    return None


def form_dimension(f: FormDescriptor) -> int:
    return build_root_system(f.absolute_type).dimension


def dimension_accounting(f: FormDescriptor) -> tuple[int, int]:
    """(sum of multiplicities + split rank + anisotropic dim, dim g)."""
    return f.restriction.system.total_mult + f.split_rank + f.anisotropic_dim, form_dimension(f)
