"""Heisenberg parabolics: the grading of a root system by the coroot of its
highest root, over the algebraic closure and over the base field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from htower.chevalley import chevalley_constants
from htower.exact import rank
from htower.forms import FormDescriptor, GdefineError, gdefine_reason
from htower.rootsys import Root, RootSystem, RootSystemError, SimpleType, add, build_root_system, coroot_grading, highest_root


class PreconditionError(ValueError):
    """Input violates a stated precondition."""


@dataclass(frozen=True)
class LeviComponent:
    """A simple factor of the Levi; ``nodes`` are 0-based simple-root indices
    in Bourbaki order of ``type``.

    In type B the factor through the short end is read as an orthogonal
    algebra B_k (B1 = so(3), B2 long root first), so its weights are in
    orthogonal conventions; ``name`` records that reading.
    """

    type: SimpleType
    nodes: tuple[int, ...]
    name: str = ""
    weight_nodes: tuple[int, ...] = ()
    weight_scale: int = 1

    @property
    def label(self) -> str:
        return self.name or str(self.type)


@dataclass(frozen=True)
class HeisenbergParabolicInfo:
    simple_type: SimpleType
    removed_simple_roots: tuple[int, ...]
    levi: tuple[LeviComponent, ...]
    g1_dim: int
    g1_highest_weights: tuple[tuple[tuple[int, ...], ...], ...]
    center_root: Root

    @property
    def levi_derived(self) -> tuple[SimpleType, ...]:
        return tuple(c.type for c in self.levi)

    def levi_label(self) -> str:
        return "×".join(c.label for c in self.levi) or "0"

    def g1_label(self) -> str:
        return render_g1(self.levi_derived, self.g1_highest_weights)


def _levi_component(rs: RootSystem, t: SimpleType, nodes: tuple[int, ...]) -> LeviComponent:
    last = rs.rank - 1
    if rs.simple_type.family == "B" and last in nodes and len(nodes) <= 2:
        ordered = tuple(sorted(nodes))
        if len(nodes) == 1:
            # so(3): the vector representation has A1 highest weight 2
            return LeviComponent(t, nodes, "A1", ordered, 2)
        return LeviComponent(t, nodes, "B2", ordered)
    return LeviComponent(t, nodes)


def _require_not_a1(t: SimpleType) -> None:
    if t == SimpleType("A", 1):
        raise PreconditionError("condition (gdefine) fails: the algebra is sl2")


def heisenberg_parabolic(rs: RootSystem) -> HeisenbergParabolicInfo:
    """Heisenberg parabolic of the complex (split) algebra with root system rs."""
    _require_not_a1(rs.simple_type)
    if build_root_system(rs.simple_type) == rs:
        return _heisenberg_of_type(rs.simple_type)
    return _heisenberg(rs)


@lru_cache(maxsize=None)
def _heisenberg_of_type(t: SimpleType) -> HeisenbergParabolicInfo:
    return _heisenberg(build_root_system(t))


def _heisenberg(rs: RootSystem) -> HeisenbergParabolicInfo:
    beta = highest_root(rs)
    removed = tuple(i for i in range(rs.rank) if rs.inner(rs.simple(i), beta) != 0)
    levi_nodes = [i for i in range(rs.rank) if i not in removed]
    levi = tuple(_levi_component(rs, t, nodes) for t, nodes in rs.identify(levi_nodes))
    levels = coroot_grading(rs, beta)
    level1 = levels.get(1, frozenset())
    # Levi-highest roots of level 1: adding any Levi simple root leaves the root set
    tops = [a for a in level1 if not any(add(a, rs.simple(j)) in rs.root_set for j in levi_nodes)]
    weights = []
    for a in tops:
        w = tuple(tuple(int(rs.pairing(a, rs.simple(j))) // c.weight_scale for j in (c.weight_nodes or c.nodes)) for c in levi)
        weights.append(w)
    weights.sort(key=lambda w: tuple(x for comp in w for x in comp), reverse=True)
    return HeisenbergParabolicInfo(rs.simple_type, removed, levi, len(level1), tuple(weights), beta)


# ---------------------------------------------------------------------------
# Rendering of Levi module labels


def _dual_perm(t: SimpleType) -> tuple[int, ...]:
    """Permutation of fundamental weights induced by -w0."""
    l = t.rank
    ident = tuple(range(l))
    if t.family == "A":
        return tuple(reversed(ident))
    if t.family == "D" and l % 2 == 1:
        p = list(ident)
        p[l - 2], p[l - 1] = l - 1, l - 2
        return tuple(p)
    if t.family == "E" and l == 6:
        return (5, 1, 4, 3, 2, 0)
    return ident


def dual_weight(types: Sequence[SimpleType], w: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    out = []
    for t, comp in zip(types, w):
        p = _dual_perm(t)
        d = [0] * len(comp)
        for i, c in enumerate(comp):
            d[p[i]] = c
        out.append(tuple(d))
    return tuple(out)


def render_weight(comp: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(comp):
        if c:
            terms.append(f"{'' if c == 1 else c}ϖ{i + 1}")
    return "V_{" + ("+".join(terms) or "0") + "}"


def _render_summand(w: Sequence[Sequence[int]]) -> str:
    if not w:
        return "V_{0}"
    return "⊗̂".join(render_weight(c) for c in w)


def render_g1(types: Sequence[SimpleType], weights: Sequence) -> str:
    """Label of g1 as a Levi module; a summand dual to the first is written with a star."""
    parts: list[str] = []
    for k, w in enumerate(weights):
        if k > 0 and dual_weight(types, w) == tuple(weights[0]):
            parts.append(_render_summand(weights[0]) + "*")
        else:
            parts.append(_render_summand(w))
    return "⊕".join(parts)


# ---------------------------------------------------------------------------
# Symplectic form on g1


def symplectic_form_rank_check(rs: RootSystem, sign: int = 1) -> int:
    """Rank of the pairing <X_a, X_b> defined by [X_a, X_b] = <X_a, X_b> X_beta on g1."""
    _require_not_a1(rs.simple_type)
    beta = highest_root(rs)
    level1 = sorted(coroot_grading(rs, beta).get(1, frozenset()))
    N = chevalley_constants(rs, sign)
    rows = []
    for a in level1:
        row = {}
        for j, b in enumerate(level1):
            if add(a, b) == beta:
                row[j] = Fraction(N(a, b))
        rows.append(row)
    return rank(rows)


# ---------------------------------------------------------------------------
# Over the base field


@dataclass(frozen=True)
class RestrictedHeisenbergInfo:
    form: str
    highest_restricted_root: Root
    removed_restricted_roots: tuple[int, ...]
    level_mult: dict[int, int]
    nilradical_dim_F: int

    @property
    def n_value(self) -> int:
        return (self.nilradical_dim_F - 1) // 2


def restricted_heisenberg(f: FormDescriptor) -> RestrictedHeisenbergInfo:
    """Heisenberg parabolic of the F-form f, read off the restricted roots."""
    reason = gdefine_reason(f)
    if reason:
        raise GdefineError(reason)
    sysr = f.restriction.system
    eta = f.restriction.highest
    removed = tuple(k for k in range(sysr.rank) if sysr.inner(_unit(k, sysr.rank), eta) != 0)
    levels: dict[int, int] = {}
    for r, m in sysr.mult.items():
        lv = sysr.level(r, eta)
        assert lv.denominator == 1 and abs(lv) <= 2
        levels[int(lv)] = levels.get(int(lv), 0) + m
    assert levels.get(2) == 1
    dim = levels.get(1, 0) + levels.get(2, 0)
    return RestrictedHeisenbergInfo(f.label, eta, removed, levels, dim)


def _unit(k: int, n: int) -> tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


# ---------------------------------------------------------------------------
# Table I


TABLE1_TEMPLATES: list[tuple[str, str, str, str]] = [
    # (type template, condition, Levi template, g1 label)
    ("A<l>", "l >= 3", "A<l-2>", "V_{ϖ1}⊕V_{ϖ1}*"),
    ("B2", "", "A1", "V_{ϖ1}"),
    ("B3", "", "A1×A1", "V_{ϖ1}⊗̂V_{ϖ1}"),
    ("B<l>", "l >= 4", "A1×B<l-2>", "V_{ϖ1}⊗̂V_{ϖ1}"),
    ("C2", "", "A1", "V_{ϖ1}"),
    ("C<l>", "l >= 3", "C<l-1>", "V_{ϖ1}"),
    ("D4", "", "A1×A1×A1", "V_{ϖ1}⊗̂V_{ϖ1}⊗̂V_{ϖ1}"),
    ("D5", "", "A1×A3", "V_{ϖ1}⊗̂V_{ϖ2}"),
    ("D<l>", "l >= 6", "A1×D<l-2>", "V_{ϖ1}⊗̂V_{ϖ1}"),
    ("E6", "", "A5", "V_{ϖ3}"),
    ("E7", "", "D6", "V_{ϖ6}"),
    ("E8", "", "E7", "V_{ϖ7}"),
    ("F4", "", "C3", "V_{ϖ3}"),
    ("G2", "", "A1", "V_{3ϖ1}"),
]


def table1_row(t: SimpleType) -> tuple[str, str, str]:
    info = heisenberg_parabolic(build_root_system(t))
    return str(t), info.levi_label(), info.g1_label()


def levi_multiset(label: str) -> list[str]:
    """Levi label as a sorted multiset, with B2 written as C2."""
    return sorted("C2" if p == "B2" else p for p in label.split("×"))


__all__ = [
    "HeisenbergParabolicInfo",
    "LeviComponent",
    "PreconditionError",
    "RestrictedHeisenbergInfo",
    "RootSystemError",
    "TABLE1_TEMPLATES",
    "heisenberg_parabolic",
    "levi_multiset",
    "render_g1",
    "restricted_heisenberg",
    "symplectic_form_rank_check",
    "table1_row",
]
