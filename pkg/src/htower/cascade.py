"""The cascade of Heisenberg parabolics and the resulting H-tower.

Each stage works on a connected sub-diagram of the original Dynkin
diagram.  Stage roots are lifted back to the original simple-root
coordinates so that roots from different stages can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from htower.forms import (
    FormDescriptor,
    GdefineError,
    TitsIndex,
    catalog,
    gdefine_reason,
    satisfies_gdefine,
    split_form,
)
from htower.heisenberg import LeviComponent, PreconditionError, heisenberg_parabolic, restricted_heisenberg
from htower.rootsys import Root, RootSystem, SimpleType, add, build_root_system, coroot_grading, sub

_CASE_II = {SimpleType(f, r) for f, r in (("A", 2), ("A", 3), ("B", 2), ("C", 2), ("B", 3), ("D", 4), ("G", 2))}


class ConsistencyError(AssertionError):
    pass


@lru_cache(maxsize=None)
def next_m(t: SimpleType) -> LeviComponent | None:
    """The subalgebra m of [l, l] on which the cascade continues (None when m = 0).

    Returned nodes are indices into the simple roots of ``t``.
    """
    if t == SimpleType("A", 1):
        raise PreconditionError("condition (gdefine) fails: the algebra is sl2")
    if t in _CASE_II:
        return None
    info = heisenberg_parabolic(build_root_system(t))
    comps = list(info.levi)
    if (t.family == "B" and t.rank > 3) or (t.family == "D" and t.rank > 4):
        comps = [c for c in comps if 0 not in c.nodes]
    assert len(comps) == 1, f"expected a single simple factor for {t}"
    c = comps[0]
    return LeviComponent(c.type, c.nodes)


def _lift(root: Sequence[int], nodes: Sequence[int], rank: int) -> Root:
    out = [0] * rank
    for k, c in enumerate(root):
        out[nodes[k]] = c
    return tuple(out)


@dataclass(frozen=True)
class CascadeStep:
    """One stage: its type, its nodes in the original diagram (Bourbaki
    order of the stage type), the highest root lifted to original
    coordinates, the removed simple roots and the layer dimension."""

    type: SimpleType
    nodes: tuple[int, ...]
    highest_root: Root
    removed: tuple[int, ...]
    layer_dim: int


def cascade_absolute(t: SimpleType) -> list[CascadeStep]:
    """Cascade over an algebraically closed field."""
    rs = build_root_system(t)
    if t == SimpleType("A", 1):
        raise PreconditionError("condition (gdefine) fails: the algebra is sl2")
    steps = []
    cur_t, nodes = t, tuple(range(t.rank))
    while True:
        srs = build_root_system(cur_t)
        info = heisenberg_parabolic(srs)
        lv = coroot_grading(srs, info.center_root)
        dim = len(lv.get(1, ())) + len(lv.get(2, ()))
        steps.append(
            CascadeStep(
                cur_t,
                nodes,
                _lift(info.center_root, nodes, rs.rank),
                tuple(sorted(nodes[i] for i in info.removed_simple_roots)),
                dim,
            )
        )
        m = next_m(cur_t)
        if m is None:
            break
        cur_t, nodes = m.type, tuple(nodes[i] for i in m.nodes)
    return steps


# ---------------------------------------------------------------------------
# Over F


@dataclass(frozen=True)
class FormStep:
    label: str
    type: SimpleType
    nodes: tuple[int, ...]
    highest_root: Root
    removed: tuple[int, ...]
    removed_restricted: tuple[int, ...]
    layer_dim: int

    @property
    def n_value(self) -> int:
        return (self.layer_dim - 1) // 2


@dataclass(frozen=True)
class HTower:
    form: FormDescriptor
    steps: tuple[FormStep, ...]
    successor: str | None
    stop_reason: str
    gamma_set: tuple[int, ...] = field(default=())

    @property
    def height(self) -> int:
        return len(self.steps)

    @property
    def layer_dims(self) -> list[int]:
        return [s.layer_dim for s in self.steps]

    @property
    def n_values(self) -> list[int]:
        return [s.n_value for s in self.steps]

    def to_json(self) -> dict:
        f = self.form
        return {
            "form": f.label,
            "field": f.field,
            "absolute_type": str(f.absolute_type),
            "successor": self.successor,
            "height": self.height,
            "layer_dims": self.layer_dims,
            "n_values": self.n_values,
            "gamma_set": list(self.gamma_set),
            "stop_reason": self.stop_reason,
            "steps": [
                {
                    "form": s.label,
                    "type": str(s.type),
                    "nodes": [i + 1 for i in s.nodes],
                    "highest_root": list(s.highest_root),
                    "removed_simple_roots": [i + 1 for i in s.removed],
                    "removed_restricted_roots": [i + 1 for i in s.removed_restricted],
                    "layer_dim": s.layer_dim,
                    "n": s.n_value,
                }
                for s in self.steps
            ],
        }


def label_of(index: TitsIndex, field_kind: str, prefer_kind: str = "") -> str | None:
    f = catalog().identify(index, field_kind, prefer_kind)
    return f.label if f is not None else None


def describe_index(index: TitsIndex) -> str:
    """Fallback label for an index with no catalog name: type and black nodes."""
    black = ",".join(str(i + 1) for i in sorted(index.black)) or "none"
    return f"{index.type} form (black nodes {black})"


def cascade_form(f: FormDescriptor) -> HTower:
    """Iterate the Heisenberg parabolic over F as long as condition (gdefine) holds."""
    reason = gdefine_reason(f)
    if reason:
        raise GdefineError(reason)
    orig = f.restriction
    rank = f.absolute_type.rank
    orbit_of = orig.orbit_of
    steps: list[FormStep] = []
    index, nodes, label = f.index, tuple(range(rank)), f.label
    successor: str | None = None
    removed_orbits: set[int] = set()
    while True:
        stage = FormDescriptor(label, f.field, index)
        rh = restricted_heisenberg(stage)
        srs = build_root_system(index.type)
        info = heisenberg_parabolic(srs)
        removed = tuple(sorted(nodes[i] for i in info.removed_simple_roots))
        t_orig = tuple(sorted({orbit_of[i] for i in removed}))
        removed_orbits.update(t_orig)
        steps.append(
            FormStep(label, index.type, nodes, _lift(info.center_root, nodes, rank), removed, t_orig, rh.nilradical_dim_F)
        )
        m = next_m(index.type)
        if m is None:
            stop = "m = 0"
            break
        sub_index = index.restrict(m.nodes, m.type)
        if not sub_index.white:
            stop = "m is anisotropic"
            break
        sub_label = label_of(sub_index, f.field, f.kind) or describe_index(sub_index)
        sub_form = FormDescriptor(sub_label, f.field, sub_index)
        if not satisfies_gdefine(sub_form):
            stop = f"m = {sub_label} fails condition (gdefine)"
            break
        if successor is None:
            successor = sub_label
        index, nodes, label = sub_index, tuple(nodes[i] for i in m.nodes), sub_label
    gamma = tuple(k for k in range(orig.split_rank) if k not in removed_orbits)
    return HTower(f, tuple(steps), successor, stop, gamma)


def cascade_type(t: SimpleType) -> HTower:
    """H-tower of the split form of type t."""
    return cascade_form(split_form(t))


@dataclass(frozen=True)
class ConsistencyReport:
    layer_total: int
    ngamma_dim: int
    strongly_orthogonal: bool
    layers_odd: bool
    absolute_height: int

    @property
    def ok(self) -> bool:
        return self.layer_total == self.ngamma_dim and self.strongly_orthogonal and self.layers_odd


def ngamma_dimension(f: FormDescriptor, gamma_set: Sequence[int]) -> int:
    """Sum of multiplicities of positive restricted roots outside span(gamma)."""
    sysr = f.restriction.system
    gamma = set(gamma_set)
    total = 0
    for r, m in sysr.mult.items():
        if all(x >= 0 for x in r) and any(x for k, x in enumerate(r) if k not in gamma):
            total += m
    return total


def strongly_orthogonal(rs: RootSystem, roots: Sequence[Root]) -> bool:
    for i, a in enumerate(roots):
        for b in roots[i + 1 :]:
            if rs.inner(a, b) != 0 or add(a, b) in rs.root_set or sub(a, b) in rs.root_set:
                return False
    return True


def htower_consistency(t: HTower, strict: bool = True) -> ConsistencyReport:
    """Compare the layer total with an independent count of dim n_gamma and
    check strong orthogonality of the cascade roots."""
    f = t.form
    rs = build_root_system(f.absolute_type)
    rep = ConsistencyReport(
        layer_total=sum(t.layer_dims),
        ngamma_dim=ngamma_dimension(f, t.gamma_set),
        strongly_orthogonal=strongly_orthogonal(rs, [s.highest_root for s in t.steps]),
        layers_odd=all(d % 2 == 1 and d >= 3 for d in t.layer_dims),
        absolute_height=len(cascade_absolute(f.absolute_type)),
    )
    if strict and not rep.ok:
        raise ConsistencyError(
            f"H-tower of {f.label}: layers sum to {rep.layer_total}, n_gamma has dimension {rep.ngamma_dim}, "
            f"strongly orthogonal={rep.strongly_orthogonal}, odd layers={rep.layers_odd}"
        )
    return rep


__all__ = [
    "CascadeStep",
    "ConsistencyError",
    "ConsistencyReport",
    "FormStep",
    "HTower",
    "cascade_absolute",
    "cascade_form",
    "cascade_type",
    "htower_consistency",
    "next_m",
    "ngamma_dimension",
    "strongly_orthogonal",
]
