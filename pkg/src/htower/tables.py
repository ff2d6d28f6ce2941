"""Regeneration of the three reference tables.

Each table row is a template: a form label with integer parameters, an
admissibility condition, the expected successor and height.  A row is
verified by instantiating it at a few parameter values, running the
cascade and comparing.  Labels are compared up to isomorphism of the
resolved forms (``B_{2,2}`` and ``C_{2,2}`` name the same form).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from htower.cascade import cascade_form
from htower.expr import evaluate, substitute
from htower.forms import CatalogMiss, GdefineError, lookup_form
from htower.heisenberg import TABLE1_TEMPLATES, levi_multiset, table1_row
from htower.rootsys import SimpleType

_SUPER = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def pretty_label(label: str) -> str:
    """Leading inner/outer tag as a superscript: 2A_{3,1}^{(1)} -> ²A_{3,1}^{(1)}."""
    m = re.match(r"^(\d)([A-G]_)", label)
    if m:
        return m.group(1).translate(_SUPER) + label[1:]
    return label


def _display(template: str) -> str:
    return re.sub(r"<([^>]*)>", lambda m: m.group(1).replace(" ", "").replace("*", ""), template)


@dataclass(frozen=True)
class RowTemplate:
    label: str
    succ: str  # "--" when the cascade stops after the first step
    height: str  # expression in the parameters
    height_display: str = ""
    params: tuple[str, ...] = ()
    where: str = ""
    start: tuple[int, ...] = ()
    condition: str = ""

    def display(self) -> tuple[str, str, str, str]:
        succ = "--" if self.succ == "--" else pretty_label(_display(self.succ))
        return pretty_label(_display(self.label)), self.condition, succ, self.height_display or self.height

    def instances(self, offsets=(0, 1, 3)) -> list[dict[str, int]]:
        """Smallest legal parameters, then the last parameter raised by each offset."""
        if not self.params:
            return [{}]
        out = []
        for off in offsets:
            vals = list(self.start)
            vals[-1] += off
            env = dict(zip(self.params, vals))
            assert evaluate(self.where, env), f"{self.label}: {env} not admissible"
            out.append(env)
        return out


def _row(label, succ, height, params="", where="", start=(), condition="", hd=""):
    return RowTemplate(label, succ, str(height), hd, tuple(params.split()) if params else (), where, tuple(start), condition)


TABLE2: list[RowTemplate] = [
    _row("A_{2,2}", "--", 1),
    _row("A_{3,3}", "--", 1),
    _row("A_{<r>,<r>}", "A_{<r-2>,<r-2>}", "r // 2", "r", "r >= 4", (4,), "r≥4", "⌊r/2⌋"),
    _row("2A_{3,2}^{(1)}", "--", 1),
    _row("2A_{<2*r-1>,<r>}^{(1)}", "2A_{<2*r-3>,<r-1>}^{(1)}", "r - 1", "r", "r >= 3", (3,), "r≥3", "r−1"),
    _row("2A_{2,1}^{(1)}", "--", 1),
    _row("2A_{<2*r>,<r>}^{(1)}", "2A_{<2*r-2>,<r-1>}^{(1)}", "r", "r", "r >= 2", (2,), "r≥2"),
    _row("2A_{3,1}^{(1)}", "--", 1),
    _row("2A_{<2*r+1>,<r>}^{(1)}", "2A_{<2*r-1>,<r-1>}^{(1)}", "r", "r", "r >= 2", (2,), "r≥2"),
    _row("B_{3,3}", "--", 1),
    _row("B_{4,4}", "C_{2,2}", 2),
    _row("B_{<r>,<r>}", "B_{<r-2>,<r-2>}", "r // 2", "r", "r >= 4", (4,), "r≥4", "⌊r/2⌋"),
    _row("B_{3,2}", "--", 1),
    _row("B_{4,3}", "--", 1),
    _row("B_{<r>,<r-1>}", "B_{<r-2>,<r-3>}", "(r - 1) // 2", "r", "r >= 5", (5,), "r≥5", "⌊(r−1)/2⌋"),
    _row("C_{2,2}", "--", 1),
    _row("C_{<r>,<r>}", "C_{<r-1>,<r-1>}", "r - 1", "r", "r >= 3", (3,), "r≥3", "r−1"),
    _row("1D_{4,4}^{(1)}", "--", 1),
    _row("1D_{5,5}^{(1)}", "A_{3,3}", 2),
    _row("1D_{<r>,<r>}^{(1)}", "1D_{<r-2>,<r-2>}^{(1)}", "(r - 1) // 2", "r", "r >= 6", (6,), "r≥6", "⌊(r−1)/2⌋"),
    _row("1D_{4,2}^{(1)}", "--", 1),
    _row("1D_{5,3}^{(1)}", "--", 1),
    _row("1D_{<r+2>,<r>}^{(1)}", "1D_{<r>,<r-2>}^{(1)}", "r // 2", "r", "r >= 4", (4,), "r≥4", "⌊r/2⌋"),
    _row("2D_{4,3}^{(1)}", "--", 1),
    _row("2D_{5,4}^{(1)}", "2A_{3,2}^{(1)}", 2),
    _row("2D_{<r+1>,<r>}^{(1)}", "2D_{<r-1>,<r-2>}^{(1)}", "(r - 1) // 2", "r", "r >= 5", (5,), "r≥5", "⌊(r−1)/2⌋"),
    _row("1D_{4,2}^{(2)}", "--", 1),
    _row("1D_{<2*r>,<r>}^{(2)}", "1D_{<2*r-2>,<r-1>}^{(2)}", "r - 1", "r", "r >= 3", (3,), "r≥3", "r−1"),
    _row("1D_{5,1}^{(2)}", "--", 1),
    _row("1D_{<2*r+3>,<r>}^{(2)}", "1D_{<2*r+1>,<r-1>}^{(2)}", "r", "r", "r >= 2", (2,), "r≥2"),
    _row("2D_{5,2}^{(2)}", "2A_{3,1}^{(1)}", 2),
    _row("2D_{<2*r+1>,<r>}^{(2)}", "2D_{<2*r-1>,<r-1>}^{(2)}", "r", "r", "r >= 3", (3,), "r≥3"),
    _row("2D_{4,1}^{(2)}", "--", 1),
    _row("2D_{<2*r+2>,<r>}^{(2)}", "2D_{<2*r>,<r-1>}^{(2)}", "r", "r", "r >= 3", (3,), "r≥3"),
    _row("3D_{4,2}^2", "--", 1),
    _row("6D_{4,2}^2", "--", 1),
    _row("1E_{6,2}^{16}", "--", 1),
    _row("1E_{6,6}^0", "A_{5,5}", 3),
    _row("2E_{6,4}^2", "2A_{5,3}^{(1)}", 3),
    _row("E_{7,4}^9", "1D_{6,3}^{(2)}", 3),
    _row("E_{7,7}^0", "1D_{6,6}^{(1)}", 3),
    _row("E_{8,8}^0", "E_{7,7}^0", 4),
    _row("F_{4,4}^0", "C_{3,3}", 3),
    _row("G_{2,2}^0", "--", 1),
]

TABLE3: list[RowTemplate] = [
    _row("sl_3(R)", "--", 1),
    _row("sl_4(R)", "--", 1),
    _row("sl_<n>(R)", "sl_<n-2>(R)", "(n - 1) // 2", "n", "n >= 5", (5,), "n≥5", "⌊(n−1)/2⌋"),
    _row("su(1,<q>)", "--", 1, "q", "q > 1", (2,), "q>1"),
    _row("su(2,2)", "--", 1),
    _row("su(<r>,<q>)", "su(<r-1>,<q-1>)", "r", "r q", "2 <= r < q", (2, 3), "2≤r<q"),
    _row("su(<q>,<q>)", "su(<q-1>,<q-1>)", "q - 1", "q", "q >= 3", (3,), "3≤q", "q−1"),
    _row("so(1,<q>)", "--", 1, "q", "q >= 4", (4,), "q≥4"),
    _row("so(2,<q>)", "--", 1, "q", "q >= 3", (3,), "q≥3"),
    _row("so(3,<q>)", "--", 1, "q", "q >= 3", (3,), "q≥3"),
    _row("so(4,4)", "--", 1),
    _row("so(4,<q>)", "so(2,<q-2>)", 2, "q", "q >= 5", (5,), "q≥5"),
    _row("so(<r>,<q>)", "so(<r-2>,<q-2>)", "r // 2", "r q", "5 <= r < q", (5, 6), "5≤r<q", "⌊r/2⌋"),
    _row("so(<q>,<q>)", "so(<q-2>,<q-2>)", "(q - 1) // 2", "q", "q >= 5", (5,), "5≤q", "⌊(q−1)/2⌋"),
    _row("sp_4(R)", "--", 1),
    _row("sp_<2*n>(R)", "sp_<2*n-2>(R)", "n - 1", "n", "n >= 3", (3,), "n≥3", "n−1"),
    _row("so*(6)", "--", 1),
    _row("so*(8)", "--", 1),
    _row("so*(<2*r>)", "so*(<2*r-4>)", "(r - 1) // 2", "r", "r >= 5", (5,), "r≥5", "⌊(r−1)/2⌋"),
    _row("(e6,sp4)", "sl_6(R)", 3),
    _row("(e6,su6×su2)", "su(3,3)", 3),
    _row("(e6,so(10)×u(1))", "su(1,5)", 2),
    _row("(e7,su8)", "so(6,6)", 3),
    _row("(e7,so(12)×su2)", "so*(12)", 3),
    _row("(e7,e6×u(1))", "so(2,10)", 2),
    _row("(e8,so(12))", "(e7,su8)", 4),
    _row("(e8,e7×su2)", "(e7,e6×u(1))", 3),
    _row("(f4,sp3×su2)", "sp_6(R)", 3),
    _row("(g2,su2×su2)", "--", 1),
]


@dataclass
class InstanceCheck:
    label: str
    expected_successor: str
    expected_height: int
    successor: str | None = None
    height: int | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        if self.error:
            return False
        if self.height != self.expected_height:
            return False
        if self.expected_successor == "--":
            return self.successor is None
        if self.successor is None:
            return False
        return lookup_form(self.successor).index.equivalent(lookup_form(self.expected_successor).index)


@dataclass
class RowCheck:
    template: RowTemplate
    instances: list[InstanceCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.instances)

    def status(self) -> str:
        if self.ok:
            return "ok"
        bad = [i for i in self.instances if not i.ok]
        return "; ".join(f"{i.label}: {i.error or f'got {i.successor or chr(45) * 2}, s={i.height}'}" for i in bad)


def check_instance(template: RowTemplate, env: dict[str, int]) -> InstanceCheck:
    label = substitute(template.label, env)
    succ = template.succ if template.succ == "--" else substitute(template.succ, env)
    chk = InstanceCheck(label, succ, int(evaluate(template.height, env)))
    try:
        tower = cascade_form(lookup_form(label))
    except (GdefineError, CatalogMiss) as exc:
        chk.error = str(exc)
        return chk
    chk.successor = tower.successor
    chk.height = tower.height
    return chk


def check_table(rows: list[RowTemplate], offsets=(0, 1, 3)) -> list[RowCheck]:
    out = []
    for t in rows:
        rc = RowCheck(t)
        for env in t.instances(offsets):
            rc.instances.append(check_instance(t, env))
        out.append(rc)
    return out


# ---------------------------------------------------------------------------
# Table I


def table1_rows() -> list[tuple[str, str, str, str]]:
    """Display rows (type, condition, Levi, g1) of Table I."""
    out = []
    for ttmpl, where, levi, g1 in TABLE1_TEMPLATES:
        cond = where.replace(" ", "").replace(">=", "≥")
        out.append((_display(ttmpl), cond, _display(levi), g1))
    return out


def check_table1(offsets=(0, 1, 3)) -> list[tuple[tuple[str, str, str, str], bool, list[str]]]:
    """Verify each Table I row at its smallest, +1 and +3 ranks."""
    results = []
    for (ttmpl, where, levi, g1), disp in zip(TABLE1_TEMPLATES, table1_rows()):
        envs = [{}]
        if where:
            lo = int(where.split(">=")[1])
            envs = [{"l": lo + o} for o in offsets]
        bad = []
        for env in envs:
            t = SimpleType.parse(substitute(ttmpl, env))
            _, got_levi, got_g1 = table1_row(t)
            exp_levi = substitute(levi, env)
            if levi_multiset(got_levi) != levi_multiset(exp_levi) or got_g1 != g1:
                bad.append(f"{t}: got {got_levi} / {got_g1}, expected {exp_levi} / {g1}")
        results.append((disp, not bad, bad))
    return results


TABLES = {"1": None, "2": TABLE2, "3": TABLE3}
