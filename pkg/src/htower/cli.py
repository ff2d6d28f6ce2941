"""Command-line entry point.

    htower info SPEC          Heisenberg parabolic data
    htower cascade SPEC       the H-tower of a form
    htower tables             regenerate the three reference tables
    htower orbit SPEC         orbit dimensions of rankable functionals
    htower rankchart GROUP    new rank against old rank for a classical group
    htower verify             the classical matrix identities

Every subcommand takes ``--format {text,json,csv}`` and ``--seed``; the seed
falls back to the HTOWER_SEED environment variable, then to 0.  Exit status
is 0 when every check passed, 1 when a check failed and 2 on bad input or
an unmet precondition.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from htower import classical
from htower.cascade import cascade_form, htower_consistency
from htower.classical import ClassicalInputError, SLGroup, TypeIGroup
from htower.exact import RationalSampler
from htower.forms import CatalogMiss, FormDescriptor, GdefineError, catalog, gdefine_reason, lookup_form, split_form
from htower.heisenberg import PreconditionError, restricted_heisenberg, table1_row
from htower.orbits import RankableSpec, build_ngamma, expected_rankable_dimension, ordim2_check, orbit_dimension, rankable_functional
from htower.rootsys import RootSystemError, SimpleType
from htower.tables import TABLE2, TABLE3, check_table, check_table1

FORMATS = ("text", "json", "csv")


class SpecError(ValueError):
    """A group specification that could not be resolved."""

    def __init__(self, raw: str, position: int, suggestions: Sequence[str]) -> None:
        self.raw, self.position, self.suggestions = raw, position, list(suggestions)
        hint = f"; did you mean {', '.join(repr(s) for s in self.suggestions)}?" if self.suggestions else ""
        super().__init__(f"cannot parse {raw!r} at position {position}{hint}")


# ---------------------------------------------------------------------------
# Group specifications


_CLASSICAL = re.compile(r"^\s*(SO\*|SO|SU|U|Sp|SL)\s*\(")
_CARTAN = re.compile(r"^\s*([A-G])\s*_?\{?(\d+)\}?\s*(split)?\s*$")


@dataclass(frozen=True)
class GroupSpec:
    raw: str
    resolved: SimpleType | FormDescriptor | TypeIGroup | SLGroup

    @property
    def kind(self) -> str:
        if isinstance(self.resolved, SimpleType):
            return "cartan"
        if isinstance(self.resolved, FormDescriptor):
            return "form"
        return "classical"

    def canonical(self) -> str:
        r = self.resolved
        if isinstance(r, SimpleType):
            return str(r)
        if isinstance(r, FormDescriptor):
            return r.label
        return r.name

    def form(self) -> FormDescriptor:
        """The F-form this specification names (split form for a Cartan label)."""
        r = self.resolved
        if isinstance(r, SimpleType):
            return split_form(r)
        if isinstance(r, FormDescriptor):
            return r
        return lookup_form(classical.form_label(r))

    def simple_type(self) -> SimpleType:
        r = self.resolved
        return r if isinstance(r, SimpleType) else self.form().absolute_type


def _first_difference(a: str, b: str) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def parse_group_spec(s: str) -> GroupSpec:
    """Cartan label, real-form name, Tits-index label or classical group name."""
    raw = s
    if not s.strip():
        raise SpecError(raw, 0, ["E8", "su(2,3)", "SO(6,6)"])
    if _CLASSICAL.match(s):
        try:
            return GroupSpec(raw, classical.parse_classical(s))
        except ClassicalInputError as exc:
            raise SpecError(raw, len(s.split("(")[0]) + 1, ["SO(6,6)", "Sp(6,R)", "SU(2,3)", "SO*(8)", "SL(5,R)"]) from exc
    m = _CARTAN.match(s)
    if m:
        try:
            return GroupSpec(raw, SimpleType.parse(f"{m.group(1)}{m.group(2)}"))
        except (RootSystemError, ValueError) as exc:
            raise SpecError(raw, m.start(2), []) from exc
    try:
        return GroupSpec(raw, lookup_form(s))
    except CatalogMiss as exc:
        near = catalog().nearest(s)
        pos = max((_first_difference(s.strip(), n) for n in near), default=0)
        raise SpecError(raw, pos, near) from exc


# ---------------------------------------------------------------------------
# Output


def _emit(out, fmt: str, payload: dict, text: Callable[[], str], rows: Callable[[], tuple[list[str], list[list]]] | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        if rows is None:
            raise SpecError(f"--format {fmt}", 0, ["text", "json"])
        header, body = rows()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(body)
    else:
        out.write(text() + "\n")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HTOWER_SEED")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise SpecError(f"HTOWER_SEED={env}", 0, ["an integer"]) from exc
    return 0


# ---------------------------------------------------------------------------
# Subcommands


def cmd_info(args, out) -> int:
    spec = parse_group_spec(args.spec)
    t = spec.simple_type()
    typ, levi, g1 = table1_row(t)
    payload: dict = {"spec": spec.canonical(), "kind": spec.kind, "type": typ, "levi": levi, "g1": g1}
    if spec.kind != "cartan":
        f = spec.form()
        reason = gdefine_reason(f)
        payload.update({"form": f.label, "split_rank": f.split_rank, "gdefine": reason is None, "gdefine_reason": reason})
        if reason is None:
            rh = restricted_heisenberg(f)
            payload["nilradical_dim"] = rh.nilradical_dim_F
            payload["removed_restricted_roots"] = [i + 1 for i in rh.removed_restricted_roots]

    def text() -> str:
        lines = [f"{payload['spec']}: type {typ}", f"  Levi (derived): {levi}", f"  g1: {g1}"]
        if "form" in payload:
            lines.append(f"  form {payload['form']}, split rank {payload['split_rank']}")
            lines.append("  condition (gdefine) holds" if payload["gdefine"] else f"  {payload['gdefine_reason']}")
            if payload.get("nilradical_dim") is not None:
                lines.append(f"  Heisenberg nilradical over F: dimension {payload['nilradical_dim']}")
        return "\n".join(lines)

    _emit(out, args.format, payload, text, lambda: (list(payload), [[payload[k] for k in payload]]))
    return 0


def cmd_cascade(args, out) -> int:
    spec = parse_group_spec(args.spec)
    tower = cascade_form(spec.form())
    rep = htower_consistency(tower, strict=False)
    payload = tower.to_json()
    payload["consistency"] = {"layer_total": rep.layer_total, "ngamma_dim": rep.ngamma_dim, "strongly_orthogonal": rep.strongly_orthogonal, "ok": rep.ok}

    def text() -> str:
        lines = [
            f"{tower.form.label} ({tower.form.absolute_type}): height {tower.height}, layers {tower.layer_dims}",
            f"  successor: {tower.successor or '--'}; stops because {tower.stop_reason}",
        ]
        for i, s in enumerate(payload["steps"], 1):
            lines.append(f"  {i}. {s['form']} [{s['type']}] highest root {s['highest_root']} layer {s['layer_dim']} (n = {s['n']})")
        lines.append(f"  sum of layers {rep.layer_total} = dim n_gamma {rep.ngamma_dim}: {rep.ok}")
        return "\n".join(lines)

    def rows():
        return ["step", "form", "type", "highest_root", "layer_dim", "n"], [
            [i, s["form"], s["type"], " ".join(map(str, s["highest_root"])), s["layer_dim"], s["n"]] for i, s in enumerate(payload["steps"], 1)
        ]

    _emit(out, args.format, payload, text, rows)
    return 0 if rep.ok else 1


TABLE_HEADERS = {
    "1": ["type", "condition", "levi", "g1", "status"],
    "2": ["g_F", "condition", "m_F", "s", "status"],
    "3": ["g_F", "condition", "m_F", "s", "status"],
}


def table_rows(which: str) -> tuple[list[list[str]], bool]:
    """Rows of a regenerated table with a status column, and overall success."""
    if which == "1":
        res = check_table1()
        return [[*disp, "ok" if ok else "; ".join(bad)] for disp, ok, bad in res], all(ok for _, ok, _ in res)
    res = check_table(TABLE2 if which == "2" else TABLE3)
    return [[*rc.template.display(), rc.status()] for rc in res], all(rc.ok for rc in res)


def cmd_tables(args, out) -> int:
    which = ["1", "2", "3"] if args.which == "all" else [args.which]
    results = {w: table_rows(w) for w in which}
    payload = {
        "tables": [
            {"table": w, "columns": TABLE_HEADERS[w], "rows": rows, "ok": ok} for w, (rows, ok) in results.items()
        ]
    }

    def text() -> str:
        parts = []
        for w, (rows, ok) in results.items():
            parts.append(f"Table {w} ({'all rows verified' if ok else 'some rows FAIL'})")
            widths = [max(len(str(r[i])) for r in rows + [TABLE_HEADERS[w]]) for i in range(len(TABLE_HEADERS[w]) - 1)]
            for r in [TABLE_HEADERS[w]] + rows:
                parts.append("  " + "  ".join(str(c).ljust(widths[i]) for i, c in enumerate(r[:-1])) + "  " + str(r[-1]))
        return "\n".join(parts)

    def rows():
        if len(which) != 1:
            return ["table"] + TABLE_HEADERS["2"], [[w] + r for w, (rs, _) in results.items() for r in rs]
        return TABLE_HEADERS[which[0]], results[which[0]][0]

    _emit(out, args.format, payload, text, rows)
    return 0 if all(ok for _, ok in results.values()) else 1


def cmd_orbit(args, out) -> int:
    spec = parse_group_spec(args.spec)
    t = spec.simple_type()
    if spec.kind != "cartan" and not spec.form().is_split:
        raise PreconditionError("orbit computations are implemented for split forms only")
    n = build_ngamma(t)
    ht = len(n.centers)
    ks = [args.k] if args.k is not None else list(range(ht + 1))
    if any(k < 0 or k > ht for k in ks):
        raise PreconditionError(f"rank k must lie in 0..{ht}")
    sampler = RationalSampler(_seed(args))
    entries = []
    ok = True
    for k in ks:
        lam = rankable_functional(n, RankableSpec(k, tuple(sampler.rational(nonzero=True) for _ in range(k))))
        got, exp = orbit_dimension(n, lam), expected_rankable_dimension(n, range(k))
        e: dict = {"k": k, "orbit_dim": got, "expected": exp, "ok": got == exp}
        if ht > 1 and k >= 1:
            rep = ordim2_check(n, k, sampler)
            e["ordim2"] = {"c": rep.c, "expected": rep.expected, "translated_dims": rep.translated_dims, "ok": rep.ok, "failures": rep.failures}
            e["ok"] = e["ok"] and rep.ok
        ok = ok and e["ok"]
        entries.append(e)
    payload = {"type": str(t), "seed": _seed(args), "height": ht, "layers": [len(l) for l in n.layers], "ranks": entries, "ok": ok}

    def text() -> str:
        lines = [f"{t}: n_gamma of dimension {n.dim}, layers {payload['layers']}"]
        for e in entries:
            line = f"  k={e['k']}: orbit dimension {e['orbit_dim']} (expected {e['expected']})"
            if "ordim2" in e:
                line += f"; restricted to n_gamma^beta: {e['ordim2']['translated_dims']} (expected {e['ordim2']['expected']}, c = {e['ordim2']['c']})"
            lines.append(line + ("" if e["ok"] else "  FAIL"))
        return "\n".join(lines)

    def rows():
        return ["k", "orbit_dim", "expected", "ok"], [[e["k"], e["orbit_dim"], e["expected"], e["ok"]] for e in entries]

    _emit(out, args.format, payload, text, rows)
    return 0 if ok else 1


def cmd_rankchart(args, out) -> int:
    spec = parse_group_spec(args.spec)
    if spec.kind != "classical":
        raise SpecError(args.spec, 0, ["SO(6,6)", "SO(5,11)", "SL(5,R)"])
    chart = classical.rank_chart(spec.resolved)  # type: ignore[arg-type]

    def rows():
        return ["old_rank", "new_rank"], [[o, k] for k, v in chart.rows for o in v]

    _emit(out, args.format, chart.to_json(), chart.text, rows)
    return 0


def cmd_verify(args, out) -> int:
    seed = _seed(args)
    groups = args.group or list(classical.SUPPORTED_GROUPS)
    reports = classical.verify_all(args.trials, seed, groups, args.sl or (4, 5))
    payload = {"seed": seed, "trials": args.trials, "reports": [r.to_json() for r in reports], "ok": all(r.ok for r in reports)}

    def text() -> str:
        return "\n".join(f"{'PASS' if r.ok else 'FAIL'}  {r.lemma:<14} {r.group:<10} {r.trials} trials, {len(r.failures)} failures" for r in reports)

    def rows():
        return ["lemma", "group", "trials", "failures"], [[r.lemma, r.group, r.trials, len(r.failures)] for r in reports]

    _emit(out, args.format, payload, text, rows)
    return 0 if payload["ok"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $HTOWER_SEED, then 0)")
    p = argparse.ArgumentParser(prog="htower", description="Heisenberg parabolics, H-towers and rank.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("info", parents=[common], help="Heisenberg parabolic data")
    s.add_argument("spec")
    s.set_defaults(func=cmd_info)
    s = sub.add_parser("cascade", parents=[common], help="H-tower of a form")
    s.add_argument("spec")
    s.set_defaults(func=cmd_cascade)
    s = sub.add_parser("tables", parents=[common], help="regenerate the reference tables")
    s.add_argument("--which", choices=["1", "2", "3", "all"], default="all")
    s.set_defaults(func=cmd_tables)
    s = sub.add_parser("orbit", parents=[common], help="orbit dimensions of rankable functionals")
    s.add_argument("spec")
    s.add_argument("--k", type=int, default=None, help="rank (default: all ranks up to the height)")
    s.set_defaults(func=cmd_orbit)
    s = sub.add_parser("rankchart", parents=[common], help="new rank against old rank")
    s.add_argument("spec")
    s.set_defaults(func=cmd_rankchart)
    s = sub.add_parser("verify", parents=[common], help="classical matrix identities")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--group", action="append", help="classical group (repeatable)")
    s.add_argument("--sl", type=int, action="append", help="l for SL_{l+1}(R) (repeatable)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (SpecError, GdefineError, PreconditionError, ClassicalInputError) as exc:
        print(f"htower: {exc}", file=sys.stderr)
        return 2


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture standard output."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
