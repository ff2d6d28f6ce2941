"""Acceptance suite: one PASS/FAIL line per criterion, with a time bound each.

Criteria 2, 3 and 9 contain table rows that disagree with the computed
cascade.  The bulk of each of those criteria is asserted in the main test,
together with the exact set of disagreeing instances; the full-match check
is a separate strict xfail so that a change in either direction is noticed.
"""

from __future__ import annotations

import re
import time
from fractions import Fraction

import pytest

from htower.cascade import cascade_form, cascade_type, htower_consistency
from htower.chevalley import ChevalleyAlgebra, chevalley_constants
from htower.classical import rank_chart, verify_all
from htower.exact import RationalSampler
from htower.expr import substitute
from htower.forms import catalog, lookup_form, satisfies_gdefine
from htower.orbits import (
    RankableSpec,
    additivity_check,
    build_ngamma,
    expected_rankable_dimension,
    orbit_dimension,
    ordim2_check,
    random_block_pair,
    rankable_functional,
)
from htower.rootsys import SimpleType, build_root_system
from htower.tables import TABLE2, TABLE3, check_table, check_table1

SPLIT_TYPES = (
    [f"A{r}" for r in range(2, 9)]
    + [f"B{r}" for r in range(2, 9)]
    + [f"C{r}" for r in range(3, 9)]
    + [f"D{r}" for r in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)
ORDIM2_TYPES = ["A4", "C3", "C4", "B4", "B5", "D5", "E6", "F4"]

DEFECTS_TABLE2 = {"2D_{7,6}^{(1)}", "2D_{9,8}^{(1)}"}
DEFECTS_TABLE3 = {"so(1,4)", "so(1,5)", "so(1,7)"}


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str, elapsed: float, bound: float) -> None:
        status = "PASS" if ok and elapsed < bound else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {n}: {detail} [{elapsed:.2f}s, bound {bound:g}s]")

    return emit


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# ------------------------------------------------------------------ 1


def test_criterion_1_table1(report):
    res, dt = timed(check_table1)
    ok = len(res) == 14 and all(good for _, good, _ in res)
    report(1, ok, f"Table I, {sum(g for _, g, _ in res)}/14 rows match at three ranks each", dt, 1)
    assert ok
    assert dt < 1


# ------------------------------------------------------------------ 2, 3


def _failing_instances(checks) -> set[str]:
    return {i.label for rc in checks for i in rc.instances if not i.ok}


@pytest.fixture(scope="module")
def table2():
    return timed(lambda: check_table(TABLE2))


@pytest.fixture(scope="module")
def table3():
    return timed(lambda: check_table(TABLE3))


def test_criterion_2_table2(report, table2):
    checks, dt = table2
    bad = _failing_instances(checks)
    n = sum(len(rc.instances) for rc in checks)
    report(2, not bad, f"Table II, {n - len(bad)}/{n} instances match; mismatched: {sorted(bad) or 'none'}", dt, 5)
    assert bad == DEFECTS_TABLE2
    assert dt < 5


@pytest.mark.xfail(strict=True, reason="printed height of the even-rank outer D rows contradicts their successor chain")
def test_criterion_2_all_rows_match(table2):
    checks, _ = table2
    assert all(rc.ok for rc in checks)


def test_criterion_3_table3(report, table3):
    checks, dt = table3
    bad = _failing_instances(checks)
    n = sum(len(rc.instances) for rc in checks)
    report(3, not bad, f"Table III, {n - len(bad)}/{n} instances match; mismatched: {sorted(bad) or 'none'}", dt, 5)
    assert bad == DEFECTS_TABLE3
    assert dt < 5


@pytest.mark.xfail(strict=True, reason="so(1,q) is listed although its highest restricted root has multiplicity q-1")
def test_criterion_3_all_rows_match(table3):
    checks, _ = table3
    assert all(rc.ok for rc in checks)


# ------------------------------------------------------------------ 4, 5, 6


@pytest.fixture(scope="module")
def built():
    return timed(lambda: {name: build_ngamma(SimpleType.parse(name)) for name in SPLIT_TYPES})


@pytest.fixture(scope="module")
def ngammas(built):
    return built[0]


def test_criterion_4_rankable_orbit_dimensions(report, ngammas, built):
    def run():
        bad, count = [], 0
        for name, n in ngammas.items():
            for k in range(len(n.centers) + 1):
                vals = tuple(Fraction(i + 2, i + 1) for i in range(k))
                got = orbit_dimension(n, rankable_functional(n, RankableSpec(k, vals)))
                # 2(n_1 + ... + n_k) from the layer sizes alone
                if got != 2 * sum((len(l) - 1) // 2 for l in n.layers[:k]) or got != expected_rankable_dimension(n, range(k)):
                    bad.append((name, k, got))
                count += 1
        return bad, count

    (bad, count), dt = timed(run)
    dt += built[1]  # construction of the algebras counts toward the bound
    report(4, not bad, f"{count} (type, k) pairs over {len(ngammas)} split types of rank <= 8", dt, 30)
    assert not bad
    assert dt < 30


def test_criterion_5_ordim2(report, ngammas):
    def run():
        bad, count = [], 0
        for name in ORDIM2_TYPES:
            n = ngammas[name]
            for k in range(1, len(n.centers) + 1):
                rep = ordim2_check(n, k, RationalSampler(100 + k))
                count += 1
                if not rep.ok:
                    bad.append((name, k, rep.failures))
        return bad, count

    (bad, count), dt = timed(run)
    report(5, not bad, f"{count} (type, k) pairs, restricted orbit dimension 2(n_1+...+n_k-c)", dt, 60)
    assert not bad
    assert dt < 60


def test_criterion_6_additivity(report, ngammas):
    def run():
        bad, count = [], 0
        for name, n in ngammas.items():
            ht = len(n.centers)
            if ht < 2:
                continue
            s = RationalSampler(6000 + SPLIT_TYPES.index(name))
            for _ in range(50):
                split = s.randint(1, ht - 1)
                upper, lower = random_block_pair(n, split, s)
                rep = additivity_check(n, upper, lower, split, s)
                count += 1
                if not rep.ok:
                    bad.append((name, rep))
        return bad, count

    (bad, count), dt = timed(run)
    report(6, not bad, f"{count} seeded functional pairs, 50 per tower of height >= 2", dt, 30)
    assert not bad
    assert dt < 30


# ------------------------------------------------------------------ 7


def test_criterion_7_matrix_lemmas(report):
    reports, dt = timed(lambda: verify_all(trials=200, seed=0))
    bad = [(r.lemma, r.group) for r in reports if not r.ok]
    fields = {r.group for r in reports}
    report(7, not bad, f"{len(reports)} lemma/group runs of 200 trials over R, C and H, {len(bad)} failing", dt, 60)
    assert {"Sp(6,R)", "SU(3,4)", "Sp(2,3)"} <= fields
    assert not bad
    assert dt < 60


# ------------------------------------------------------------------ 8


def test_criterion_8_rank_charts(report):
    def run():
        return rank_chart("SO(6,6)").as_dict(), rank_chart("SO(5,11)").as_dict()

    (a, b), dt = timed(run)
    ok = a == {0: [0], 1: [2], 2: [4, 6]} and b == {0: [0], 1: [2], 2: [4]}
    report(8, ok, f"SO(6,6) {a}; SO(5,11) {b}", dt, 10)
    assert ok
    assert dt < 10


# ------------------------------------------------------------------ 9

EXCLUDED_FAMILIES = (r"sp\(\d+,\d+\)", r"sl\(\d+,H\)")
EXCLUDED_EXCEPTIONAL = {"(f4,so(9))", "(e6,f4)"}
FULL_JACOBI_TYPES = ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"]


def _table_labels() -> list[str]:
    return [substitute(t.label, env) for t in TABLE2 + TABLE3 for env in t.instances()]


@pytest.fixture(scope="module")
def invariants(ngammas):
    def run():
        out: dict[str, list] = {"jacobi": [], "orthogonal": [], "layers": [], "exclusions": [], "admission": []}
        for name, n in ngammas.items():
            n.check_jacobi()
            if not n.antisymmetric():
                out["jacobi"].append(name)
        for name in FULL_JACOBI_TYPES:
            alg = ChevalleyAlgebra(chevalley_constants(build_root_system(SimpleType.parse(name))))
            if alg.jacobi_failures(limit=1):
                out["jacobi"].append(name)
        good = []
        for label in catalog().example_labels(6):
            f = lookup_form(label)
            admitted = satisfies_gdefine(f)
            if admitted:
                good.append(label)
            if f.field == "real" and f.absolute_type != SimpleType("A", 1) and f.split_rank:
                listed = label in EXCLUDED_EXCEPTIONAL or any(re.fullmatch(p, label) for p in EXCLUDED_FAMILIES)
                if admitted == listed:
                    out["exclusions"].append(label)
        for label in good + [f"{name} split" for name in SPLIT_TYPES]:
            tower = cascade_type(SimpleType.parse(label.split()[0])) if label.endswith("split") else cascade_form(lookup_form(label))
            rep = htower_consistency(tower, strict=False)
            if not rep.strongly_orthogonal:
                out["orthogonal"].append(label)
            if rep.layer_total != rep.ngamma_dim:
                out["layers"].append(label)
        for label in _table_labels():
            if not satisfies_gdefine(lookup_form(label)):
                out["admission"].append(label)
        return out

    return timed(run)


def test_criterion_9_structural_invariants(report, invariants):
    out, dt = invariants
    mismatches = sorted(set(out["exclusions"]) | set(out["admission"]))
    ok = not any(out.values())
    report(
        9,
        ok,
        "Jacobi, strong orthogonality and layer sums hold everywhere; gdefine mismatches: " + (", ".join(mismatches) or "none"),
        dt,
        30,
    )
    assert not out["jacobi"] and not out["orthogonal"] and not out["layers"]
    # the only disagreements are the rank-one orthogonal forms
    assert all(re.fullmatch(r"so\(1,\d+\)", l) for l in mismatches) and mismatches
    assert dt < 30


@pytest.mark.xfail(strict=True, reason="so(1,q) fails gdefine yet is admitted by the real-form table and absent from the exclusion list")
def test_criterion_9_gdefine_matches_lists(invariants):
    out, _ = invariants
    assert not out["exclusions"] and not out["admission"]
