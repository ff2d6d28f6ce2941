from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from htower.heisenberg import (
    PreconditionError,
    heisenberg_parabolic,
    levi_multiset,
    restricted_heisenberg,
    symplectic_form_rank_check,
    table1_row,
)
from htower.forms import GdefineError, lookup_form
from htower.rootsys import SimpleType, build_root_system, coroot_grading, highest_root
from htower.tables import check_table1

TYPES = [f"A{r}" for r in range(2, 8)] + [f"B{r}" for r in range(2, 8)] + [f"C{r}" for r in range(3, 8)]
TYPES += [f"D{r}" for r in range(4, 8)] + ["E6", "E7", "E8", "F4", "G2"]


@pytest.mark.parametrize("name", TYPES)
def test_g1_pairing_is_nondegenerate(name):
    rs = build_root_system(SimpleType.parse(name))
    g1 = coroot_grading(rs, highest_root(rs))[1]
    assert symplectic_form_rank_check(rs) == len(g1)
    assert symplectic_form_rank_check(rs, sign=-1) == len(g1)


@given(st.sampled_from(TYPES))
def test_levi_dimension_count(name):
    rs = build_root_system(SimpleType.parse(name))
    info = heisenberg_parabolic(rs)
    levels = coroot_grading(rs, highest_root(rs))
    assert info.g1_dim == len(levels[1])
    levi_roots = sum(build_root_system(t).dimension - t.rank for t in info.levi_derived)
    # roots of the Levi that are orthogonal to the highest root
    assert levi_roots == len(levels.get(0, ()))


def test_a1_is_rejected():
    with pytest.raises(PreconditionError):
        heisenberg_parabolic(build_root_system(SimpleType.parse("A1")))


@pytest.mark.parametrize(
    "name,levi,g1",
    [
        ("E8", "E7", "V_{ϖ7}"),
        ("G2", "A1", "V_{3ϖ1}"),
        ("A5", "A3", "V_{ϖ1}⊕V_{ϖ1}*"),
        ("D5", "A1×A3", "V_{ϖ1}⊗̂V_{ϖ2}"),
    ],
)
def test_table1_samples(name, levi, g1):
    _, got_levi, got_g1 = table1_row(SimpleType.parse(name))
    assert levi_multiset(got_levi) == levi_multiset(levi)
    assert got_g1 == g1


def test_table1_all_rows():
    assert all(ok for _, ok, _ in check_table1())


def test_restricted_heisenberg_over_reals():
    info = restricted_heisenberg(lookup_form("su(2,5)"))
    assert info.level_mult[2] == 1
    assert info.nilradical_dim_F == 1 + info.level_mult[1]
    with pytest.raises(GdefineError):
        restricted_heisenberg(lookup_form("sp(2,3)"))
