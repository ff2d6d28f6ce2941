from __future__ import annotations

import re

import pytest
from hypothesis import given, strategies as st

from htower.forms import (
    CatalogMiss,
    catalog,
    dimension_accounting,
    gdefine_reason,
    lookup_form,
    satisfies_gdefine,
    split_form,
)
from htower.rootsys import SimpleType

ALL_LABELS = catalog().example_labels(6)
REAL_LABELS = [l for l in ALL_LABELS if lookup_form(l).field == "real"]

# Real forms excluded by condition (gdefine) beyond sl2: f4(-20), e6(-26),
# sp(p,q) and sl(n,H).
EXCLUDED_FAMILIES = (r"sp\(\d+,\d+\)", r"sl\(\d+,H\)")
EXCLUDED_EXCEPTIONAL = {"(f4,so(9))", "(e6,f4)"}


def is_sl2(label: str) -> bool:
    return lookup_form(label).absolute_type == SimpleType("A", 1)


def is_rank_one_orthogonal(label: str) -> bool:
    return re.fullmatch(r"so\(1,\d+\)", label) is not None


@pytest.mark.parametrize("label", ALL_LABELS)
def test_dimension_accounting(label):
    got, dim = dimension_accounting(lookup_form(label))
    assert got == dim


@pytest.mark.parametrize("label", ALL_LABELS)
def test_two_gdefine_routes_agree(label):
    f = lookup_form(label)
    if is_sl2(label) or f.split_rank == 0:
        assert not satisfies_gdefine(f)
        return
    assert satisfies_gdefine(f) == f.restriction.highest_is_fixed()


@pytest.mark.parametrize("label", REAL_LABELS)
def test_gdefine_exclusions_over_the_reals(label):
    f = lookup_form(label)
    listed = label in EXCLUDED_EXCEPTIONAL or any(re.fullmatch(p, label) for p in EXCLUDED_FAMILIES)
    if is_sl2(label):
        assert not satisfies_gdefine(f)
    elif is_rank_one_orthogonal(label):
        # not on the exclusion list, yet the highest root of so(1,q) restricts
        # with multiplicity q-1 (recorded in the decisions ledger)
        assert not satisfies_gdefine(f)
    else:
        assert satisfies_gdefine(f) == (not listed), gdefine_reason(f)


def test_reasons_are_explicit():
    assert "sl2" in gdefine_reason(lookup_form("sl_2(R)"))
    assert "multiplicity 3" in gdefine_reason(lookup_form("sp(1,3)"))
    assert "multiplicity 8" in gdefine_reason(lookup_form("(e6,f4)"))
    assert gdefine_reason(lookup_form("su(2,5)")) is None


@given(st.sampled_from(["A3", "B4", "C3", "D5", "E6", "E7", "F4", "G2"]))
def test_split_forms_are_split(name):
    f = split_form(SimpleType.parse(name))
    assert f.is_split
    assert f.split_rank == f.absolute_type.rank
    assert all(m == 1 for m in f.restriction.system.mult.values())


def test_lookup_miss_suggests_neighbours():
    with pytest.raises(CatalogMiss) as info:
        lookup_form("so(2,x)")
    assert "so(2," in str(info.value)


def test_labels_resolve_up_to_isomorphism():
    assert lookup_form("B_{2,2}").index.equivalent(lookup_form("C_{2,2}").index)
    assert lookup_form("(e8,so(12))").index.equivalent(lookup_form("e8(8)").index)


def test_padic_forms_present():
    padic = [l for l in ALL_LABELS if lookup_form(l).field == "padic"]
    assert "1E_{6,2}^{28}" in padic and "G_{2,2}^0" in padic
