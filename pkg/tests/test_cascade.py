from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from htower.cascade import (
    cascade_absolute,
    cascade_form,
    cascade_type,
    htower_consistency,
    next_m,
    strongly_orthogonal,
)
from htower.forms import GdefineError, catalog, lookup_form, satisfies_gdefine
from htower.rootsys import SimpleType, build_root_system

SPLIT = [f"A{r}" for r in range(2, 9)] + [f"B{r}" for r in range(2, 9)] + [f"C{r}" for r in range(3, 9)]
SPLIT += [f"D{r}" for r in range(4, 9)] + ["E6", "E7", "E8", "F4", "G2"]
GOOD_FORMS = [l for l in catalog().example_labels(5) if satisfies_gdefine(lookup_form(l))]


def test_e8_layers():
    t = cascade_type(SimpleType.parse("E8"))
    assert t.layer_dims == [57, 33, 17, 9]
    assert t.n_values == [28, 16, 8, 4]
    assert lookup_form(t.successor).index.equivalent(lookup_form("(e7,su8)").index)


@pytest.mark.parametrize("name", SPLIT)
def test_split_consistency(name):
    rep = htower_consistency(cascade_type(SimpleType.parse(name)))
    assert rep.ok
    assert rep.layer_total == rep.ngamma_dim


@pytest.mark.parametrize("label", GOOD_FORMS)
def test_form_consistency(label):
    t = cascade_form(lookup_form(label))
    rep = htower_consistency(t)
    assert rep.ok
    assert 1 <= t.height <= rep.absolute_height


@given(st.sampled_from(SPLIT))
def test_absolute_cascade_roots_strongly_orthogonal(name):
    t = SimpleType.parse(name)
    rs = build_root_system(t)
    roots = [s.highest_root for s in cascade_absolute(t)]
    assert strongly_orthogonal(rs, roots)


@pytest.mark.parametrize("name,expected", [("A2", None), ("B2", None), ("A5", "A3"), ("E7", "D6"), ("E8", "E7"), ("C4", "C3")])
def test_next_m(name, expected):
    m = next_m(SimpleType.parse(name))
    assert (m.label if m else None) == expected


def test_gdefine_failure_is_reported():
    with pytest.raises(GdefineError, match="multiplicity"):
        cascade_form(lookup_form("sp(2,3)"))


def test_split_tower_height_matches_absolute_cascade_minus_a1_tail():
    for name in SPLIT:
        t = SimpleType.parse(name)
        assert cascade_type(t).height <= len(cascade_absolute(t))
