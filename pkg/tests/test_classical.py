from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import htower.classical as cl
from htower.classical import (
    C,
    ClassicalInputError,
    H,
    HomBlock,
    Quaternion,
    R,
    SLGroup,
    attainable_old_ranks,
    char_rank,
    d_rank,
    form_label,
    k1_of,
    madd,
    parse_classical,
    rank_chart,
    real_rank,
    sl_case_verify,
    verify_actionHOM,
    verify_lemmafortrans,
    verify_svs,
    verify_weilaction,
    zeros,
)
from htower.exact import RationalSampler
from htower.forms import GdefineError

small = st.fractions(min_value=-3, max_value=3, max_denominator=3)
quats = st.builds(Quaternion, small, small, small, small)

GROUPS = ["Sp(6,R)", "SU(3,4)", "SO(5,7)", "SO*(8)", "Sp(2,3)", "SU(2,2)"]
VERIFIERS = [verify_lemmafortrans, verify_actionHOM, verify_weilaction, verify_svs]


# --------------------------------------------------------------- scalars


@given(quats, quats, quats)
def test_quaternion_ring_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).conj() == y.conj() * x.conj()
    assert (x * y).norm() == x.norm() * y.norm()


@given(quats.filter(bool))
def test_quaternion_inverse(x):
    assert x * x.inverse() == Quaternion(1)
    assert x.inverse() * x == Quaternion(1)


def test_quaternions_do_not_commute():
    i, j = Quaternion(0, 1), Quaternion(0, 0, 1)
    assert i * j == Quaternion(0, 0, 0, 1)
    assert j * i == Quaternion(0, 0, 0, -1)


def test_scalar_domain_errors():
    with pytest.raises(ClassicalInputError):
        R.scalar(0, 1)
    with pytest.raises(ClassicalInputError):
        C.scalar(0, 0, 1)
    with pytest.raises(ClassicalInputError):
        cl.DivisionAlgebra("O")


@given(st.sampled_from([R, C, H]), st.integers(0, 500))
def test_d_rank_is_real_rank_over_dimension(D, seed):
    s = RationalSampler(seed)
    rows = s.randint(1, 4)
    A = [[D.random(s) if s.random() < 0.6 else D.zero() for _ in range(4)] for _ in range(rows)]
    # duplicating a row times a scalar on the left keeps the D-rank
    c = D.random(s) or D.one()
    B = A + [[c * x for x in A[0]]]
    assert real_rank(D, A) % D.dim == 0
    assert d_rank(D, B) == d_rank(D, A) <= rows


# --------------------------------------------------------------- groups


@pytest.mark.parametrize(
    "name,label,k1",
    [
        ("SO(6,6)", "so(6,6)", 2),
        ("SO(5,11)", "so(5,11)", 2),
        ("SU(2,3)", "su(2,3)", 1),
        ("Sp(6,R)", "sp_6(R)", 1),
        ("Sp(8,R)", "sp_8(R)", 1),
        ("SO*(10)", "so*(10)", 1),
        ("Sp(2,3)", "sp(2,3)", 1),
        ("SL(5,R)", "sl_5(R)", 1),
    ],
)
def test_parse_label_k1(name, label, k1):
    g = parse_classical(name)
    assert form_label(g) == label
    assert g.k1 == k1
    if not isinstance(g, SLGroup):
        assert k1_of(g) == k1


@pytest.mark.parametrize("bad", ["SO(6)", "SO*(7)", "Sp(5,R)", "SL(4,C)", "GL(3,R)", "SL(2,R)"])
def test_parse_rejects(bad):
    with pytest.raises(ClassicalInputError):
        parse_classical(bad)


@pytest.mark.parametrize("name", GROUPS)
def test_gram_is_eps_hermitian_and_random_inv_lies_in_algebra(name):
    g = parse_classical(name)
    G = g.gram
    for i in range(g.n):
        for j in range(g.n):
            assert G[i][j] == (g.D.conj(G[j][i]) if g.eps == 1 else -g.D.conj(G[j][i])) or (
                g.D.kind == "R" and G[i][j] == g.eps * G[j][i]
            )
    s = RationalSampler(3)
    X = g.random_inv(s, g.Y(2), g.Ys(2), "X").full
    assert g.in_lie_algebra(X)


@pytest.mark.parametrize("name", GROUPS)
@pytest.mark.parametrize("verifier", VERIFIERS, ids=lambda f: f.__name__)
def test_matrix_lemmas(name, verifier):
    rep = verifier(parse_classical(name), trials=25, seed=11)
    assert rep.ok, rep.failures[:1]


@pytest.mark.parametrize("l", [3, 4, 5, 6])
def test_sl_lemma(l):
    rep = sl_case_verify(l, trials=25, seed=5)
    assert rep.ok, rep.failures[:1]


def test_too_small_split_rank_is_rejected():
    with pytest.raises(ClassicalInputError, match="split rank"):
        verify_svs(parse_classical("SO(2,5)"))


# --------------------------------------------------------------- mutations


def test_wrong_transpose_is_detected(monkeypatch):
    g = parse_classical("SU(3,4)")
    real = cl.TypeIGroup.transpose

    def off_by_sign(self, T, domain, codomain):
        out = real(self, T, domain, codomain)
        return HomBlock.from_full(out.name, out.source, out.target, [[-x for x in r] for r in out.full])

    monkeypatch.setattr(cl.TypeIGroup, "transpose", off_by_sign)
    assert not verify_lemmafortrans(g, trials=3).ok


def test_wrong_character_scalar_is_detected(monkeypatch):
    g = parse_classical("SU(3,4)")
    monkeypatch.setattr(cl.TypeIGroup, "character_scalar", lambda self: self.D.one())
    assert not verify_svs(g, trials=3).ok


def test_swapped_bracket_is_detected(monkeypatch):
    g = parse_classical("Sp(6,R)")
    real = cl.commutator
    monkeypatch.setattr(cl, "commutator", lambda D, A, B: real(D, B, A))
    assert not verify_weilaction(g, trials=3).ok
    assert not verify_actionHOM(g, trials=3).ok


# --------------------------------------------------------------- characters


def test_char_rank_rejects_bad_input():
    g = parse_classical("SO(6,6)")
    A = zeros(R, g.n, g.n)
    A[g.e(1)][g.es(1)] = Fraction(1)  # symmetric, not skew
    with pytest.raises(ClassicalInputError, match="Hom"):
        char_rank(g, A)
    B = zeros(R, g.n, g.n)
    B[g.es(1)][g.e(1)] = Fraction(1)
    with pytest.raises(ClassicalInputError, match="must map"):
        char_rank(g, B)


def test_char_rank_zero():
    g = parse_classical("SU(2,3)")
    assert char_rank(g, zeros(C, g.n, g.n)) == 0


@given(st.sampled_from(["SO(6,6)", "SO(8,8)", "SU(3,3)", "Sp(8,R)", "SO*(12)"]), st.integers(0, 400))
def test_char_rank_is_additive_on_disjoint_blocks(name, seed):
    g = parse_classical(name)
    s = RationalSampler(seed)
    cut = s.randint(1, g.r - 1)
    lo, hi = range(1, cut + 1), range(cut + 1, g.r + 1)
    A1 = g.random_inv(s, [g.es(i) for i in lo], [g.e(i) for i in lo]).full
    A2 = g.random_inv(s, [g.es(i) for i in hi], [g.e(i) for i in hi]).full
    assert char_rank(g, madd(A1, A2)) == char_rank(g, A1) + char_rank(g, A2)


# --------------------------------------------------------------- charts


def test_reference_example_charts():
    assert rank_chart("SO(6,6)").as_dict() == {0: [0], 1: [2], 2: [4, 6]}
    assert rank_chart("SO(5,11)").as_dict() == {0: [0], 1: [2], 2: [4]}


@pytest.mark.parametrize("name", ["SO(6,6)", "SO(5,11)", "SO(4,9)", "Sp(6,R)", "SU(2,3)", "SU(3,3)", "SO*(10)", "SL(5,R)", "SL(6,R)"])
def test_chart_shape(name):
    ch = rank_chart(name)
    d = ch.as_dict()
    assert sorted(d) == list(range(ch.height + 1))
    olds = [o for k in sorted(d) for o in d[k]]
    assert olds == sorted(olds) and len(olds) == len(set(olds))
    assert olds == attainable_old_ranks(parse_classical(name))
    for k in range(ch.height):
        assert d[k] == [k * ch.k1]


def test_sl_chart_parity():
    # even l: the top old rank equals the height; odd l: it exceeds it by one
    for n in (5, 6, 7, 8):
        ch = rank_chart(f"SL({n},R)")
        l = n - 1
        assert max(ch.as_dict()[ch.height]) == ch.height + (l % 2)


def test_chart_refuses_gdefine_failure():
    with pytest.raises(GdefineError):
        rank_chart("Sp(2,3)")
