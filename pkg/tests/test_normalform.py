import random

import pytest

from conftest import P
from inqi.errors import DialectError, ResolutionExplosion
from inqi.harness import GenConfig, random_formula
from inqi.normalform import (
    box_translation,
    count_resolutions,
    negative_translation,
    normal_form,
    resolutions,
    standard_variant,
)
from inqi.syntax import BOT, Dialect, IDisj, is_standard, neg, render_formula


def test_resolutions_of_question():
    assert resolutions(P("?p")) == [P("p"), P("~p")]


def test_resolutions_of_conditional_question():
    assert resolutions(P("p -> ?q")) == [P("p -> q"), P("p -> ~q")]


def test_resolutions_of_standard_formula():
    for s in ["p", "bot", "p & q -> r | ~p", "~~p"]:
        assert resolutions(P(s)) == [P(s)]


def test_resolutions_order_and_dedup():
    assert resolutions(P("p \\/ p \\/ q")) == [P("p"), P("q")]
    assert len(resolutions(P("p \\/ p \\/ q"), dedup=False)) == 3
    # choice functions follow product order over the antecedent's resolutions
    assert [render_formula(a) for a in resolutions(P("?p -> ?q"))] == [
        "(p -> q) & (~p -> q)",
        "(p -> q) & (~p -> ~q)",
        "(p -> ~q) & (~p -> q)",
        "(p -> ~q) & (~p -> ~q)",
    ]


def test_resolution_counts_from_recurrence():
    # frozen from an independent unfolding of the definition
    assert count_resolutions(P("?p -> ?q")) == 4
    assert count_resolutions(P("?p & ?q -> ?r")) == 16
    assert len(resolutions(P("?p & ?q -> ?r"))) == 16


def test_resolution_cap():
    f = P("?p & ?q & ?r & ?s -> ?t")  # 2^16 resolutions
    assert count_resolutions(f) == 2**16
    with pytest.raises(ResolutionExplosion):
        resolutions(f)
    assert len(resolutions(P("?p & ?q -> ?r"), cap=16)) == 16
    with pytest.raises(ResolutionExplosion):
        resolutions(P("?p & ?q -> ?r"), cap=15)


def test_resolutions_reject_modalities():
    with pytest.raises(DialectError):
        resolutions(P("[]p", Dialect.MT0))


def test_normal_form():
    assert normal_form(P("?p")) == P("p \\/ ~p")
    assert normal_form(P("p -> ?q")) == P("(p -> q) \\/ (p -> ~q)")
    f = P("p & q")
    assert normal_form(f) is f


def test_standard_variant():
    assert standard_variant(P("p \\/ q")) == P("p | q")
    assert standard_variant(P("p -> q")) == P("p -> q")
    assert standard_variant(P("?p")) == P("p | ~p")


def test_negative_translation():
    assert negative_translation(P("p & q")) == P("~~(p & q)")
    assert negative_translation(P("?p")) == IDisj(neg(neg(P("p"))), neg(neg(neg(P("p")))))
    assert negative_translation(BOT) == P("~~bot")


def test_box_translation():
    M = Dialect.MT0
    assert box_translation(P("p")) == P("[]p", M)
    assert box_translation(P("p -> q")) == P("[]([]p -> []q)", M)
    assert box_translation(P("p \\/ q")) == P("[]p \\/ []q", M)
    assert box_translation(BOT) == P("[]bot", M)
    assert box_translation(P("~p")) == P("[]([]p -> []bot)", M)
    with pytest.raises(DialectError):
        box_translation(P("<>p", M))


def test_random_resolutions_are_standard_and_counted():
    rng = random.Random(1)
    cfg = GenConfig(max_depth=4)
    for _ in range(500):
        f = random_formula(cfg, rng)
        if count_resolutions(f) > 10_000:
            continue
        raw = resolutions(f, dedup=False)
        res = resolutions(f)
        assert len(raw) == count_resolutions(f)
        assert all(is_standard(a) for a in res)
        # dedup happens at every level, so conjunctions may shrink as well
        assert len(set(res)) == len(res) <= len(raw)
