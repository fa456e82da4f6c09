import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P
from inqi.errors import DialectError, FormulaSyntaxError
from inqi.harness import GenConfig, random_formula
from inqi.syntax import (
    BOT,
    And,
    Atom,
    Box,
    Diamond,
    Dialect,
    Falsum,
    IDisj,
    Implies,
    Tensor,
    atoms_of,
    children,
    depth,
    is_standard,
    neg,
    parse_formula,
    question,
    render_formula,
    subformulas,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_question_desugars():
    assert P("?p") == IDisj(p, Implies(p, Falsum()))


def test_atom():
    assert P("p") == p


def test_dependence_desugars():
    assert P("=(p,q)") == Implies(IDisj(p, neg(p)), IDisj(q, neg(q)))


def test_dependence_many_args_and_zero_args():
    assert P("=(p,q,r)") == Implies(And(question(p), question(q)), question(r))
    assert P("=(q)") == question(q)


def test_iff_desugars():
    assert P("p <-> q") == And(Implies(p, q), Implies(q, p))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p -> q -> r", Implies(p, Implies(q, r))),
        ("p | q | r", Tensor(p, Tensor(q, r))),
        ("p \\/ q \\/ r", IDisj(p, IDisj(q, r))),
        ("p & q | r", Tensor(And(p, q), r)),
        ("p | q \\/ r", IDisj(Tensor(p, q), r)),
        ("p \\/ q -> r", Implies(IDisj(p, q), r)),
        ("~p & q", And(neg(p), q)),
        ("(p -> q) -> r", Implies(Implies(p, q), r)),
        ("bot", BOT),
        ("~~p", neg(neg(p))),
    ],
)
def test_precedence_and_associativity(text, expected):
    assert P(text) == expected


def test_modalities_need_mt0():
    with pytest.raises(DialectError):
        P("[]p")
    assert P("[]<>p", Dialect.MT0) == Box(Diamond(p))


@pytest.mark.parametrize("text", ["p &", "(p", "p q", "->", "p # q", "=(p", ""])
def test_syntax_errors_carry_position(text):
    with pytest.raises(FormulaSyntaxError) as info:
        P(text)
    assert isinstance(info.value, ValueError)
    assert 0 <= info.value.position <= len(text)


def test_syntax_error_position_points_at_offender():
    with pytest.raises(FormulaSyntaxError) as info:
        P("p & # q")
    assert info.value.position == 4


@pytest.mark.parametrize(
    "f, text",
    [
        (Implies(p, Falsum()), "~p"),
        (IDisj(p, Implies(p, Falsum())), "?p"),
        (Tensor(p, q), "p | q"),
        (IDisj(p, q), "p \\/ q"),
        (Implies(Implies(p, q), r), "(p -> q) -> r"),
        (Falsum(), "bot"),
    ],
)
def test_render(f, text):
    assert render_formula(f) == text


def test_is_standard():
    assert is_standard(P("p -> (q | r)"))
    assert not is_standard(P("?p"))
    assert not is_standard(P("=(p,q)"))
    assert not is_standard(P("[]p", Dialect.MT0))
    assert is_standard(P("[]p", Dialect.MT0), Dialect.MT0)


def test_atoms_of():
    assert atoms_of(P("?p & ?q")) == {"p", "q"}
    assert atoms_of(BOT) == frozenset()
    assert atoms_of(P("=(p,q) -> r")) == {"p", "q", "r"}


def test_subformulas_and_children():
    f = P("p -> q & r")
    assert children(f) == (p, And(q, r))
    assert set(subformulas(f)) == {f, p, And(q, r), q, r}


def _sugar_free(f):
    return all(type(g) in (Atom, Falsum, And, Tensor, IDisj, Implies, Box, Diamond) for g in subformulas(f))


@given(st.integers(0, 10**6), st.sampled_from(list(Dialect)))
@settings(max_examples=300, deadline=None)
def test_roundtrip_random(seed, dialect):
    cfg = GenConfig(seed=seed, max_depth=5, dialect=dialect)
    f = random_formula(cfg)
    back = parse_formula(render_formula(f), Dialect.MT0)
    assert back == f
    assert _sugar_free(back)


def test_random_formula_depth_bound_and_determinism():
    cfg = GenConfig(seed=1, max_depth=0)
    f = random_formula(cfg)
    assert isinstance(f, (Atom, Falsum))
    cfg = GenConfig(seed=7, max_depth=4)
    assert random_formula(cfg) == random_formula(cfg)
    for i in range(200):
        g = random_formula(cfg, random.Random(i))
        assert depth(g) <= 4
        assert atoms_of(g) <= set(cfg.atom_pool)


def test_random_formula_without_idisj_is_standard():
    cfg = GenConfig(seed=3, max_depth=5, weights={"atom": 3, "bot": 1, "and": 1, "tensor": 1, "idisj": 0, "implies": 2})
    for i in range(200):
        assert is_standard(random_formula(cfg, random.Random(i)))


def test_inqi_dialect_generates_no_modalities():
    cfg = GenConfig(max_depth=5)
    for i in range(200):
        f = random_formula(cfg, random.Random(i))
        assert not any(isinstance(g, (Box, Diamond)) for g in subformulas(f))
