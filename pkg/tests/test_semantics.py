import itertools
import random

import pytest

from conftest import P
from inqi.errors import DialectError, SizeLimit
from inqi.harness import DEPENDENCE_INSTANCES, GenConfig, dependence_forms, random_formula, random_model
from inqi.models import Kind, KripkeModel, enumerate_models, r_image
from inqi.semantics import (
    Evaluator,
    TruthValue,
    dependence_atom_mt0,
    is_truth_conditional_on,
    kripke_truth,
    naive_supports,
    supporting_teams,
    supports,
    supports_mt0,
    truth_at,
    truth_set,
    truth_value,
)
from inqi.syntax import Dialect, Implies, is_standard

MT0 = Dialect.MT0


def T(m, *names):
    return m.team(names)


# ---------------------------------------------------------------- fixtures


def test_support_facts_fix_a(fix_a):
    t1, t2, t3 = T(fix_a, "w2", "w3"), T(fix_a, "w2", "w4"), T(fix_a, "w5")
    assert supports(fix_a, t3, P("q"))
    assert supports(fix_a, t3, P("~p"))
    assert not supports(fix_a, t2, P("p"))
    assert not supports(fix_a, t2, P("~p"))
    assert supports(fix_a, t2, P("p | ~p"))
    assert not supports(fix_a, t1, P("~p"))
    assert not supports(fix_a, t1, P("p | ~p"))


def test_fix_c_tensor_versus_inquisitive(fix_c):
    w = T(fix_c, "w")
    assert supports(fix_c, w, P("p -> (q | r)"))
    assert not supports(fix_c, w, P("p -> (q \\/ r)"))
    assert truth_at(fix_c, "w", P("p -> q | r"))


def test_fix_b_dependence_fails(fix_b):
    assert not supports(fix_b, T(fix_b, "w"), P("?p -> ?q"))


def test_team_given_by_names(fix_a):
    assert supports(fix_a, ["w5"], P("q"))


def test_truth_at(fix_a):
    assert truth_at(fix_a, "w4", P("p"))
    assert not truth_at(fix_a, "w1", P("p"))
    assert truth_set(fix_a, P("p")) == T(fix_a, "w4")


def test_truth_values(fix_a):
    p = P("p")
    assert truth_value(fix_a, "w4", p) is TruthValue.TRUE
    assert truth_value(fix_a, "w2", p) is TruthValue.FALSE
    assert truth_value(fix_a, "w3", p) is TruthValue.UNDEFINED
    assert truth_value(fix_a, "w1", p) is TruthValue.UNDEFINED
    assert truth_value(fix_a, "w5", p) is TruthValue.FALSE


def test_truth_conditionality(fix_a):
    assert is_truth_conditional_on(fix_a, P("p -> q"))
    assert not is_truth_conditional_on(fix_a, P("?p"))
    assert is_truth_conditional_on(fix_a, P("bot"))


def test_supporting_teams_are_downward_closed_in_extensions(fix_a):
    verdicts = supporting_teams(fix_a, P("?p"))
    assert len(verdicts) == 1 << len(fix_a) and verdicts[0]
    for t, ok in enumerate(verdicts):
        if ok:
            for s in range(1 << len(fix_a)):
                if s & ~r_image(fix_a, t) == 0:
                    assert verdicts[s]


def test_empty_team_supports_everything(fix_a):
    rng = random.Random(0)
    for _ in range(100):
        assert supports(fix_a, 0, random_formula(GenConfig(max_depth=4), rng))


def test_dialect_errors(fix_b):
    with pytest.raises(DialectError):
        supports(fix_b, 1, P("[]p", MT0))
    with pytest.raises(DialectError):
        supports(fix_b.as_kind(Kind.S4), 1, P("p"))
    with pytest.raises(DialectError):
        supports_mt0(fix_b, 1, P("p"))


# ---------------------------------------------------------------- MT0


def test_mt0_modalities(fix_b):
    s4 = fix_b.as_kind(Kind.S4)
    w = T(s4, "w")
    assert not supports_mt0(s4, w, P("[]p", MT0))
    assert supports_mt0(s4, w, P("<>p", MT0))
    assert supports_mt0(s4, T(s4, "u", "v"), P("[]p", MT0))


def test_mt0_dependence_on_classical_model():
    m = KripkeModel(["w1", "w2"], [1, 2], [{"p", "q"}, {"p"}], Kind.CLASSICAL)
    assert not supports_mt0(m, m.full, P("=(p,q)"))
    assert not dependence_atom_mt0(m, m.full, ["p"], "q")
    assert supports_mt0(m, 1, P("=(p,q)"))


def test_mt0_implication_ranges_over_subteams():
    # in MT0 the implication does not look along R
    m = KripkeModel.from_edges(["a", "b"], [("a", "b")], {"b": ["p"]}, Kind.S4)
    f = P("p -> bot")
    assert supports_mt0(m, T(m, "a"), f)
    assert not supports(m.as_kind(Kind.INTUITIONISTIC), T(m, "a"), f)


def test_mt0_dependence_atom_agrees_with_desugaring():
    rng = random.Random(4)
    cfg = GenConfig(kind=Kind.S4, max_worlds=4)
    for _ in range(300):
        m = random_model(cfg, rng)
        t = rng.getrandbits(len(m))
        args = rng.sample(["p", "q", "r"], rng.randint(0, 2))
        target = rng.choice(["p", "q", "r"])
        f = P("=(" + ",".join(args + [target]) + ")")
        assert dependence_atom_mt0(m, t, args, target) == supports_mt0(m, t, f)


# ---------------------------------------------------------------- engines


STANDARD_CORPUS = [
    "p", "bot", "~p", "~~p", "p -> p", "~~p -> p", "p | ~p", "~(p | ~p)", "~~(p | ~p)",
    "(p -> q) -> p", "((p -> q) -> p) -> p", "p & q -> p", "p -> q | r", "(p -> q) | (q -> p)",
    "~p | ~~p", "(~~p -> p) -> p | ~p", "p -> (q -> p)", "~(p & q) -> ~p | ~q",
]


def test_kripke_agreement_all_models_up_to_four_worlds_one_atom():
    fs = [P(s.replace("q", "p").replace("r", "p")) for s in STANDARD_CORPUS]
    for n in range(5):
        for m in enumerate_models(n, ["p"]):
            ev = Evaluator(m)
            for f in fs:
                for w in range(n):
                    assert ev.supports(1 << w, f) == kripke_truth(m, w, f)


def test_kripke_agreement_all_models_up_to_three_worlds_two_atoms():
    fs = [P(s.replace("r", "q")) for s in STANDARD_CORPUS]
    for n in range(4):
        for m in enumerate_models(n, ["p", "q"]):
            ev = Evaluator(m)
            for f in fs:
                truth = [kripke_truth(m, w, f) for w in range(n)]
                for t in range(1 << n):
                    assert ev.supports(t, f) == all(truth[w] for w in range(n) if t >> w & 1)


@pytest.mark.parametrize("kind", [Kind.INTUITIONISTIC, Kind.CLASSICAL])
def test_evaluator_matches_literal_clauses(kind):
    rng = random.Random(kind.value)
    cfg = GenConfig(kind=kind, max_worlds=4, max_depth=4)
    for _ in range(300):
        m = random_model(cfg, rng)
        f = random_formula(cfg, rng)
        ev = Evaluator(m)
        for t in range(1 << len(m)):
            assert ev.supports(t, f) == naive_supports(m, t, f)


def test_mt0_evaluator_matches_literal_clauses():
    rng = random.Random(9)
    cfg = GenConfig(kind=Kind.S4, dialect=MT0, max_worlds=3, max_depth=3)
    for _ in range(300):
        m = random_model(cfg, rng)
        f = random_formula(cfg, rng)
        ev = Evaluator(m, "mt0")
        for t in range(1 << len(m)):
            assert ev.supports(t, f) == naive_supports(m, t, f, mt0=True)


def test_cache_agrees_with_fresh_evaluation(fix_a):
    f = P("(?p -> ?q) | ~?p")
    ev = Evaluator(fix_a)
    first = [ev.supports(t, f) for t in range(32)]
    assert first == [Evaluator(fix_a).supports(t, f) for t in range(32)]
    assert first == [ev.supports(t, f) for t in range(32)]


def test_implication_cap_raises():
    n = 22
    m = KripkeModel([f"w{i}" for i in range(n)], [1 << i for i in range(n)], [set()] * n, Kind.CLASSICAL)
    with pytest.raises(SizeLimit):
        supports(m, m.full, P("?p -> ?q"))
    # standard formulas never enumerate subteams
    assert supports(m, m.full, P("p -> q"))


def test_team_enumeration_cap():
    n = 17
    m = KripkeModel([f"w{i}" for i in range(n)], [1 << i for i in range(n)], [set()] * n, Kind.CLASSICAL)
    with pytest.raises(SizeLimit):
        is_truth_conditional_on(m, P("p"))


# ---------------------------------------------------------------- dependence


@pytest.mark.parametrize("text, alphas, beta", DEPENDENCE_INSTANCES)
def test_dependence_three_forms_agree(text, alphas, beta):
    alphas = [P(a) for a in alphas]
    beta = P(beta)
    for n in range(4):
        for m in enumerate_models(n, ["p", "q"]):
            for t in range(1 << n):
                forms = dependence_forms(m, t, alphas, beta)
                assert len(set(forms)) == 1, (m, t, forms)
                assert forms[0] == supports(m, t, P(text))


def test_truth_conditional_implication_on_fixtures(fix_a, fix_b, fix_c):
    rng = random.Random(2)
    cfg = GenConfig(max_depth=3)
    for m in (fix_a, fix_b, fix_c):
        for _ in range(100):
            a, b = random_formula(cfg, rng), random_formula(cfg, rng)
            if is_truth_conditional_on(m, b):
                assert is_truth_conditional_on(m, Implies(a, b))
            if is_standard(b):
                assert is_truth_conditional_on(m, b)
