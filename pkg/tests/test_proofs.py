import json
import random

import pytest

from conftest import P
from inqi.decide import entails
from inqi.harness import GenConfig, random_proof
from inqi.proofs import (
    ARITY,
    DischargeError,
    ProofError,
    ProofFormatError,
    ProofSystem,
    ProofTree,
    RuleMismatch,
    RuleUnavailable,
    SideConditionViolation,
    check_proof,
    corpus_manifest,
    corpus_names,
    load_proof,
    rules_of,
)

SYSTEMS = ["inqi-minus", "inqi", "inqb"]
ERRORS = {c.__name__: c for c in (RuleMismatch, SideConditionViolation, RuleUnavailable, DischargeError)}


def hyp(f, label):
    return ProofTree("hyp", P(f), label=label)


def node(rule, f, *premises, discharge=()):
    return ProofTree(rule, P(f), tuple(premises), tuple(discharge) if isinstance(discharge, (list, tuple)) else (discharge,))


def verdict(p, system):
    try:
        check_proof(p, system)
        return "ok"
    except ProofError as exc:
        return type(exc).__name__


def test_systems():
    assert "dne" in rules_of("inqb") and "dne" not in rules_of("inqi")
    assert rules_of("inqi") - rules_of("inqi-minus") == {"orI1", "orI2", "orE", "orA", "orC", "orD", "orR"}
    assert set(ARITY) == rules_of("inqb") | {"hyp"}


def test_identity_json_example():
    text = '{"rule":"implI","discharge":"h1","conclusion":"p -> p","premises":[{"rule":"hyp","label":"h1","conclusion":"p"}]}'
    p = ProofTree.from_json(text)
    s = check_proof(p, "inqi-minus")
    assert s.premises == () and s.conclusion == P("p -> p")
    assert ProofTree.from_json(p.to_json()) == p


def test_split_single_node():
    p = node("split", "(p -> q) \\/ (p -> r)", hyp("p -> q \\/ r", "h"))
    s = check_proof(p, "inqi-minus")
    assert s.premises == (P("p -> (q \\/ r)"),)
    assert s.conclusion == P("(p -> q) \\/ (p -> r)")


def test_dne_on_atom():
    p = node("dne", "p", hyp("~~p", "h"))
    assert check_proof(p, "inqb").conclusion == P("p")
    with pytest.raises(RuleUnavailable) as info:
        check_proof(p, "inqi")
    assert info.value.rule == "dne"


def test_dne_on_question():
    p = node("dne", "?p", hyp("~~?p", "h"))
    with pytest.raises(SideConditionViolation) as info:
        check_proof(p, "inqb")
    assert info.value.condition == "standard-dne"


def test_tensor_elimination_to_question():
    case_p = node("iorI1", "?p", hyp("p", "a"))
    case_np = node("iorI2", "?p", hyp("~p", "b"))
    p = node("orE", "?p", case_p, case_np, hyp("p | ~p", "h"), discharge=("a", "b"))
    with pytest.raises(SideConditionViolation) as info:
        check_proof(p, "inqi")
    assert info.value.condition == "standard-conclusion"
    with pytest.raises(SideConditionViolation):
        check_proof(p, "inqb")
    with pytest.raises(RuleUnavailable):
        check_proof(p, "inqi-minus")


def test_rule_mismatch_has_path():
    bad = node("andI", "p & q", hyp("p", "a"), hyp("r", "b"))
    p = node("implI", "r -> p & q", bad, discharge="b")
    with pytest.raises(RuleMismatch) as info:
        check_proof(p, "inqi")
    assert info.value.path == (0,)
    assert "root.0" in str(info.value)


def test_arity_mismatch():
    with pytest.raises(RuleMismatch):
        check_proof(node("andI", "p & p", hyp("p", "a")), "inqi")


def test_unknown_rule_and_bad_json():
    with pytest.raises(ProofFormatError):
        ProofTree.from_json('{"rule": "magic", "conclusion": "p"}')
    with pytest.raises(ProofFormatError):
        ProofTree.from_json("[1, 2]")
    with pytest.raises(ProofFormatError):
        ProofTree.from_json('{"rule": "hyp", "conclusion": "p &", "label": "h"}')


def test_vacuous_discharge_allowed():
    p = node("implI", "q -> p -> p", node("implI", "p -> p", hyp("p", "a"), discharge="a"), discharge="z")
    assert check_proof(p, "inqi-minus").premises == ()


def test_discharge_scope_is_per_premise():
    # the label bound by implI only reaches into its own subtree
    inner = node("implI", "p -> p", hyp("p", "a"), discharge="a")
    p = node("andI", "(p -> p) & p", inner, hyp("p", "a"))
    s = check_proof(p, "inqi")
    assert s.premises == (P("p"),)


def test_label_clash_is_discharge_error():
    p = node("andI", "p & q", hyp("p", "a"), hyp("q", "a"))
    with pytest.raises(DischargeError):
        check_proof(p, "inqi")


def test_discharging_wrong_formula():
    # discharge label exists but its hypothesis is not the antecedent
    p = node("implI", "q -> p", hyp("p", "a"), discharge="a")
    with pytest.raises(DischargeError):
        check_proof(p, "inqi")


def test_split_needs_standard_antecedent():
    p = node("split", "(?p -> q) \\/ (?p -> r)", hyp("?p -> q \\/ r", "h"))
    with pytest.raises(SideConditionViolation) as info:
        check_proof(p, "inqb")
    assert info.value.condition == "standard-antecedent"


def test_or_rewrites_are_one_directional():
    ok = node("orA", "(p | q) | r", hyp("p | (q | r)", "h"))
    assert check_proof(ok, "inqi").conclusion == P("(p | q) | r")
    back = node("orA", "p | (q | r)", hyp("(p | q) | r", "h"))
    with pytest.raises(RuleMismatch):
        check_proof(back, "inqi")


# ---------------------------------------------------------------- corpus


def test_corpus_size_and_rule_coverage():
    names = corpus_names()
    assert len(names) >= 20
    used = set()

    def walk(p):
        used.add(p.rule)
        for c in p.premises:
            walk(c)

    for entry in corpus_manifest():
        if entry["system"] is not None:
            walk(load_proof(entry["file"]))
    assert used == set(ARITY)


@pytest.mark.parametrize("entry", corpus_manifest(), ids=lambda e: e["file"])
def test_corpus_expectations(entry):
    p = load_proof(entry["file"])
    for system in SYSTEMS:
        assert verdict(p, system) == entry["expect"][system]


@pytest.mark.parametrize("entry", [e for e in corpus_manifest() if e["system"]], ids=lambda e: e["file"])
def test_corpus_sequents_are_valid(entry):
    p = load_proof(entry["file"])
    seq = check_proof(p, entry["system"])
    logic = "inqb" if entry["system"] == "inqb" else "inqi"
    assert entails(seq, logic, method="cases").valid
    if logic == "inqi":
        assert entails(seq, "inqb", method="cases").valid


def test_corpus_shipped_as_package_data():
    assert load_proof("dne_p.json") == load_proof("dne_p")


# ---------------------------------------------------------------- random proofs


@pytest.mark.parametrize("system", [ProofSystem.INQI_MINUS, ProofSystem.INQI, ProofSystem.INQB])
def test_random_proofs_accepted_and_sound(system):
    cfg = GenConfig(atom_pool=("p", "q"))
    for i in range(150):
        p = random_proof(cfg, random.Random(i), system)
        seq = check_proof(p, system)
        logic = "inqb" if system is ProofSystem.INQB else "inqi"
        assert entails(seq, logic, method="cases").valid, str(seq)
        assert ProofTree.from_dict(json.loads(p.to_json())) == p
