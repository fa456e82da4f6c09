import itertools
import json
import random

import pytest

from inqi.errors import KindMismatch, ModelError
from inqi.harness import GenConfig, random_model
from inqi.models import (
    Kind,
    KripkeModel,
    add_fresh_root,
    are_isomorphic,
    close_relation,
    disjoint_union,
    enumerate_models,
    frames,
    generated_submodel,
    induced_submodel,
    is_extension,
    load_model,
    min_set,
    mt0_successor,
    r_image,
    remap_team,
    rho_model,
    rho_team,
    validate_model,
)

EMPTY = KripkeModel([], [], [], Kind.INTUITIONISTIC)


def test_fixtures_validate(fix_a, fix_b, fix_c):
    for m in (fix_a, fix_b, fix_c):
        assert validate_model(m) is None
        assert m.kind is Kind.INTUITIONISTIC


def test_fixture_shapes(fix_a, fix_b, fix_c):
    assert fix_a.worlds == ("w1", "w2", "w3", "w4", "w5")
    assert fix_a.team_names(fix_a.atom_mask("p")) == ["w4"]
    assert fix_a.team_names(fix_a.atom_mask("q")) == ["w5"]
    assert fix_b.valuation[fix_b.index("u")] == {"p", "q"}
    assert fix_c.valuation[fix_c.index("v")] == {"p", "r"}


def test_load_model_accepts_fixture_file_names(fix_a):
    assert load_model("FIX_A.json") == fix_a
    assert load_model("fix_a") == fix_a
    with pytest.raises(ModelError):
        load_model("no_such_model.json")


def test_json_roundtrip(fix_a, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(fix_a.to_json())
    assert load_model(str(path)) == fix_a
    assert KripkeModel.from_dict(json.loads(fix_a.to_json())) == fix_a


def test_persistency_violation_reported():
    m = KripkeModel.from_edges(["a", "b"], [("a", "b")], {"a": ["p"]}, check=False)
    v = validate_model(m)
    assert v.invariant == "Persistency" and v.witness == ("a", "b", "p")
    with pytest.raises(ModelError):
        KripkeModel.from_edges(["a", "b"], [("a", "b")], {"a": ["p"]})


def test_antisymmetry_violation_reported():
    m = KripkeModel.from_edges(["a", "b"], [("a", "b"), ("b", "a")], check=False)
    assert validate_model(m).invariant == "Antisymmetry"
    assert validate_model(m.as_kind(Kind.S4)) is None


def test_classical_identity_violation():
    m = KripkeModel.from_edges(["a", "b"], [("a", "b")], kind=Kind.CLASSICAL, check=False)
    assert validate_model(m).invariant == "Identity"


def test_bad_input_rejected():
    with pytest.raises(ModelError):
        KripkeModel.from_edges(["a"], [("a", "z")])
    with pytest.raises(ModelError):
        KripkeModel.from_edges(["a"], [], {"z": ["p"]})
    with pytest.raises(ModelError):
        KripkeModel.from_json("{not json")
    with pytest.raises(ModelError):
        KripkeModel.from_dict({"kind": "intuitionistic"})


def test_r_image(fix_a):
    t1 = fix_a.team(["w2", "w3"])
    assert fix_a.team_names(r_image(fix_a, t1)) == ["w2", "w3", "w4", "w5"]
    assert r_image(fix_a, 0) == 0
    c = fix_a.as_kind(Kind.CLASSICAL)
    c = KripkeModel(c.worlds, [1 << i for i in range(len(c))], c.valuation, Kind.CLASSICAL)
    for t in range(1 << len(c)):
        assert r_image(c, t) == t


def test_is_extension(fix_a):
    t1, t2, t3 = fix_a.team(["w2", "w3"]), fix_a.team(["w2", "w4"]), fix_a.team(["w5"])
    assert is_extension(fix_a, t2, t1) and is_extension(fix_a, t3, t1)
    assert is_extension(fix_a, t1, t1)
    assert not is_extension(fix_a, fix_a.team(["w1"]), t3)


def test_min_set(fix_a):
    assert fix_a.team_names(min_set(fix_a, fix_a.team(["w3", "w4", "w5"]))) == ["w3"]
    antichain = fix_a.team(["w2", "w4", "w5"])
    assert min_set(fix_a, antichain) == antichain
    assert min_set(fix_a, 0) == 0


def test_generated_submodel(fix_a):
    sub, t = generated_submodel(fix_a, fix_a.team(["w3"]))
    assert sub.worlds == ("w3", "w4", "w5")
    assert sub.team_names(t) == ["w3"]
    assert validate_model(sub) is None
    full, tf = generated_submodel(fix_a, fix_a.full)
    assert are_isomorphic(full, fix_a) and tf == full.full
    empty, te = generated_submodel(fix_a, 0)
    assert len(empty) == 0 and te == 0


def test_induced_submodel_remap(fix_a):
    sub, remap = induced_submodel(fix_a, fix_a.team(["w1", "w3", "w5"]))
    assert sub.worlds == ("w1", "w3", "w5")
    assert remap_team(fix_a.team(["w3", "w5"]), remap) == sub.team(["w3", "w5"])
    with pytest.raises(ModelError):
        remap_team(fix_a.team(["w2"]), remap)


def test_disjoint_union(fix_a, fix_b):
    bb = disjoint_union(fix_b, fix_b)
    assert len(bb) == 6
    assert len(bb.pairs()) == 2 * len(fix_b.pairs())
    assert validate_model(bb) is None
    assert are_isomorphic(disjoint_union(fix_b, EMPTY), fix_b)
    ab = disjoint_union(fix_a, fix_b)
    assert validate_model(ab) is None
    assert ab.worlds == fix_a.worlds + fix_b.worlds
    with pytest.raises(KindMismatch):
        disjoint_union(fix_a, fix_b.as_kind(Kind.S4))


def test_add_fresh_root(fix_b):
    m = add_fresh_root(EMPTY)
    assert len(m) == 1 and m.valuation[0] == frozenset()
    rb = add_fresh_root(fix_b)
    assert len(rb) == 4
    root = len(rb) - 1
    assert rb.up[root] == rb.full and rb.valuation[root] == frozenset()
    assert validate_model(rb) is None
    with pytest.raises(KindMismatch):
        add_fresh_root(fix_b.as_kind(Kind.S4))


def test_rho_model_examples(fix_a):
    assert are_isomorphic(rho_model(fix_a.as_kind(Kind.S4)), fix_a)
    cl = KripkeModel.from_edges(["w", "v"], [("w", "v"), ("v", "w")], {"w": ["p"], "v": ["p"]}, Kind.S4)
    rc = rho_model(cl)
    assert len(rc) == 1 and rc.valuation[0] == {"p"}
    assert rho_team(cl, cl.full) == 1
    discrete = KripkeModel(["a", "b", "c"], [1, 2, 4], [{"p"}, set(), {"q"}], Kind.S4)
    assert len(rho_model(discrete)) == 3


def test_rho_model_valuation_is_box():
    # p holds at w but not throughout its cluster's R-image
    m = KripkeModel.from_edges(["w", "v", "u"], [("w", "v"), ("v", "w"), ("v", "u")], {"w": ["p"], "u": ["p"]}, Kind.S4)
    rm = rho_model(m)
    assert len(rm) == 2
    assert all(v == frozenset() for v in rm.valuation[:1])
    assert rm.valuation[1] == {"p"}
    assert validate_model(rm) is None


def test_mt0_successor(fix_b):
    s4 = fix_b.as_kind(Kind.S4)
    assert mt0_successor(s4, s4.team(["w"]), s4.team(["u", "v"]))
    assert mt0_successor(s4, 0, 0)
    assert not mt0_successor(s4, s4.team(["u"]), s4.team(["v"]))


def _brute_posets(n):
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for sel in itertools.product((0, 1), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, sel) if b} | {(i, i) for i in range(n)}
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2):
            continue
        count += 1
    return count


def test_frame_counts_match_brute_force():
    for n in range(4):
        assert len(frames(n, Kind.INTUITIONISTIC)) == _brute_posets(n)
    assert [len(frames(n, Kind.INTUITIONISTIC)) for n in range(5)] == [1, 1, 3, 19, 219]
    assert [len(frames(n, Kind.CLASSICAL)) for n in range(4)] == [1, 1, 1, 1]


def test_enumerate_models_counts():
    assert sum(1 for _ in enumerate_models(0, [])) == 1
    assert sum(1 for _ in enumerate_models(1, ["p"])) == 2
    assert sum(1 for _ in enumerate_models(2, [])) == 3
    # values from an independent brute force over relation matrices and up-sets
    assert [sum(1 for _ in enumerate_models(n, ["p"])) for n in range(4)] == [1, 2, 10, 98]
    assert [sum(1 for _ in enumerate_models(n, ["p", "q"])) for n in range(4)] == [1, 4, 34, 526]


def test_enumerated_models_are_valid_and_distinct():
    seen = set()
    for m in enumerate_models(3, ["p"]):
        assert validate_model(m) is None
        seen.add(m.key())
    assert len(seen) == 98


def test_s4_frames_include_clusters():
    fr = frames(2, Kind.S4)
    assert len(fr) == 4  # discrete, two chains, one cluster


@pytest.mark.parametrize("kind", list(Kind))
def test_random_models_are_valid(kind):
    cfg = GenConfig(kind=kind, min_worlds=0, max_worlds=6)
    for i in range(200):
        m = random_model(cfg, random.Random(i))
        assert validate_model(m) is None
        if kind is Kind.CLASSICAL:
            assert all(u == 1 << j for j, u in enumerate(m.up))


def test_random_model_single_world():
    m = random_model(GenConfig(min_worlds=1, max_worlds=1, seed=5))
    assert len(m) == 1


def test_model_invariants_random():
    rng = random.Random(11)
    cfg = GenConfig(max_worlds=5)
    for _ in range(200):
        m = random_model(cfg, rng)
        assert close_relation(m.up) == m.up
        t, s = rng.getrandbits(len(m)), rng.getrandbits(len(m))
        assert r_image(m, t) & ~r_image(m, t | s) == 0
        assert r_image(m, r_image(m, t)) == r_image(m, t)
        assert r_image(m, min_set(m, t)) == r_image(m, t)
