"""Random generators and the property-suite runner.

Each suite pairs a case generator with a checker.  Cases are generated from
a per-case RNG seeded by ``(seed, suite, index)``, so a single case can be
replayed without re-running the suite.  A failing case is shrunk (worlds
first, then subformulas) before it is reported.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field, fields, replace
from typing import Callable

import numpy as np

from .decide import Sequent, countermodel_search, cpl_valid, entails, ipl_valid, valid
from .errors import InqError, ResolutionExplosion, SizeLimit, UnknownSuite
from .models import (
    Frame,
    Kind,
    KripkeModel,
    Team,
    add_fresh_root,
    are_isomorphic,
    bits,
    close_relation,
    disjoint_union,
    enumerate_models,
    generated_submodel,
    induced_submodel,
    is_extension,
    min_set,
    r_image,
    remap_team,
    rho_model,
    rho_team,
    validate_model,
)
from .normalform import (
    RESOLUTION_CAP,
    box_translation,
    count_resolutions,
    negative_translation,
    normal_form,
    resolutions,
    standard_variant,
)
from .proofs import ProofError, ProofSystem, ProofTree, check_proof, open_labels
from .semantics import (
    Evaluator,
    TruthValue,
    dependence_atom_mt0,
    is_truth_conditional_on,
    kripke_truth,
    naive_supports,
    supports,
    supports_mt0,
    truth_at,
    truth_value,
)
from .syntax import (
    BOT,
    And,
    Atom,
    Box,
    Diamond,
    Dialect,
    Falsum,
    Formula,
    IDisj,
    Implies,
    Tensor,
    atoms_of,
    children,
    conj,
    dependence,
    has_modality,
    idisj_fold,
    is_standard,
    neg,
    parse_formula,
    question,
    render_formula,
    subformulas,
    tensor_fold,
)
from .tables import FrameTables, sweep

DEFAULT_WEIGHTS = {
    "atom": 4.0,
    "bot": 1.0,
    "and": 2.0,
    "tensor": 2.0,
    "idisj": 2.0,
    "implies": 3.0,
    "box": 1.0,
    "diamond": 1.0,
}


@dataclass
class GenConfig:
    seed: int = 0
    max_depth: int = 3
    atom_pool: tuple[str, ...] = ("p", "q", "r")
    weights: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    min_worlds: int = 1
    max_worlds: int = 4
    kind: Kind = Kind.INTUITIONISTIC
    dialect: Dialect = Dialect.INQI
    edge_prob: float = 0.4
    atom_prob: float = 0.4
    resolution_cap: int = RESOLUTION_CAP
    search_worlds: int = 4

    def __post_init__(self):
        self.kind = Kind(self.kind)
        self.dialect = Dialect(self.dialect)
        self.atom_pool = tuple(self.atom_pool)

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["kind"] = self.kind.value
        out["dialect"] = self.dialect.value
        out["atom_pool"] = list(self.atom_pool)
        return out


# --------------------------------------------------------------------------
# generators


def _rng(cfg: GenConfig, rng: random.Random | None) -> random.Random:
    return rng if rng is not None else random.Random(cfg.seed)


def random_formula(
    cfg: GenConfig,
    rng: random.Random | None = None,
    *,
    depth: int | None = None,
    standard: bool = False,
) -> Formula:
    """Random formula of depth at most ``cfg.max_depth`` over ``cfg.atom_pool``.

    Modalities are only produced for the MT0 dialect; ``standard=True`` (or a
    zero ``idisj`` weight) rules out inquisitive disjunction.
    """
    rng = _rng(cfg, rng)
    return _gen(rng, cfg, cfg.max_depth if depth is None else depth, standard)


def _gen(rng: random.Random, cfg: GenConfig, depth: int, standard: bool) -> Formula:
    w = cfg.weights
    names = ["atom", "bot"]
    if depth > 0:
        names += ["and", "tensor", "implies"]
        if not standard:
            names.append("idisj")
        if cfg.dialect is Dialect.MT0:
            names += ["box", "diamond"]
    names = [n for n in names if w.get(n, 0) > 0] or ["atom"]
    pick = rng.choices(names, [w.get(n, 1.0) for n in names])[0]
    if pick == "atom":
        return Atom(rng.choice(cfg.atom_pool))
    if pick == "bot":
        return BOT
    if pick in ("box", "diamond"):
        sub = _gen(rng, cfg, depth - 1, standard)
        return Box(sub) if pick == "box" else Diamond(sub)
    cls = {"and": And, "tensor": Tensor, "implies": Implies, "idisj": IDisj}[pick]
    return cls(_gen(rng, cfg, depth - 1, standard), _gen(rng, cfg, depth - 1, standard))


def random_model(cfg: GenConfig, rng: random.Random | None = None) -> KripkeModel:
    rng = _rng(cfg, rng)
    n = rng.randint(cfg.min_worlds, cfg.max_worlds)
    kind = cfg.kind
    up = [1 << i for i in range(n)]
    if kind is Kind.INTUITIONISTIC:
        order = rng.sample(range(n), n)
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < cfg.edge_prob:
                    up[order[a]] |= 1 << order[b]
    elif kind is Kind.S4:
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < cfg.edge_prob:
                    up[i] |= 1 << j
    up = list(close_relation(up))
    val = [0] * n
    for i in range(n):
        for k in range(len(cfg.atom_pool)):
            if rng.random() < cfg.atom_prob:
                val[i] |= 1 << k
    if kind is Kind.INTUITIONISTIC:
        closed = list(val)
        for i in range(n):
            for j in bits(up[i]):
                closed[j] |= val[i]
        val = closed
    valuation = [frozenset(a for k, a in enumerate(cfg.atom_pool) if v >> k & 1) for v in val]
    m = KripkeModel([f"w{i + 1}" for i in range(n)], up, valuation, kind)
    assert validate_model(m) is None
    return m


def random_team(rng: random.Random, m: KripkeModel) -> Team:
    return rng.getrandbits(len(m)) & m.full if len(m) else 0


# --------------------------------------------------------------------------
# random proofs


class _ProofGen:
    """Builds random correct derivations bottom-up.

    Hypotheses with the same formula share a label, so discharging a label
    discharges every copy of that assumption in the subtree.
    """

    def __init__(self, rng: random.Random, cfg: GenConfig, system: ProofSystem):
        self.rng = rng
        self.cfg = replace(cfg, max_depth=min(cfg.max_depth, 2))
        self.system = system
        self.labels: dict[Formula, str] = {}
        rules = [
            "andI", "andE1", "andE2", "implI", "implE", "iorI1", "iorI2", "iorE", "botE", "split",
        ]
        if system is not ProofSystem.INQI_MINUS:
            rules += ["orI1", "orI2", "orE", "orA", "orC", "orD", "orR"]
        if system is ProofSystem.INQB:
            rules.append("dne")
        self.rules = rules

    def formula(self, standard: bool = False, depth: int = 1) -> Formula:
        return random_formula(self.cfg, self.rng, depth=depth, standard=standard)

    def hyp(self, f: Formula) -> ProofTree:
        label = self.labels.setdefault(f, f"h{len(self.labels)}")
        return ProofTree("hyp", f, label=label)

    def label(self, f: Formula) -> str:
        return self.labels.setdefault(f, f"h{len(self.labels)}")

    def open_formulas(self, p: ProofTree) -> list[Formula]:
        return list(open_labels(p).values())

    def build(self, depth: int) -> ProofTree:
        if depth <= 0 or self.rng.random() < 0.15:
            return self.hyp(self.formula())
        rule = self.rng.choice(self.rules)
        return getattr(self, "r_" + rule)(depth - 1)

    def shaped(self, depth: int, ok: Callable[[Formula], bool], make: Callable[[], Formula]):
        p = self.build(depth)
        if ok(p.conclusion):
            return p
        return self.hyp(make())

    def r_andI(self, d):
        a, b = self.build(d), self.build(d)
        return ProofTree("andI", And(a.conclusion, b.conclusion), (a, b))

    def _conj_proof(self, d):
        p = self.build(d)
        if isinstance(p.conclusion, And):
            return p
        other = self.hyp(self.formula())
        pair = (p, other) if self.rng.random() < 0.5 else (other, p)
        return ProofTree("andI", And(pair[0].conclusion, pair[1].conclusion), pair)

    def r_andE1(self, d):
        p = self._conj_proof(d)
        return ProofTree("andE1", p.conclusion.left, (p,))

    def r_andE2(self, d):
        p = self._conj_proof(d)
        return ProofTree("andE2", p.conclusion.right, (p,))

    def _impl_intro(self, sub: ProofTree) -> ProofTree:
        opened = self.open_formulas(sub)
        if opened and self.rng.random() < 0.8:
            a = self.rng.choice(opened)
        else:
            a = self.formula()
        return ProofTree("implI", Implies(a, sub.conclusion), (sub,), (self.label(a),))

    def r_implI(self, d):
        return self._impl_intro(self.build(d))

    def r_implE(self, d):
        major = self.build(d)
        if not isinstance(major.conclusion, Implies):
            major = self._impl_intro(major)
        minor = self.hyp(major.conclusion.left)
        if self.rng.random() < 0.3:
            # reuse a derivation of the antecedent when one is lying around
            cand = self.build(d)
            if cand.conclusion == major.conclusion.left:
                minor = cand
        return ProofTree("implE", major.conclusion.right, (minor, major))

    def _intro(self, rule, d, cls):
        p = self.build(d)
        other = self.formula()
        c = cls(p.conclusion, other) if rule.endswith("1") else cls(other, p.conclusion)
        return ProofTree(rule, c, (p,))

    def r_iorI1(self, d):
        return self._intro("iorI1", d, IDisj)

    def r_iorI2(self, d):
        return self._intro("iorI2", d, IDisj)

    def r_orI1(self, d):
        return self._intro("orI1", d, Tensor)

    def r_orI2(self, d):
        return self._intro("orI2", d, Tensor)

    def _elim(self, rule, d, cls):
        std = rule == "orE"
        major = self.shaped(
            d,
            lambda f: isinstance(f, cls) and (not std or is_standard(f)),
            lambda: cls(self.formula(std), self.formula(std)),
        )
        a, b = major.conclusion.left, major.conclusion.right
        if self.rng.random() < 0.5:
            # commute the disjunction
            c = cls(b, a)
            intro = "iorI" if cls is IDisj else "orI"
            case0 = ProofTree(intro + "2", c, (self.hyp(a),))
            case1 = ProofTree(intro + "1", c, (self.hyp(b),))
        else:
            sub = self.build(d)
            if std and not is_standard(sub.conclusion):
                sub = self.hyp(self.formula(True))
            case0 = case1 = sub
            c = sub.conclusion
        return ProofTree(rule, c, (case0, case1, major), (self.label(a), self.label(b)))

    def r_iorE(self, d):
        return self._elim("iorE", d, IDisj)

    def r_orE(self, d):
        return self._elim("orE", d, Tensor)

    def r_orA(self, d):
        p = self.shaped(
            d,
            lambda f: isinstance(f, Tensor) and isinstance(f.right, Tensor),
            lambda: Tensor(self.formula(), Tensor(self.formula(), self.formula())),
        )
        f = p.conclusion
        return ProofTree("orA", Tensor(Tensor(f.left, f.right.left), f.right.right), (p,))

    def r_orC(self, d):
        p = self.shaped(
            d, lambda f: isinstance(f, Tensor), lambda: Tensor(self.formula(), self.formula())
        )
        return ProofTree("orC", Tensor(p.conclusion.right, p.conclusion.left), (p,))

    def r_orD(self, d):
        p = self.shaped(
            d,
            lambda f: isinstance(f, Tensor) and isinstance(f.right, IDisj),
            lambda: Tensor(self.formula(), IDisj(self.formula(), self.formula())),
        )
        a, b, c = p.conclusion.left, p.conclusion.right.left, p.conclusion.right.right
        return ProofTree("orD", IDisj(Tensor(a, b), Tensor(a, c)), (p,))

    def r_orR(self, d):
        major = self.shaped(
            d, lambda f: isinstance(f, Tensor), lambda: Tensor(self.formula(), self.formula())
        )
        a, b = major.conclusion.left, major.conclusion.right
        subs = []
        for side in (a, b):
            if self.rng.random() < 0.5:
                # a derivation that really uses the disjunct
                sub = ProofTree("orI1", Tensor(side, self.formula()), (self.hyp(side),))
            else:
                sub = self.build(d)
            subs.append(sub)
        c = Tensor(subs[0].conclusion, subs[1].conclusion)
        return ProofTree("orR", c, (subs[0], subs[1], major), (self.label(a), self.label(b)))

    def r_botE(self, d):
        x = self.formula()
        bot = ProofTree("implE", BOT, (self.hyp(x), self.hyp(neg(x))))
        if self.rng.random() < 0.3:
            bot = self.hyp(BOT)
        return ProofTree("botE", self.formula(), (bot,))

    def r_split(self, d):
        p = self.shaped(
            d,
            lambda f: isinstance(f, Implies) and is_standard(f.left) and isinstance(f.right, IDisj),
            lambda: Implies(self.formula(True), IDisj(self.formula(), self.formula())),
        )
        s, a, b = p.conclusion.left, p.conclusion.right.left, p.conclusion.right.right
        return ProofTree("split", IDisj(Implies(s, a), Implies(s, b)), (p,))

    def r_dne(self, d):
        sub = self.build(d)
        if is_standard(sub.conclusion):
            a = sub.conclusion
            n = neg(a)
            inner = ProofTree("implE", BOT, (sub, self.hyp(n)))
            dn = ProofTree("implI", neg(n), (inner,), (self.label(n),))
        else:
            a = self.formula(True)
            dn = self.hyp(neg(neg(a)))
        return ProofTree("dne", a, (dn,))


def random_proof(
    cfg: GenConfig, rng: random.Random | None = None, system: ProofSystem | str = ProofSystem.INQI,
    depth: int = 3,
) -> ProofTree:
    rng = _rng(cfg, rng)
    return _ProofGen(rng, cfg, ProofSystem(system)).build(depth)


# --------------------------------------------------------------------------
# cases, failures, reports


@dataclass
class Case:
    formulas: dict[str, Formula] = field(default_factory=dict)
    model: KripkeModel | None = None
    teams: dict[str, Team] = field(default_factory=dict)
    proof: ProofTree | None = None
    system: str | None = None

    def to_dict(self) -> dict:
        out: dict = {"formulas": {k: render_formula(f) for k, f in self.formulas.items()}}
        if self.model is not None:
            out["model"] = self.model.to_dict()
            out["teams"] = {k: self.model.team_names(t) for k, t in self.teams.items()}
        if self.proof is not None:
            out["proof"] = self.proof.to_dict()
        if self.system is not None:
            out["system"] = self.system
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Case":
        dialect = Dialect.MT0 if data.get("mt0") else Dialect.INQI
        formulas = {}
        for k, s in data.get("formulas", {}).items():
            try:
                formulas[k] = parse_formula(s, Dialect.INQI)
            except InqError:
                formulas[k] = parse_formula(s, Dialect.MT0)
        model = KripkeModel.from_dict(data["model"], check=False) if "model" in data else None
        teams = {k: model.team(v) for k, v in data.get("teams", {}).items()} if model else {}
        proof = ProofTree.from_dict(data["proof"]) if "proof" in data else None
        del dialect
        return cls(formulas, model, teams, proof, data.get("system"))


@dataclass
class Fail:
    message: str
    model: KripkeModel | None = None
    team: Team | None = None


class Skip(Exception):
    """The case is outside the suite's scope (e.g. too many resolutions)."""


@dataclass
class Failure:
    index: int
    message: str
    case: dict
    witness: dict | None = None
    shrink_steps: int = 0

    def to_dict(self) -> dict:
        out = {"index": self.index, "message": self.message, "case": self.case}
        if self.witness is not None:
            out["witness"] = self.witness
        out["shrink_steps"] = self.shrink_steps
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    skipped: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "skipped": self.skipped,
            "failures": [f.to_dict() for f in sorted(self.failures, key=lambda f: f.index)],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} FAILURE(S)"
        lines = [
            f"suite {self.suite}: {self.cases} cases, {self.skipped} skipped, seed {self.seed}: {status}"
        ]
        for f in sorted(self.failures, key=lambda f: f.index):
            lines.append(f"  case {f.index}: {f.message}")
            for k, s in f.case.get("formulas", {}).items():
                lines.append(f"    {k} = {s}")
            if "model" in f.case:
                lines.append(f"    model = {json.dumps(f.case['model'], sort_keys=True)}")
                for k, t in f.case.get("teams", {}).items():
                    lines.append(f"    {k} = {{{', '.join(t)}}}")
            if f.witness:
                lines.append(f"    witness = {json.dumps(f.witness, sort_keys=True)}")
        return "\n".join(lines)


Check = Callable[[Case, GenConfig], "Fail | None"]
Generate = Callable[[random.Random, GenConfig], Case]


@dataclass(frozen=True)
class Suite:
    name: str
    claim: str
    generate: Generate
    check: Check
    cases: int = 1000
    defaults: dict = field(default_factory=dict)
    forced: dict = field(default_factory=dict)

    def config(self, **overrides) -> GenConfig:
        return GenConfig(**{**self.defaults, **overrides, **self.forced})


SUITES: dict[str, Suite] = {}


def register_suite(suite: Suite) -> Suite:
    SUITES[suite.name] = suite
    return suite


def suite_names() -> list[str]:
    return list(SUITES)


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None


def case_rng(seed: int, name: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{index}")


def _safe(check: Check, case: Case, cfg: GenConfig) -> Fail | None:
    try:
        return check(case, cfg)
    except (Skip, SizeLimit):
        return None


def _formula_shrinks(f: Formula, atoms) -> list[Formula]:
    out: list[Formula] = list(children(f))
    if not isinstance(f, (Atom, Falsum)):
        out.append(BOT)
        out.extend(Atom(a) for a in sorted(atoms_of(f)))
    kids = children(f)
    for i, k in enumerate(kids):
        for g in _formula_shrinks(k, atoms)[:6]:
            new = list(kids)
            new[i] = g
            out.append(type(f)(*new))
    return out


def _drop_world(case: Case, i: int) -> Case:
    m = case.model
    sub, remap = induced_submodel(m, m.full & ~(1 << i))
    teams = {}
    for k, t in case.teams.items():
        teams[k] = remap_team(t & ~(1 << i), remap)
    return replace(case, model=sub, teams=teams)


def shrink(case: Case, check: Check, cfg: GenConfig, budget: int = 400) -> tuple[Case, Fail, int]:
    fail = check(case, cfg)
    assert fail is not None
    steps = 0
    improved = True
    while improved and budget > 0:
        improved = False
        if case.model is not None and len(case.model) > 1:
            for i in range(len(case.model)):
                budget -= 1
                cand = _drop_world(case, i)
                r = _safe(check, cand, cfg)
                if r is not None:
                    case, fail, improved = cand, r, True
                    steps += 1
                    break
            if improved:
                continue
        for key, f in case.formulas.items():
            for g in _formula_shrinks(f, cfg.atom_pool):
                if budget <= 0:
                    break
                budget -= 1
                cand = replace(case, formulas={**case.formulas, key: g})
                r = _safe(check, cand, cfg)
                if r is not None:
                    case, fail, improved = cand, r, True
                    steps += 1
                    break
            if improved:
                break
    return case, fail, steps


def _witness(fail: Fail) -> dict | None:
    if fail.model is None:
        return None
    out = {"model": fail.model.to_dict()}
    if fail.team is not None:
        out["team"] = fail.model.team_names(fail.team)
    return out


def run_case(name: str, cfg: GenConfig, index: int) -> tuple[Case, Fail | None]:
    suite = get_suite(name)
    case = suite.generate(case_rng(cfg.seed, name, index), cfg)
    return case, suite.check(case, cfg)


def run_suite(
    name: str,
    cfg: GenConfig | None = None,
    n_cases: int | None = None,
    *,
    shrink_failures: bool = True,
) -> SuiteReport:
    suite = get_suite(name)
    cfg = cfg if cfg is not None else suite.config()
    n = suite.cases if n_cases is None else n_cases
    report = SuiteReport(name, cfg.seed, n)
    for i in range(n):
        case = suite.generate(case_rng(cfg.seed, name, i), cfg)
        try:
            fail = suite.check(case, cfg)
        except (Skip, ResolutionExplosion):
            report.skipped += 1
            continue
        if fail is None:
            continue
        steps = 0
        if shrink_failures:
            case, fail, steps = shrink(case, suite.check, cfg)
        report.failures.append(Failure(i, fail.message, case.to_dict(), _witness(fail), steps))
    return report


def replay(name: str, failure: Failure | dict, cfg: GenConfig | None = None) -> bool:
    """Re-run a reported failure's (shrunk) case; True if it still fails."""
    suite = get_suite(name)
    cfg = cfg if cfg is not None else suite.config()
    data = failure.case if isinstance(failure, Failure) else failure["case"]
    return _safe(suite.check, Case.from_dict(data), cfg) is not None


# --------------------------------------------------------------------------
# generators shared by suites


def _regen(rng, cfg, *, standard=False, dialect=None, guard=None) -> Formula:
    c = cfg if dialect is None else replace(cfg, dialect=dialect)
    for _ in range(200):
        f = random_formula(c, rng, standard=standard)
        if has_modality(f) or count_resolutions(f) <= cfg.resolution_cap:
            if guard is None or guard(f):
                return f
    raise Skip("could not generate a formula within bounds")


def gen_fmt(rng, cfg) -> Case:
    """One formula, one model, one team."""
    f = _regen(rng, cfg)
    m = random_model(cfg, rng)
    return Case({"f": f}, m, {"t": random_team(rng, m)})


def gen_std_mt(rng, cfg) -> Case:
    f = _regen(rng, cfg, standard=True)
    m = random_model(cfg, rng)
    return Case({"f": f}, m, {"t": random_team(rng, m)})


def gen_two_mt(rng, cfg) -> Case:
    a, b = _regen(rng, cfg), _regen(rng, cfg)
    m = random_model(cfg, rng)
    return Case({"a": a, "b": b}, m, {"t": random_team(rng, m)})


def gen_formula(rng, cfg) -> Case:
    return Case({"f": _regen(rng, cfg)})


def gen_std_formula(rng, cfg) -> Case:
    return Case({"f": _regen(rng, cfg, standard=True)})


def _valid_seed(rng, cfg) -> Formula:
    """A small formula that is InqI-valid by construction."""
    x = random_formula(cfg, rng, depth=1)
    a = random_formula(cfg, rng, depth=1, standard=True)
    return rng.choice(
        [Implies(x, x), neg(neg(question(a))), Implies(And(x, a), a), Implies(BOT, x), question(BOT)]
    )


def _maybe_valid(rng, cfg) -> Formula:
    return _valid_seed(rng, cfg) if rng.random() < 0.3 else _regen(rng, cfg)


# --------------------------------------------------------------------------
# semantics suites


def _all_subteams(mask: int):
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def chk_persistency(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    ev = Evaluator(m)
    if not ev.supports(t, f):
        return None
    for s in _all_subteams(r_image(m, t)):
        if not ev.supports(s, f):
            return Fail(f"t supports f but its extension {m.team_names(s)} does not", m, s)
    return None


def chk_empty_team(case, cfg):
    if not supports(case.model, 0, case.formulas["f"]):
        return Fail("the empty team does not support f")
    return None


def chk_up_set(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    if supports(m, t, f) != supports(m, r_image(m, t), f):
        return Fail("support at t differs from support at R[t]")
    return None


def chk_minimal_set(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    if supports(m, t, f) != supports(m, min_set(m, t), f):
        return Fail("support at t differs from support at min(t)")
    return None


def chk_restriction(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    sub, st = generated_submodel(m, t)
    if supports(m, t, f) != supports(sub, st, f):
        return Fail("support changes in the submodel generated by t")
    return None


def chk_single_world(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    if supports(m, t, f):
        return None
    m2 = add_fresh_root(m)
    root = len(m2) - 1
    if supports(m2, t, f):
        return Fail("adding a root changed support at t")
    if truth_at(m2, root, f):
        return Fail("f is true at the fresh root although t does not support it")
    return None


def gen_polar(rng, cfg):
    a = _regen(rng, cfg, standard=True)
    m = random_model(cfg, rng)
    return Case({"a": a}, m, {"t": random_team(rng, m)})


def chk_polar(case, cfg):
    m, a, t = case.model, case.formulas["a"], case.teams["t"]
    if not is_standard(a):
        return None
    lhs = supports(m, t, question(a))
    vals = {truth_value(m, w, a) for w in bits(t)}
    rhs = TruthValue.UNDEFINED not in vals and len(vals) <= 1
    if lhs != rhs:
        return Fail(f"support of ?a is {lhs} but truth values at t are {sorted(v.value for v in vals)}")
    return None


def chk_truth_value_persistency(case, cfg):
    m, f = case.model, case.formulas["f"]
    vals = [truth_value(m, w, f) for w in range(len(m))]
    for w in range(len(m)):
        if vals[w] is TruthValue.UNDEFINED:
            continue
        for v in bits(m.up[w]):
            if vals[v] is not vals[w]:
                return Fail(f"truth value {vals[w].value} at {m.worlds[w]} but {vals[v].value} at {m.worlds[v]}")
    return None


def chk_tensor_split(case, cfg):
    m, a, b, t = case.model, case.formulas["a"], case.formulas["b"], case.teams["t"]
    ev = Evaluator(m)
    fast = ev.supports(t, Tensor(a, b))
    pairs = any(
        ev.supports(t1, a) and ev.supports(t2, b)
        for t1 in _all_subteams(t)
        for t2 in _all_subteams(t)
        if t1 | t2 == t
    )
    if fast != pairs:
        return Fail(f"complement split gives {fast}, covering pairs give {pairs}")
    return None


def chk_standard_fast_path(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    if not is_standard(f):
        return None
    kripke = [kripke_truth(m, w, f) for w in range(len(m))]
    for w in range(len(m)):
        if truth_at(m, w, f) != kripke[w]:
            return Fail(f"truth at {m.worlds[w]} disagrees with the Kripke clauses")
    flat = all(kripke[w] for w in bits(t))
    if supports(m, t, f) != flat or naive_supports(m, t, f) != flat:
        return Fail("support of a standard formula is not truth at every world")
    return None


def chk_truth_conditional_implication(case, cfg):
    m, a, b = case.model, case.formulas["a"], case.formulas["b"]
    if is_truth_conditional_on(m, b) and not is_truth_conditional_on(m, Implies(a, b)):
        return Fail("b is truth-conditional on the model but a -> b is not")
    return None


def chk_engines(case, cfg):
    """Scalar evaluator, literal clauses and the table engine agree on every team."""
    m, f = case.model, case.formulas["f"]
    mode = "mt0" if m.kind is Kind.S4 else "inq"
    ev = Evaluator(m, mode)
    atoms = sorted(atoms_of(f) | m.atoms())
    val = [sum(1 << (len(atoms) - 1 - k) for k, a in enumerate(atoms) if a in v) for v in m.valuation]
    ft = FrameTables(Frame(len(m), m.up, m.kind), atoms, [val], mode)
    tab = ft.table(f)[0]
    for t in range(1 << len(m)):
        a = ev.supports(t, f)
        b = naive_supports(m, t, f, mode == "mt0")
        if not a == b == bool(tab[t]):
            return Fail(f"engines disagree: evaluator {a}, clauses {b}, table {bool(tab[t])}", m, t)
    return None


def chk_mt0_persistency(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    ev = Evaluator(m, "mt0")
    if not ev.supports(t, f):
        return None
    for s in _all_subteams(t):
        if not ev.supports(s, f):
            return Fail(f"t supports f but its subteam {m.team_names(s)} does not", m, s)
    return None


def gen_mt0_dependence(rng, cfg):
    m = random_model(cfg, rng)
    k = rng.randint(0, len(cfg.atom_pool) - 1)
    args = rng.sample(cfg.atom_pool, k)
    target = rng.choice(cfg.atom_pool)
    f = dependence([Atom(a) for a in args], Atom(target))
    return Case({"f": f}, m, {"t": random_team(rng, m)})


def _dependence_parts(f: Formula) -> tuple[list[str], str] | None:
    """Recover ``(args, target)`` from a desugared dependence atom over atoms."""

    def q_atom(g):
        if isinstance(g, IDisj) and isinstance(g.left, Atom) and g.right == neg(g.left):
            return g.left.name
        return None

    if q_atom(f):
        return [], q_atom(f)
    if not isinstance(f, Implies) or q_atom(f.right) is None:
        return None
    args, g = [], f.left
    while isinstance(g, And) and q_atom(g.left):
        args.append(q_atom(g.left))
        g = g.right
    if q_atom(g) is None:
        return None
    return args + [q_atom(g)], q_atom(f.right)


def chk_mt0_dependence(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    parts = _dependence_parts(f)
    if parts is None:
        return None
    args, target = parts
    if dependence_atom_mt0(m, t, args, target) != supports_mt0(m, t, f):
        return Fail("primitive dependence clause disagrees with its definition")
    return None


def gen_dependence(rng, cfg):
    n = rng.randint(1, 2)
    alphas = [random_formula(cfg, rng, depth=1, standard=True) for _ in range(n)]
    beta = random_formula(cfg, rng, depth=1, standard=True)
    m = random_model(cfg, rng)
    fs = {f"a{i}": a for i, a in enumerate(alphas)}
    fs["b"] = beta
    return Case(fs, m, {"t": random_team(rng, m)})


def dependence_forms(m: KripkeModel, t: Team, alphas: list[Formula], beta: Formula) -> tuple[bool, bool, bool]:
    """Implication support, pairwise agreement and function existence."""
    imp = supports(m, t, Implies(conj(question(a) for a in alphas), question(beta)))
    dom = list(bits(r_image(m, t)))
    tv = {w: ([truth_value(m, w, a) for a in alphas], truth_value(m, w, beta)) for w in dom}

    def agree(x, y):
        return x is y and x is not TruthValue.UNDEFINED

    pair = all(
        agree(tv[w][1], tv[v][1])
        for w in dom
        for v in dom
        if all(agree(x, y) for x, y in zip(tv[w][0], tv[v][0]))
    )
    func = False
    for table in itertools.product((TruthValue.TRUE, TruthValue.FALSE), repeat=1 << len(alphas)):
        ok = True
        for w in dom:
            args, b = tv[w]
            if TruthValue.UNDEFINED in args:
                continue
            idx = sum(1 << i for i, x in enumerate(args) if x is TruthValue.TRUE)
            if b is not table[idx]:
                ok = False
                break
        if ok:
            func = True
            break
    return imp, pair, func


def chk_dependence(case, cfg):
    alphas = [f for k, f in sorted(case.formulas.items()) if k.startswith("a")]
    beta = case.formulas["b"]
    if not all(is_standard(a) for a in alphas + [beta]):
        return None
    forms = dependence_forms(case.model, case.teams["t"], alphas, beta)
    if len(set(forms)) != 1:
        return Fail(f"implication/pairwise/function forms give {forms}")
    return None


DEPENDENCE_INSTANCES = [
    ("?p -> ?q", ["p"], "q"),
    ("?q -> ?p", ["q"], "p"),
    ("?p -> ?p", ["p"], "p"),
    ("?p & ?q -> ?p", ["p", "q"], "p"),
    ("?p & ?q -> ?q", ["p", "q"], "q"),
    ("?q & ?p -> ?p", ["q", "p"], "p"),
    ("?~p -> ?q", ["~p"], "q"),
    ("?(p & q) -> ?p", ["p & q"], "p"),
    ("?p -> ?(p | q)", ["p"], "p | q"),
    ("?(p -> q) & ?p -> ?q", ["p -> q", "p"], "q"),
]


def gen_dependence_instance(rng, cfg):
    i = rng.randrange(len(DEPENDENCE_INSTANCES))
    _, alphas, beta = DEPENDENCE_INSTANCES[i]
    fs = {f"a{k}": parse_formula(a) for k, a in enumerate(alphas)}
    fs["b"] = parse_formula(beta)
    return Case(fs)


def dependence_sweep(alphas: list[Formula], beta: Formula, max_worlds: int = 3, atoms=("p", "q")):
    """First (model, team, forms) where the three dependence forms disagree, else None."""
    for n in range(max_worlds + 1):
        for m in enumerate_models(n, atoms, Kind.INTUITIONISTIC):
            for t in range(1 << n):
                forms = dependence_forms(m, t, alphas, beta)
                if len(set(forms)) != 1:
                    return m, t, forms
    return None


def chk_dependence_exhaustive(case, cfg):
    alphas = [f for k, f in sorted(case.formulas.items()) if k.startswith("a")]
    beta = case.formulas["b"]
    if not all(is_standard(a) for a in alphas + [beta]):
        return None
    bad = dependence_sweep(alphas, beta, min(cfg.max_worlds, 3), ("p", "q"))
    if bad:
        m, t, forms = bad
        return Fail(f"forms disagree: {forms}", m, t)
    return None


# --------------------------------------------------------------------------
# normal-form suites (exhaustive over small models)


def _sweep_compare(f: Formula, g: Formula, cfg: GenConfig, *, singletons: bool = False) -> Fail | None:
    atoms = sorted(atoms_of(f) | atoms_of(g))
    for n in range(cfg.max_worlds + 1):
        cols = [1 << i for i in range(n)] if singletons else list(range(1 << n))
        for ft in sweep(n, atoms, Kind.INTUITIONISTIC):
            if not ft.valuations:
                continue
            a, b = ft.table(f)[:, cols], ft.table(g)[:, cols]
            diff = np.flatnonzero((a != b).ravel())
            if diff.size:
                v, c = divmod(int(diff[0]), len(cols))
                return Fail("the two formulas come apart", ft.model(v), cols[c])
    return None


def chk_normal_form(case, cfg):
    f = case.formulas["f"]
    try:
        nf = normal_form(f, cfg.resolution_cap)
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    r = _sweep_compare(f, nf, cfg)
    if r:
        r.message = "f and its normal form differ in support"
    return r


def chk_truth_conditions(case, cfg):
    f = case.formulas["f"]
    try:
        res = resolutions(f, cfg.resolution_cap)
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    r = _sweep_compare(f, tensor_fold(res), cfg, singletons=True)
    if r:
        r.message = "f and the standard disjunction of its resolutions differ in truth"
    return r


def idisj_under_implication(f: Formula) -> bool:
    for g in subformulas(f):
        if isinstance(g, Implies) and not (is_standard(g.left) and is_standard(g.right)):
            return True
    return False


def gen_variant(rng, cfg):
    return Case({"f": _regen(rng, cfg, guard=lambda f: not idisj_under_implication(f))})


def chk_standard_variant(case, cfg):
    f = case.formulas["f"]
    if idisj_under_implication(f):
        return None
    r = _sweep_compare(f, standard_variant(f), cfg, singletons=True)
    if r:
        r.message = "f and its standard variant differ in truth"
    return r


def chk_resolution_count(case, cfg):
    f = case.formulas["f"]
    try:
        raw = resolutions(f, cfg.resolution_cap, dedup=False)
        res = resolutions(f, cfg.resolution_cap)
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    if len(raw) != count_resolutions(f):
        return Fail(f"{len(raw)} raw resolutions, recurrence predicts {count_resolutions(f)}")
    if not res or len(res) > len(raw) or len(set(res)) != len(res):
        return Fail("deduplicated resolution list is malformed")
    if not all(is_standard(a) for a in res):
        return Fail("a resolution is not standard")
    return None


def gen_roundtrip(rng, cfg):
    dialect = rng.choice([Dialect.INQI, Dialect.MT0])
    f = random_formula(replace(cfg, dialect=dialect), rng)
    return Case({"f": f})


def chk_roundtrip(case, cfg):
    f = case.formulas["f"]
    text = render_formula(f)
    back = parse_formula(text, Dialect.MT0 if has_modality(f) else Dialect.INQI)
    if back != f:
        return Fail(f"{text!r} parses back to {render_formula(back)!r}")
    return None


# --------------------------------------------------------------------------
# decision-procedure suites


def chk_conservativity(case, cfg):
    f = case.formulas["f"]
    if not is_standard(f):
        return None
    ipl, cpl = ipl_valid(f), cpl_valid(f)
    if valid(f, "inqi").valid != ipl:
        return Fail(f"InqI validity differs from IPL ({ipl})")
    if valid(f, "inqb").valid != cpl:
        return Fail(f"InqB validity differs from CPL ({cpl})")
    if ipl:
        cm = countermodel_search(f, "inqi", cfg.search_worlds)
        if cm:
            return Fail("IPL-valid formula has a countermodel", *cm)
    if cpl:
        cm = countermodel_search(f, "inqb", cfg.search_worlds)
        if cm:
            return Fail("CPL-valid formula has a classical countermodel", *cm)
    elif countermodel_search(f, "inqb", 1) is None:
        return Fail("CPL-invalid formula has no one-world classical countermodel")
    return None


def chk_decider_soundness(case, cfg):
    f = case.formulas["f"]
    for system in ("inqi", "inqb"):
        try:
            v = valid(f, system, cap=cfg.resolution_cap)
        except ResolutionExplosion as exc:
            raise Skip(str(exc)) from exc
        cm = countermodel_search(f, system, cfg.search_worlds)
        if v.valid and cm is not None:
            return Fail(f"{system}: judged valid but falsified", *cm)
        if cm is not None:
            m, t = cm
            if supports(m, t, f):
                return Fail(f"{system}: reported countermodel supports f", m, t)
    return None


def gen_disjunction(rng, cfg):
    n = rng.randint(2, 3)
    return Case({f"d{i}": _maybe_valid(rng, cfg) for i in range(n)})


def chk_disjunction(case, cfg):
    ds = [f for _, f in sorted(case.formulas.items())]
    try:
        each = [valid(d, "inqi", cap=cfg.resolution_cap).valid for d in ds]
        tens = valid(tensor_fold(ds), "inqi", cap=cfg.resolution_cap).valid
        inq = valid(idisj_fold(ds), "inqi", cap=cfg.resolution_cap).valid
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    if tens and not any(each):
        return Fail("standard disjunction valid but no disjunct is")
    if inq and not any(each):
        return Fail("inquisitive disjunction valid but no disjunct is")
    if tens != inq:
        return Fail(f"standard disjunction {tens}, inquisitive disjunction {inq}")
    return None


def gen_split(rng, cfg):
    alpha = _regen(rng, cfg, standard=True)
    a = _maybe_valid(rng, cfg) if rng.random() < 0.7 else alpha
    b = _regen(rng, cfg)
    return Case({"alpha": alpha, "a": a, "b": b})


def chk_split(case, cfg):
    alpha, a, b = case.formulas["alpha"], case.formulas["a"], case.formulas["b"]
    if not is_standard(alpha):
        return None
    try:
        whole = entails([alpha], "inqi", IDisj(a, b), cap=cfg.resolution_cap).valid
        if not whole:
            return None
        left = entails([alpha], "inqi", a, cap=cfg.resolution_cap).valid
        right = entails([alpha], "inqi", b, cap=cfg.resolution_cap).valid
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    if not (left or right):
        return Fail("standard premise entails a \\/ b but neither disjunct")
    return None


def gen_internal_split(rng, cfg):
    return Case(
        {"alpha": _regen(rng, cfg, standard=True), "a": _regen(rng, cfg), "b": _regen(rng, cfg)}
    )


def chk_internal_split(case, cfg):
    alpha, a, b = case.formulas["alpha"], case.formulas["a"], case.formulas["b"]
    if not is_standard(alpha):
        return None
    prem = Implies(alpha, IDisj(a, b))
    concl = IDisj(Implies(alpha, a), Implies(alpha, b))
    try:
        ok = entails([prem], "inqi", concl, cap=cfg.resolution_cap).valid
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    if not ok:
        cm = countermodel_search(concl, "inqi", 3, [prem])
        return Fail("internal split entailment rejected", *(cm or (None, None)))
    return None


def gen_glivenko(rng, cfg):
    return Case({"f": _regen(rng, cfg), "g": _regen(rng, cfg)})


def chk_glivenko(case, cfg):
    f, g = case.formulas["f"], case.formulas["g"]
    cap = cfg.resolution_cap
    try:
        b = valid(f, "inqb", cap=cap).valid
        i = valid(negative_translation(f, cap), "inqi", cap=cap).valid
        if b != i:
            return Fail(f"InqB validity {b} but InqI validity of the translation {i}")
        eb = entails([g], "inqb", f, cap=cap).valid
        ei = entails([negative_translation(g, cap)], "inqi", negative_translation(f, cap), cap=cap).valid
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    if eb != ei:
        return Fail(f"g |= f is {eb} in InqB but {ei} for the translations in InqI")
    return None


def chk_box_translation(case, cfg):
    f = case.formulas["f"]
    try:
        v = valid(f, "inqi", cap=cfg.resolution_cap).valid
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    fb = box_translation(f)
    if v:
        cm = countermodel_search(fb, "mt0", min(cfg.search_worlds, 3))
        if cm:
            return Fail("valid formula whose translation has an S4 countermodel", *cm)
        return None
    cm = countermodel_search(f, "inqi", cfg.search_worlds)
    if cm is not None:
        m, t = cm
        if supports_mt0(m.as_kind(Kind.S4), t, fb):
            return Fail("InqI countermodel supports the translation", m, t)
    return None


def gen_rho(rng, cfg):
    f = _regen(rng, replace(cfg, dialect=Dialect.INQI))
    m = random_model(cfg, rng)
    return Case({"f": f}, m, {"t": random_team(rng, m)})


def chk_rho(case, cfg):
    m, f, t = case.model, case.formulas["f"], case.teams["t"]
    rm = rho_model(m)
    if validate_model(rm) is not None:
        return Fail("cluster model is not intuitionistic", m)
    lhs = supports_mt0(m, t, box_translation(f))
    rhs = supports(rm, rho_team(m, t), f)
    if lhs != rhs:
        return Fail(f"translation supported {lhs} in the S4 model, f supported {rhs} in the cluster model", m, t)
    return None


def chk_deduction(case, cfg):
    f, g = case.formulas["f"], case.formulas["g"]
    cap = cfg.resolution_cap
    try:
        for system in ("inqi", "inqb"):
            a = entails([g], system, f, cap=cap, method="cases").valid
            b = valid(Implies(g, f), system, cap=cap).valid
            c = entails([g], system, f, cap=cap).valid
            if not a == b == c:
                return Fail(f"{system}: cases {a}, implication {b}, curried {c}")
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    return None


ARMSTRONG = [
    ("transitivity", ["=(p,q)", "=(q,r)"], "=(p,r)"),
    ("augmentation", ["=(p,r)"], "?p & ?q -> ?r"),
    ("reflexivity", [], "?p & ?q -> ?p"),
    ("union", ["=(p,q)", "=(p,r)"], "?p -> ?q & ?r"),
    ("pseudo-transitivity", ["=(p,q)", "?q & ?r -> ?s"], "?p & ?r -> ?s"),
]


def gen_armstrong(rng, cfg):
    i = rng.randrange(len(ARMSTRONG))
    pool = list(cfg.atom_pool) + ["s", "u", "v"]
    names = rng.sample(sorted(set(pool)), 4)
    ren = dict(zip("pqrs", names))

    def rn(f):
        if isinstance(f, Atom):
            return Atom(ren.get(f.name, f.name))
        if isinstance(f, Falsum):
            return f
        return type(f)(*(rn(c) for c in children(f)))

    _, prem, concl = ARMSTRONG[i]
    fs = {f"p{k}": rn(parse_formula(p)) for k, p in enumerate(prem)}
    fs["c"] = rn(parse_formula(concl))
    return Case(fs)


def chk_armstrong(case, cfg):
    prem = [f for k, f in sorted(case.formulas.items()) if k.startswith("p")]
    concl = case.formulas["c"]
    for system in ("inqi", "inqb"):
        if not entails(prem, system, concl, method="cases").valid:
            return Fail(f"dependency entailment fails in {system}")
    return None


def gen_model_pair(rng, cfg):
    kind = rng.choice(list(Kind))
    m = random_model(replace(cfg, kind=kind), rng)
    return Case({}, m, {"t": random_team(rng, m), "s": random_team(rng, m), "u": random_team(rng, m)})


def chk_model_invariants(case, cfg):
    m = case.model
    t, s, u = case.teams["t"], case.teams["s"], case.teams["u"]
    if close_relation(m.up) != m.up:
        return Fail("closing a closed relation changed it")
    if r_image(m, t) & ~r_image(m, t | s):
        return Fail("R[.] is not monotone")
    if r_image(m, r_image(m, t)) != r_image(m, t):
        return Fail("R[R[t]] differs from R[t]")
    if not is_extension(m, t, t):
        return Fail("extension is not reflexive")
    if is_extension(m, s, t) and is_extension(m, u, s) and not is_extension(m, u, t):
        return Fail("extension is not transitive")
    if m.kind is Kind.INTUITIONISTIC:
        if r_image(m, min_set(m, t)) != r_image(m, t):
            return Fail("R[min(t)] differs from R[t]")
        if not are_isomorphic(rho_model(m.as_kind(Kind.S4)), m):
            return Fail("cluster model of an intuitionistic model is not isomorphic to it")
        if validate_model(add_fresh_root(m)) is not None:
            return Fail("adding a root broke the model invariants")
    if validate_model(disjoint_union(m, m)) is not None:
        return Fail("disjoint union broke the model invariants")
    if m.kind is not Kind.INTUITIONISTIC and validate_model(rho_model(m.as_kind(Kind.S4))) is not None:
        return Fail("cluster model is not intuitionistic")
    return None


# --------------------------------------------------------------------------
# proof suites


def gen_proof(rng, cfg):
    system = rng.choice(list(ProofSystem))
    return Case({}, proof=random_proof(cfg, rng, system), system=system.value)


def _entailed(seq: Sequent, system: str, cap: int) -> bool:
    return entails(seq, "inqb" if system == "inqb" else "inqi", cap=cap, method="cases").valid


def chk_proof_soundness(case, cfg):
    try:
        seq = check_proof(case.proof, case.system)
    except ProofError as exc:
        return Fail(f"generated proof rejected: {exc}")
    try:
        ok = _entailed(seq, case.system, cfg.resolution_cap)
    except ResolutionExplosion as exc:
        raise Skip(str(exc)) from exc
    if not ok:
        return Fail(f"accepted proof of an invalid sequent: {seq}")
    return None


def chk_proof_monotonicity(case, cfg):
    order = [ProofSystem.INQI_MINUS, ProofSystem.INQI, ProofSystem.INQB]
    accepted = []
    for s in order:
        try:
            check_proof(case.proof, s)
            accepted.append(True)
        except ProofError:
            accepted.append(False)
    for small, big in zip(accepted, accepted[1:]):
        if small and not big:
            return Fail(f"acceptance per system {accepted} is not monotone")
    if not accepted[order.index(ProofSystem(case.system))]:
        return Fail("proof rejected in the system it was generated for")
    return None


def _strip_unused(p: ProofTree) -> ProofTree:
    from .proofs import DISCHARGE_SLOTS

    prem = tuple(_strip_unused(c) for c in p.premises)
    dis = list(p.discharge)
    for k, slot in enumerate(DISCHARGE_SLOTS.get(p.rule, ())):
        if k < len(dis) and dis[k] is not None and dis[k] not in _hyp_labels(prem[slot]):
            dis[k] = None
    return replace(p, premises=prem, discharge=tuple(dis))


def _hyp_labels(p: ProofTree) -> set[str]:
    if p.rule == "hyp":
        return {p.label}
    return set().union(*(_hyp_labels(c) for c in p.premises))


def chk_discharge_hygiene(case, cfg):
    def verdict(p):
        try:
            return str(check_proof(p, case.system))
        except ProofError as exc:
            return type(exc).__name__

    before, after = verdict(case.proof), verdict(_strip_unused(case.proof))
    if before != after:
        return Fail(f"removing unused discharges changed the verdict: {before} vs {after}")
    return None


# --------------------------------------------------------------------------
# catalog

_SMALL = {"max_depth": 3, "max_worlds": 4}
_SWEEP = {"max_depth": 4, "max_worlds": 3}
_DECIDE = {"max_depth": 3, "max_worlds": 4}
_S4 = {"kind": Kind.S4, "dialect": Dialect.MT0}

for _s in [
    Suite("persistency", "support persists to every extension of the team", gen_fmt, chk_persistency, defaults=_SMALL),
    Suite("empty_team", "the empty team supports every formula", gen_fmt, chk_empty_team, defaults=_SMALL),
    Suite("up_set", "support at t equals support at R[t]", gen_fmt, chk_up_set, defaults=_SMALL),
    Suite("minimal_set", "support at t equals support at its minimal worlds", gen_fmt, chk_minimal_set, defaults=_SMALL),
    Suite("restriction", "support is invariant under the submodel generated by the team", gen_fmt, chk_restriction, defaults=_SMALL),
    Suite("single_world", "an unsupported formula is false at a fresh root", gen_fmt, chk_single_world, defaults=_SMALL),
    Suite("polar_question", "?a is supported iff the truth value of a is defined and constant", gen_polar, chk_polar, defaults=_SMALL),
    Suite("truth_value_persistency", "defined truth values persist upward", gen_fmt, chk_truth_value_persistency, defaults=_SMALL),
    Suite("tensor_split", "complement split agrees with covering pairs for |", gen_two_mt, chk_tensor_split, defaults=_SMALL),
    Suite("standard_fast_path", "standard formulas: support is truth everywhere, truth is Kripke truth", gen_std_mt, chk_standard_fast_path, defaults=_SMALL),
    Suite("truth_conditional_implication", "a -> b is truth-conditional whenever b is", gen_two_mt, chk_truth_conditional_implication, cases=300, defaults=_SMALL),
    Suite("engine_agreement", "evaluator, literal clauses and table engine agree", gen_fmt, chk_engines, cases=300, defaults=_SMALL),
    Suite("engine_agreement_mt0", "MT0 evaluator, literal clauses and table engine agree", gen_fmt, chk_engines, cases=300, defaults={"max_worlds": 3, "max_depth": 3}, forced=_S4),
    Suite("mt0_persistency", "MT0 support is closed under subteams", gen_fmt, chk_mt0_persistency, defaults={"max_worlds": 4}, forced=_S4),
    Suite("mt0_dependence_atom", "the primitive dependence clause matches its definition in MT0", gen_mt0_dependence, chk_mt0_dependence, forced={"kind": Kind.S4}),
    Suite("dependence", "implication, pairwise and functional forms of dependence agree", gen_dependence, chk_dependence, defaults=_SMALL),
    Suite("dependence_exhaustive", "dependence forms agree on every model with at most 3 worlds", gen_dependence_instance, chk_dependence_exhaustive, cases=len(DEPENDENCE_INSTANCES), defaults={"max_worlds": 3}),
    Suite("normal_form_equivalence", "f and its normal form agree on every team of small models", gen_formula, chk_normal_form, cases=200, defaults={"max_depth": 4, "max_worlds": 4}),
    Suite("truth_conditions", "f is true where the standard disjunction of its resolutions is", gen_formula, chk_truth_conditions, cases=200, defaults=_SWEEP),
    Suite("standard_variant_truth", "without \\/ under ->, f and its standard variant agree on truth", gen_variant, chk_standard_variant, cases=200, defaults=_SWEEP),
    Suite("resolution_count", "resolution counts follow the recurrence", gen_formula, chk_resolution_count, defaults={"max_depth": 4}),
    Suite("roundtrip", "rendering then parsing gives the same formula", gen_roundtrip, chk_roundtrip, defaults={"max_depth": 5}),
    Suite("conservativity", "on standard formulas InqI/InqB validity is IPL/CPL validity", gen_std_formula, chk_conservativity, cases=200, defaults=_DECIDE),
    Suite("decider_soundness", "valid formulas have no small countermodel; countermodels are genuine", gen_formula, chk_decider_soundness, cases=200, defaults={"max_depth": 3, "search_worlds": 3}),
    Suite("disjunction_property", "a valid disjunction has a valid disjunct; | and \\/ agree on validity", gen_disjunction, chk_disjunction, cases=300, defaults=_DECIDE),
    Suite("split_property", "a standard premise entailing a \\/ b entails a disjunct", gen_split, chk_split, cases=300, defaults=_DECIDE),
    Suite("internal_split", "s -> (a \\/ b) entails (s -> a) \\/ (s -> b) for standard s", gen_internal_split, chk_internal_split, cases=300, defaults=_DECIDE),
    Suite("glivenko", "InqB validity and entailment match InqI on negative translations", gen_glivenko, chk_glivenko, cases=300, defaults=_DECIDE),
    Suite("box_translation", "the box translation preserves validity and countermodels", gen_formula, chk_box_translation, cases=150, defaults={"max_depth": 3, "search_worlds": 3}),
    Suite("rho_claim", "an S4 model supports the translation iff its cluster model supports f", gen_rho, chk_rho, defaults={"max_worlds": 4, "max_depth": 3}, forced={"kind": Kind.S4}),
    Suite("deduction_theorem", "g |= f iff |= g -> f, by both entailment methods", gen_glivenko, chk_deduction, cases=300, defaults=_DECIDE),
    Suite("armstrong", "Armstrong rules for dependence are valid entailments", gen_armstrong, chk_armstrong, cases=50),
    Suite("model_invariants", "closure, R-image, extension, minimal set and construction invariants", gen_model_pair, chk_model_invariants, defaults={"max_worlds": 5}),
    Suite("proof_soundness", "random accepted derivations prove valid sequents", gen_proof, chk_proof_soundness, cases=300, defaults={"atom_pool": ("p", "q")}),
    Suite("proof_monotonicity", "acceptance grows from InqI-minus to InqI to InqB", gen_proof, chk_proof_monotonicity, cases=300, defaults={"atom_pool": ("p", "q")}),
    Suite("discharge_hygiene", "removing unused discharge labels never changes the verdict", gen_proof, chk_discharge_hygiene, cases=300, defaults={"atom_pool": ("p", "q")}),
]:
    register_suite(_s)

STRUCTURAL_SUITES = (
    "persistency",
    "empty_team",
    "up_set",
    "minimal_set",
    "restriction",
    "single_world",
    "polar_question",
    "truth_value_persistency",
    "tensor_split",
    "standard_fast_path",
)
