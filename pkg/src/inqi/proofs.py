"""Natural-deduction proof trees and their checker.

A proof is a tree of rule applications.  Leaves are ``hyp`` nodes carrying a
label; rules that discharge assumptions name the label(s) they bind, and a
label binds only inside the designated premise subtree.  Discharge may be
vacuous.  Premise order per rule:

=========  =====================================  ==========================
rule       premises                               discharge
=========  =====================================  ==========================
andI       a, b                                   -
andE1/2    a & b                                  -
implI      b                                      x (binds a in premise 0)
implE      a, a -> b                              -
iorI1/2    a  /  b                                -
iorE       c, c, a \\/ b                           x, y (premises 0 and 1)
orI1/2     a  /  b                                -
orE        c, c, a | b                            x, y; c standard
orA        a | (b | c)                            -
orC        a | b                                  -
orD        a | (b \\/ c)                           -
orR        a', b', a | b                          x, y (premises 0 and 1)
botE       bot                                    -
split      s -> (a \\/ b)                          -; s standard
dne        ~~s                                    -; s standard
=========  =====================================  ==========================
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .decide import Sequent
from .errors import FormulaSyntaxError, InqError
from .syntax import (
    And,
    Falsum,
    Formula,
    IDisj,
    Implies,
    Tensor,
    is_standard,
    parse_formula,
    render_formula,
)


class ProofSystem(str, enum.Enum):
    INQI = "inqi"
    INQB = "inqb"
    INQI_MINUS = "inqi-minus"


ARITY = {
    "hyp": 0,
    "andI": 2,
    "andE1": 1,
    "andE2": 1,
    "implI": 1,
    "implE": 2,
    "iorI1": 1,
    "iorI2": 1,
    "iorE": 3,
    "orI1": 1,
    "orI2": 1,
    "orE": 3,
    "orA": 1,
    "orC": 1,
    "orD": 1,
    "orR": 3,
    "botE": 1,
    "split": 1,
    "dne": 1,
}
RULES = tuple(ARITY)
TENSOR_RULES = frozenset({"orI1", "orI2", "orE", "orA", "orC", "orD", "orR"})
# label slots: premise index bound by each discharge position
DISCHARGE_SLOTS = {"implI": (0,), "iorE": (0, 1), "orE": (0, 1), "orR": (0, 1)}


def rules_of(system: ProofSystem | str) -> frozenset[str]:
    system = ProofSystem(system)
    rules = frozenset(RULES)
    if system is ProofSystem.INQB:
        return rules
    rules = rules - {"dne"}
    if system is ProofSystem.INQI_MINUS:
        rules = rules - TENSOR_RULES
    return rules


class ProofError(InqError):
    def __init__(self, path: tuple[int, ...], message: str):
        self.path = tuple(path)
        super().__init__(f"at {format_path(path)}: {message}")


class RuleMismatch(ProofError):
    pass


class SideConditionViolation(ProofError):
    def __init__(self, path, message: str, condition: str):
        self.condition = condition
        super().__init__(path, message)


class RuleUnavailable(ProofError):
    def __init__(self, path, rule: str, system: ProofSystem):
        self.rule = rule
        self.system = system
        super().__init__(path, f"rule {rule} is not part of {system.value}")


class DischargeError(ProofError):
    pass


class ProofFormatError(InqError, ValueError):
    """The JSON does not describe a proof tree."""


def format_path(path: tuple[int, ...]) -> str:
    return "root" + "".join(f".{i}" for i in path)


@dataclass(frozen=True)
class ProofTree:
    rule: str
    conclusion: Formula
    premises: tuple["ProofTree", ...] = ()
    discharge: tuple[str | None, ...] = ()
    label: str | None = None

    @classmethod
    def from_dict(cls, data: Any, path: tuple[int, ...] = ()) -> "ProofTree":
        where = format_path(path)
        if not isinstance(data, dict):
            raise ProofFormatError(f"{where}: proof node must be an object")
        rule = data.get("rule")
        if rule not in ARITY:
            raise ProofFormatError(f"{where}: unknown rule {rule!r}")
        text = data.get("conclusion")
        if not isinstance(text, str):
            raise ProofFormatError(f"{where}: missing conclusion")
        try:
            concl = parse_formula(text)
        except (FormulaSyntaxError, InqError) as exc:
            raise ProofFormatError(f"{where}: bad conclusion {text!r}: {exc}") from exc
        raw = data.get("premises", [])
        if not isinstance(raw, list):
            raise ProofFormatError(f"{where}: premises must be a list")
        prem = tuple(cls.from_dict(p, path + (i,)) for i, p in enumerate(raw))
        dis = data.get("discharge")
        if dis is None:
            dis = ()
        elif isinstance(dis, str):
            dis = (dis,)
        elif isinstance(dis, list) and all(d is None or isinstance(d, str) for d in dis):
            dis = tuple(dis)
        else:
            raise ProofFormatError(f"{where}: discharge must be a label or list of labels")
        label = data.get("label")
        if rule == "hyp" and not isinstance(label, str):
            raise ProofFormatError(f"{where}: hyp needs a string label")
        return cls(rule, concl, prem, dis, label)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"rule": self.rule, "conclusion": render_formula(self.conclusion)}
        if self.label is not None:
            out["label"] = self.label
        if self.discharge:
            out["discharge"] = self.discharge[0] if len(self.discharge) == 1 else list(self.discharge)
        if self.premises:
            out["premises"] = [p.to_dict() for p in self.premises]
        return out

    @classmethod
    def from_json(cls, text: str) -> "ProofTree":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProofFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


PROOF_DIR = Path(__file__).parent / "data" / "proofs"


def corpus_names() -> list[str]:
    return sorted(p.stem for p in PROOF_DIR.glob("*.json") if p.stem != "manifest")


def corpus_manifest() -> list[dict]:
    return json.loads((PROOF_DIR / "manifest.json").read_text())["proofs"]


def load_proof(path: str | Path) -> ProofTree:
    """Load a proof JSON file; bare corpus names (``dne_p``, ``dne_p.json``) also work."""
    p = Path(path)
    if not p.exists():
        shipped = PROOF_DIR / (p.name.removesuffix(".json") + ".json")
        if shipped.exists() and p.name.removesuffix(".json") != "manifest":
            p = shipped
    try:
        text = p.read_text()
    except OSError as exc:
        raise ProofFormatError(f"cannot read proof file {path}: {exc.strerror}") from exc
    return ProofTree.from_json(text)


@dataclass
class _Open:
    """Undischarged hypotheses: label -> formula, in first-use order."""

    hyps: dict[str, Formula] = field(default_factory=dict)

    def merge(self, other: "_Open", path) -> None:
        for lab, f in other.hyps.items():
            prev = self.hyps.get(lab)
            if prev is not None and prev != f:
                raise DischargeError(
                    path,
                    f"label {lab!r} names both {render_formula(prev)} and {render_formula(f)}",
                )
            self.hyps.setdefault(lab, f)


class _Checker:
    def __init__(self, system: ProofSystem):
        self.system = system
        self.rules = rules_of(system)

    def check(self, node: ProofTree, path: tuple[int, ...]) -> _Open:
        rule = node.rule
        if rule not in self.rules:
            raise RuleUnavailable(path, rule, self.system)
        if len(node.premises) != ARITY[rule]:
            raise RuleMismatch(
                path, f"{rule} takes {ARITY[rule]} premise(s), got {len(node.premises)}"
            )
        slots = DISCHARGE_SLOTS.get(rule, ())
        if len(node.discharge) > len(slots):
            raise DischargeError(path, f"{rule} discharges at most {len(slots)} label(s)")
        if rule == "hyp":
            return _Open({node.label: node.conclusion})
        self.schema(node, path)
        opened = [self.check(p, path + (i,)) for i, p in enumerate(node.premises)]
        expected = self.discharged_formulas(node)
        for slot, label in zip(slots, node.discharge):
            if label is None:
                continue
            sub = opened[slot]
            f = sub.hyps.get(label)
            if f is not None and f != expected[slot]:
                raise DischargeError(
                    path + (slot,),
                    f"label {label!r} discharges {render_formula(expected[slot])} "
                    f"but marks {render_formula(f)}",
                )
            sub.hyps.pop(label, None)
        out = _Open()
        for sub in opened:
            out.merge(sub, path)
        return out

    def discharged_formulas(self, node: ProofTree) -> dict[int, Formula]:
        rule, c, ps = node.rule, node.conclusion, node.premises
        if rule == "implI":
            return {0: c.left}
        if rule in ("iorE", "orE"):
            d = ps[2].conclusion
            return {0: d.left, 1: d.right}
        if rule == "orR":
            d = ps[2].conclusion
            return {0: d.left, 1: d.right}
        return {}

    def schema(self, node: ProofTree, path: tuple[int, ...]) -> None:
        rule, c = node.rule, node.conclusion
        ps = [p.conclusion for p in node.premises]

        def need(cond: bool, what: str) -> None:
            if not cond:
                raise RuleMismatch(path, f"{rule}: {what}")

        if rule == "andI":
            need(c == And(ps[0], ps[1]), "conclusion must be the conjunction of the premises")
        elif rule in ("andE1", "andE2"):
            need(isinstance(ps[0], And), "premise must be a conjunction")
            part = ps[0].left if rule == "andE1" else ps[0].right
            need(c == part, "conclusion must be the selected conjunct")
        elif rule == "implI":
            need(isinstance(c, Implies), "conclusion must be an implication")
            need(ps[0] == c.right, "premise must be the consequent")
        elif rule == "implE":
            need(ps[1] == Implies(ps[0], c), "second premise must be first premise -> conclusion")
        elif rule in ("iorI1", "iorI2", "orI1", "orI2"):
            cls = IDisj if rule.startswith("ior") else Tensor
            need(isinstance(c, cls), f"conclusion must be a {cls.__name__} disjunction")
            part = c.left if rule.endswith("1") else c.right
            need(ps[0] == part, "premise must be the selected disjunct")
        elif rule in ("iorE", "orE"):
            cls = IDisj if rule == "iorE" else Tensor
            need(isinstance(ps[2], cls), f"third premise must be a {cls.__name__} disjunction")
            need(ps[0] == c and ps[1] == c, "both case premises must equal the conclusion")
            if rule == "orE" and not is_standard(c):
                raise SideConditionViolation(
                    path, "orE: conclusion must be a standard formula", "standard-conclusion"
                )
        elif rule == "orA":
            p = ps[0]
            need(isinstance(p, Tensor) and isinstance(p.right, Tensor), "premise must be a | (b | c)")
            need(
                c == Tensor(Tensor(p.left, p.right.left), p.right.right),
                "conclusion must be (a | b) | c",
            )
        elif rule == "orC":
            p = ps[0]
            need(isinstance(p, Tensor), "premise must be a | b")
            need(c == Tensor(p.right, p.left), "conclusion must be b | a")
        elif rule == "orD":
            p = ps[0]
            need(isinstance(p, Tensor) and isinstance(p.right, IDisj), "premise must be a | (b \\/ c)")
            a, b, d = p.left, p.right.left, p.right.right
            need(c == IDisj(Tensor(a, b), Tensor(a, d)), "conclusion must be (a | b) \\/ (a | c)")
        elif rule == "orR":
            need(isinstance(ps[2], Tensor), "third premise must be a | b")
            need(c == Tensor(ps[0], ps[1]), "conclusion must join the two subproof conclusions with |")
        elif rule == "botE":
            need(isinstance(ps[0], Falsum), "premise must be bot")
        elif rule == "split":
            p = ps[0]
            need(isinstance(p, Implies) and isinstance(p.right, IDisj), "premise must be s -> (a \\/ b)")
            s, a, b = p.left, p.right.left, p.right.right
            need(c == IDisj(Implies(s, a), Implies(s, b)), "conclusion must be (s -> a) \\/ (s -> b)")
            if not is_standard(s):
                raise SideConditionViolation(
                    path, "split: antecedent must be a standard formula", "standard-antecedent"
                )
        elif rule == "dne":
            need(ps[0] == Implies(Implies(c, Falsum()), Falsum()), "premise must be ~~conclusion")
            if not is_standard(c):
                raise SideConditionViolation(
                    path, "dne: conclusion must be a standard formula", "standard-dne"
                )
        else:  # pragma: no cover - ARITY and this table list the same rules
            raise RuleMismatch(path, f"unknown rule {rule}")


def check_proof(p: ProofTree, system: ProofSystem | str = ProofSystem.INQI) -> Sequent:
    """Check ``p`` and return the sequent it proves (open hypotheses |- root)."""
    opened = _Checker(ProofSystem(system)).check(p, ())
    seen: list[Formula] = []
    for f in opened.hyps.values():
        if f not in seen:
            seen.append(f)
    return Sequent(seen, p.conclusion)


def open_labels(p: ProofTree) -> dict[str, Formula]:
    """Undischarged hypotheses of an accepted proof, keyed by label."""
    return dict(_Checker(ProofSystem.INQB).check(p, ()).hyps)
