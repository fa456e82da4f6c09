"""Decision procedures: IPL (G4ip), CPL (truth tables), InqI/InqB via resolutions.

Validity of an arbitrary formula reduces to its resolutions: an InqI formula
is valid iff one of its resolutions is an intuitionistic theorem, and an InqB
formula iff one of them is a classical tautology.  Entailment from finitely
many premises is validity of the curried implication, or equivalently a case
split over the premises' resolutions when the curried form is too large.

Countermodel search is independent of the deciders: it enumerates finite
models in a fixed order and returns the first falsifying (model, team).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DialectError, ResolutionExplosion, SizeLimit
from .models import Kind, KripkeModel, Team
from .normalform import RESOLUTION_CAP, resolutions
from .semantics import Evaluator
from .syntax import (
    And,
    Atom,
    Falsum,
    Formula,
    IDisj,
    Implies,
    Tensor,
    atoms_of,
    has_modality,
    is_standard,
    render_formula,
)
from .tables import sweep

MAX_SEARCH_WORLDS = 5
DEFAULT_SEARCH_WORLDS = 4


class System(str, enum.Enum):
    INQI = "inqi"
    INQB = "inqb"
    IPL = "ipl"
    CPL = "cpl"
    MT0 = "mt0"


@dataclass(frozen=True)
class Sequent:
    premises: tuple[Formula, ...]
    conclusion: Formula

    def __init__(self, premises: Iterable[Formula], conclusion: Formula):
        object.__setattr__(self, "premises", tuple(premises))
        object.__setattr__(self, "conclusion", conclusion)

    def as_implication(self) -> Formula:
        return reduce(lambda acc, p: Implies(p, acc), reversed(self.premises), self.conclusion)

    def __str__(self) -> str:
        lhs = ", ".join(render_formula(p) for p in self.premises)
        return f"{lhs} |- {render_formula(self.conclusion)}" if lhs else f"|- {render_formula(self.conclusion)}"


@dataclass
class Verdict:
    valid: bool
    system: System
    resolution: Formula | None = None
    countermodel: tuple[KripkeModel, Team] | None = None
    checked: list[Formula] = field(default_factory=list, repr=False)

    @property
    def witness(self):
        return self.resolution if self.valid else self.countermodel

    def to_dict(self) -> dict:
        out: dict = {"valid": self.valid, "system": self.system.value}
        if self.resolution is not None:
            out["resolution"] = render_formula(self.resolution)
        if self.countermodel is not None:
            m, t = self.countermodel
            out["countermodel"] = {"model": m.to_dict(), "team": m.team_names(t)}
        return out


# --------------------------------------------------------------------------
# IPL: G4ip


def _decompose(gamma: frozenset) -> tuple[list[frozenset], bool] | None:
    """Apply one invertible left rule if any applies.

    Returns the list of premise contexts (all must be provable), or ``None``
    when the context is irreducible.  A closed context (contains falsum)
    yields an empty list.
    """
    for f in gamma:
        if isinstance(f, Falsum):
            return []
        rest = gamma - {f}
        if isinstance(f, And):
            return [rest | {f.left, f.right}]
        if isinstance(f, Tensor):
            return [rest | {f.left}, rest | {f.right}]
        if isinstance(f, Implies):
            a, b = f.left, f.right
            if isinstance(a, Atom) and a in gamma:
                return [rest | {b}]
            if isinstance(a, Falsum):
                return [rest]
            if isinstance(a, And):
                return [rest | {Implies(a.left, Implies(a.right, b))}]
            if isinstance(a, Tensor):
                return [rest | {Implies(a.left, b), Implies(a.right, b)}]
    return None


class _G4ip:
    def __init__(self):
        self.memo: dict[tuple[frozenset, Formula], bool] = {}

    def prove(self, gamma: frozenset, goal: Formula) -> bool:
        key = (gamma, goal)
        r = self.memo.get(key)
        if r is None:
            self.memo[key] = False  # cycles cannot occur, but be safe
            r = self._prove(gamma, goal)
            self.memo[key] = r
        return r

    def _prove(self, gamma: frozenset, goal: Formula) -> bool:
        if goal in gamma:
            return True
        dec = _decompose(gamma)
        if dec is not None:
            return all(self.prove(g, goal) for g in dec)
        if isinstance(goal, And):
            return self.prove(gamma, goal.left) and self.prove(gamma, goal.right)
        if isinstance(goal, Implies):
            return self.prove(gamma | {goal.left}, goal.right)
        if isinstance(goal, Tensor):
            if self.prove(gamma, goal.left) or self.prove(gamma, goal.right):
                return True
        for f in gamma:
            if isinstance(f, Implies) and isinstance(f.left, Implies):
                c, d, b = f.left.left, f.left.right, f.right
                rest = gamma - {f}
                if self.prove(rest | {Implies(d, b)}, Implies(c, d)) and self.prove(
                    rest | {b}, goal
                ):
                    return True
        return False


def ipl_valid(a: Formula) -> bool:
    if not is_standard(a):
        raise DialectError("ipl_valid expects a standard formula")
    return _G4ip().prove(frozenset(), a)


# --------------------------------------------------------------------------
# CPL: bit-parallel truth tables


def _tt(f: Formula, env: dict[str, int], full: int) -> int:
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Falsum):
        return 0
    if isinstance(f, And):
        return _tt(f.left, env, full) & _tt(f.right, env, full)
    if isinstance(f, Tensor):
        return _tt(f.left, env, full) | _tt(f.right, env, full)
    if isinstance(f, Implies):
        return (full & ~_tt(f.left, env, full)) | _tt(f.right, env, full)
    raise DialectError("cpl_valid expects a standard formula")


def cpl_valid(a: Formula) -> bool:
    if not is_standard(a):
        raise DialectError("cpl_valid expects a standard formula")
    names = sorted(atoms_of(a))
    rows = 1 << len(names)
    full = (1 << rows) - 1
    env = {}
    for k, p in enumerate(names):
        env[p] = sum(1 << r for r in range(rows) if r >> k & 1)
    return _tt(a, env, full) == full


# --------------------------------------------------------------------------
# countermodels


_SEARCH_KIND = {
    System.INQI: (Kind.INTUITIONISTIC, "inq"),
    System.IPL: (Kind.INTUITIONISTIC, "inq"),
    System.INQB: (Kind.CLASSICAL, "inq"),
    System.CPL: (Kind.CLASSICAL, "inq"),
    System.MT0: (Kind.S4, "mt0"),
}


def countermodel_search(
    f: Formula,
    system: System | str = System.INQI,
    max_worlds: int = DEFAULT_SEARCH_WORLDS,
    premises: Sequence[Formula] = (),
) -> tuple[KripkeModel, Team] | None:
    """First (model, team) supporting every premise but not ``f``.

    Models are visited by increasing size, then frame order, then valuation
    order (see :func:`inqi.models.enumerate_models`); teams by bitmask.
    """
    system = System(system)
    if max_worlds > MAX_SEARCH_WORLDS:
        raise SizeLimit(f"countermodel search is capped at {MAX_SEARCH_WORLDS} worlds")
    kind, mode = _SEARCH_KIND[system]
    if mode == "inq" and (has_modality(f) or any(has_modality(p) for p in premises)):
        raise DialectError("modal formulas are searched with system mt0")
    atoms = sorted(atoms_of(f).union(*(atoms_of(p) for p in premises)))
    for n in range(max_worlds + 1):
        for ft in sweep(n, atoms, kind, mode):
            bad = ~ft.table(f)
            for p in premises:
                bad = bad & ft.table(p)
            hits = np.flatnonzero(bad.ravel())
            if hits.size:
                v, t = divmod(int(hits[0]), ft.N)
                m = ft.model(v)
                ev = Evaluator(m, mode)
                if ev.supports(t, f) or not all(ev.supports(t, p) for p in premises):
                    raise AssertionError("table engine and evaluator disagree on a witness")
                return m, t
    return None


# --------------------------------------------------------------------------
# validity and entailment


def _uncurry(f: Formula) -> tuple[list[Formula], Formula]:
    premises = []
    while isinstance(f, Implies):
        premises.append(f.left)
        f = f.right
    return premises, f


def _base_decider(system: System):
    return ipl_valid if system in (System.INQI, System.IPL) else cpl_valid


def _split_entails(
    premises: Sequence[Formula], conclusion: Formula, system: System, cap: int
) -> Verdict:
    """Entailment by cases on the premises' resolutions.

    Each premise is equivalent to the inquisitive disjunction of its
    resolutions, so the premises entail the conclusion iff every choice of
    one resolution per premise does.  A set of standard premises entails an
    inquisitive disjunction iff it entails one disjunct, which turns each case
    into finitely many IPL (or CPL) checks.  An implication-chain conclusion
    first moves its antecedents into the premises (deduction theorem).
    """
    base = _base_decider(system)
    extra, conclusion = _uncurry(conclusion)
    premises = list(premises) + extra
    res_p = [resolutions(p, cap) for p in premises]
    res_c = resolutions(conclusion, cap)
    cases = 1
    for r in res_p:
        cases *= len(r)
    if cases * len(res_c) > cap:
        raise ResolutionExplosion(
            f"entailment needs {cases} x {len(res_c)} standard checks (cap {cap})"
        )
    verdict = Verdict(True, system)
    for combo in itertools.product(*res_p):
        if not any(base(Sequent(combo, a).as_implication()) for a in res_c):
            verdict.valid = False
            break
    return verdict


def valid(
    f: Formula,
    system: System | str = System.INQI,
    *,
    max_worlds: int | None = None,
    cap: int = RESOLUTION_CAP,
) -> Verdict:
    """Decide validity.  With ``max_worlds`` an invalid verdict carries a countermodel.

    When the resolution set of an implication chain is too large, the chain
    is decided as an entailment from its antecedents instead.
    """
    system = System(system)
    if has_modality(f):
        raise DialectError("validity is decided for modality-free formulas")
    if system in (System.IPL, System.CPL):
        if not is_standard(f):
            raise DialectError(f"{system.value} validity needs a standard formula")
        ok = _base_decider(system)(f)
        verdict = Verdict(ok, system, resolution=f if ok else None, checked=[f])
    elif system in (System.INQI, System.INQB):
        base = _base_decider(system)
        try:
            res = resolutions(f, cap)
        except ResolutionExplosion:
            premises, conclusion = _uncurry(f)
            if not premises:
                raise
            verdict = _split_entails(premises, conclusion, system, cap)
        else:
            verdict = Verdict(False, system)
            for a in res:
                verdict.checked.append(a)
                if base(a):
                    verdict.valid = True
                    verdict.resolution = a
                    break
    else:
        raise DialectError("validity is decided for inqi, inqb, ipl and cpl")
    if not verdict.valid and max_worlds is not None:
        verdict.countermodel = countermodel_search(f, system, max_worlds)
    return verdict


def entails(
    s: Sequent | Sequence[Formula],
    system: System | str = System.INQI,
    conclusion: Formula | None = None,
    *,
    max_worlds: int | None = None,
    cap: int = RESOLUTION_CAP,
    method: str = "curried",
) -> Verdict:
    """Finite-premise entailment.

    ``method="curried"`` decides validity of ``p1 -> (p2 -> ... -> c)``;
    ``method="cases"`` splits on the premises' resolutions directly.  Both
    give the same verdict.  A countermodel, when requested, is a team
    supporting every premise but not the conclusion.
    """
    if not isinstance(s, Sequent):
        s = Sequent(s, conclusion)
    system = System(system)
    if system not in (System.INQI, System.INQB, System.IPL, System.CPL):
        raise DialectError("entailment is decided for inqi, inqb, ipl and cpl")
    if method == "curried":
        verdict = valid(s.as_implication(), system, cap=cap)
    elif method == "cases":
        verdict = _split_entails(s.premises, s.conclusion, system, cap)
    else:
        raise ValueError(f"unknown entailment method {method!r}")
    if not verdict.valid and max_worlds is not None:
        verdict.countermodel = countermodel_search(s.conclusion, system, max_worlds, s.premises)
    return verdict
