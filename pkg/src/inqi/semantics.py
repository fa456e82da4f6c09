"""Support, truth and truth values over finite Kripke models.

One evaluator serves InqI and InqB (classical models are the ones whose
relation is the identity) and, in ``mt0`` mode, downward-closed modal team
logic.  Evaluation is memoised per call on (subformula, team).

Shortcuts used, each a consequence of persistency:

* a standard subformula is supported iff it is true at every world of the
  team, and truth of standard formulas is computed world-wise;
* a team supports ``a | b`` iff some ``s`` inside it supports ``a`` while the
  rest supports ``b`` (the two halves need not overlap);
* for ``a -> b`` with standard ``a`` only the largest ``a``-team inside the
  extension range matters; with standard ``b`` only singletons matter;
  otherwise only up-closed extensions are tried, since support at ``s``
  equals support at ``R[s]``.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .errors import DialectError, SizeLimit
from .models import Kind, KripkeModel, Team, bits, popcount, r_image
from .syntax import (
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
    has_modality,
    is_standard,
    neg,
)

IMPLICATION_CAP = 20
TEAM_ENUMERATION_CAP = 16


class TruthValue(enum.Enum):
    TRUE = "1"
    FALSE = "0"
    UNDEFINED = "undefined"


def _upsets(m: KripkeModel, domain: int, mt0: bool) -> Iterable[int]:
    """Non-empty subsets of ``domain`` closed under R within ``domain``."""
    if mt0:
        s = domain
        while s:
            yield s
            s = (s - 1) & domain
        return
    stack = [(0, 0, domain)]
    while stack:
        inc, exc, free = stack.pop()
        if not free:
            if inc:
                yield inc
            continue
        low = free & -free
        i = low.bit_length() - 1
        # include i: its successors in the domain must come too
        need = m.up[i] & domain
        if not need & exc:
            stack.append((inc | need, exc, free & ~need))
        # exclude i: its predecessors in the domain must go too
        drop = m.down[i] & domain
        if not drop & inc:
            stack.append((inc, exc | drop, free & ~drop))


class Evaluator:
    """Memoised support evaluator bound to one model.

    ``mode`` is ``"inq"`` (intuitionistic/classical clauses) or ``"mt0"``.
    The caches key on ``id`` of subformula nodes; the evaluator keeps every
    formula it has seen alive so ids stay unique.
    """

    def __init__(self, m: KripkeModel, mode: str = "inq", cap: int = IMPLICATION_CAP):
        self.m = m
        self.mode = mode
        self.mt0 = mode == "mt0"
        self.cap = cap
        self._memo: dict[tuple[int, int], bool] = {}
        self._truth: dict[int, int] = {}
        self._std: dict[int, bool] = {}
        self._keep: list[Formula] = []

    # -- helpers ----------------------------------------------------------

    def standard(self, f: Formula) -> bool:
        key = id(f)
        r = self._std.get(key)
        if r is None:
            self._keep.append(f)
            r = is_standard(f, Dialect.MT0 if self.mt0 else Dialect.INQI)
            self._std[key] = r
        return r

    def truth_set(self, f: Formula) -> int:
        """Worlds ``w`` with ``{w}`` supporting ``f``."""
        key = id(f)
        r = self._truth.get(key)
        if r is not None:
            return r
        self._keep.append(f)
        if self.standard(f):
            r = self._std_truth(f)
        else:
            r = 0
            for i in range(len(self.m)):
                if self.supports(1 << i, f):
                    r |= 1 << i
        self._truth[key] = r
        return r

    def _std_truth(self, f: Formula) -> int:
        m = self.m
        if isinstance(f, Atom):
            return m.atom_mask(f.name)
        if isinstance(f, Falsum):
            return 0
        if isinstance(f, And):
            return self.truth_set(f.left) & self.truth_set(f.right)
        if isinstance(f, Tensor):
            return self.truth_set(f.left) | self.truth_set(f.right)
        if isinstance(f, Implies):
            a, b = self.truth_set(f.left), self.truth_set(f.right)
            if self.mt0:
                return ~a & m.full | b
            bad = a & ~b
            return sum(1 << i for i in range(len(m)) if not m.up[i] & bad)
        if isinstance(f, Box):
            a = self.truth_set(f.sub)
            return sum(1 << i for i in range(len(m)) if not m.up[i] & ~a)
        if isinstance(f, Diamond):
            a = self.truth_set(f.sub)
            return sum(1 << i for i in range(len(m)) if m.up[i] & a)
        raise TypeError(f"not a formula: {f!r}")

    # -- support ----------------------------------------------------------

    def supports(self, t: Team, f: Formula) -> bool:
        if t == 0:
            return True
        if self.standard(f):
            return t & ~self.truth_set(f) == 0
        key = (id(f), t)
        r = self._memo.get(key)
        if r is None:
            r = self._compute(t, f)
            self._memo[key] = r
        return r

    def _compute(self, t: Team, f: Formula) -> bool:
        if isinstance(f, And):
            return self.supports(t, f.left) and self.supports(t, f.right)
        if isinstance(f, IDisj):
            return self.supports(t, f.left) or self.supports(t, f.right)
        if isinstance(f, Tensor):
            return self._tensor(t, f.left, f.right)
        if isinstance(f, Implies):
            return self._implies(t, f.left, f.right)
        if isinstance(f, Box):
            return self.supports(r_image(self.m, t), f.sub)
        if isinstance(f, Diamond):
            return self._diamond(t, f.sub)
        raise TypeError(f"unexpected node {f!r}")

    def _tensor(self, t: Team, a: Formula, b: Formula) -> bool:
        lo = t & ~self.truth_set(b)
        hi = t & self.truth_set(a)
        if lo & ~hi:
            return False
        free = hi & ~lo
        s = free
        while True:
            left = lo | s
            if self.supports(left, a) and self.supports(t & ~left, b):
                return True
            if s == 0:
                return False
            s = (s - 1) & free

    def _domain(self, t: Team) -> int:
        return t if self.mt0 else r_image(self.m, t)

    def _implies(self, t: Team, a: Formula, b: Formula) -> bool:
        dom = self._domain(t)
        if self.standard(a):
            return self.supports(dom & self.truth_set(a), b)
        if self.standard(b):
            return not (self.truth_set(a) & dom & ~self.truth_set(b))
        cand = dom & self.truth_set(a)
        if popcount(cand) > self.cap:
            raise SizeLimit(
                f"implication would enumerate subsets of {popcount(cand)} worlds (cap {self.cap})"
            )
        for s in _upsets(self.m, cand, self.mt0):
            if self.supports(s, a) and not self.supports(s, b):
                return False
        return True

    def _diamond(self, t: Team, a: Formula) -> bool:
        m = self.m
        cand = r_image(m, t) & self.truth_set(a)
        if any(not m.up[i] & cand for i in bits(t)):
            return False
        if self.standard(a):
            return True
        if popcount(cand) > self.cap:
            raise SizeLimit(f"diamond would enumerate subsets of {popcount(cand)} worlds")
        s = cand
        while s:
            if all(m.up[i] & s for i in bits(t)) and self.supports(s, a):
                return True
            s = (s - 1) & cand
        return False


def _team(m: KripkeModel, t: Team | Iterable) -> Team:
    return t if isinstance(t, int) else m.team(t)


def supports(m: KripkeModel, t: Team | Iterable[str], f: Formula) -> bool:
    """InqI support (InqB on classical models)."""
    if has_modality(f):
        raise DialectError("support is defined for modality-free formulas; use supports_mt0")
    if m.kind is Kind.S4:
        raise DialectError("S4 models are evaluated with supports_mt0")
    return Evaluator(m).supports(_team(m, t), f)


def supports_mt0(m: KripkeModel, t: Team | Iterable[str], f: Formula) -> bool:
    if m.kind is Kind.INTUITIONISTIC:
        raise DialectError("MT0 support needs an s4 or classical model (use m.as_kind('s4'))")
    return Evaluator(m, "mt0").supports(_team(m, t), f)


def dependence_atom_mt0(m: KripkeModel, t: Team, args: list[str], target: str) -> bool:
    """Primitive clause for ``=(p1..pn, q)``: agreement on the ``pi`` forces agreement on ``q``."""
    members = list(bits(t))
    for x in members:
        for y in members:
            if all((p in m.valuation[x]) == (p in m.valuation[y]) for p in args):
                if (target in m.valuation[x]) != (target in m.valuation[y]):
                    return False
    return True


def truth_at(m: KripkeModel, w: str | int, f: Formula) -> bool:
    return supports(m, 1 << m.index(w), f)


def truth_value(m: KripkeModel, w: str | int, f: Formula) -> TruthValue:
    if truth_at(m, w, f):
        return TruthValue.TRUE
    if truth_at(m, w, neg(f)):
        return TruthValue.FALSE
    return TruthValue.UNDEFINED


def truth_set(m: KripkeModel, f: Formula) -> Team:
    if has_modality(f):
        raise DialectError("modal formula in InqI evaluation")
    return Evaluator(m).truth_set(f)


def supporting_teams(m: KripkeModel, f: Formula, mode: str = "inq") -> list[bool]:
    """Support verdict for every team of ``m``, indexed by bitmask."""
    if len(m) > TEAM_ENUMERATION_CAP:
        raise SizeLimit(f"{len(m)} worlds exceed the team enumeration cap {TEAM_ENUMERATION_CAP}")
    ev = Evaluator(m, mode)
    return [ev.supports(t, f) for t in range(1 << len(m))]


def is_truth_conditional_on(m: KripkeModel, f: Formula) -> bool:
    if len(m) > TEAM_ENUMERATION_CAP:
        raise SizeLimit(f"{len(m)} worlds exceed the team enumeration cap {TEAM_ENUMERATION_CAP}")
    if has_modality(f):
        raise DialectError("modal formula in InqI evaluation")
    ev = Evaluator(m)
    tset = ev.truth_set(f)
    return all(ev.supports(t, f) == (t & ~tset == 0) for t in range(1 << len(m)))


def kripke_truth(m: KripkeModel, w: int, f: Formula) -> bool:
    """Textbook world-recursive Kripke clauses for standard formulas.

    Deliberately independent of :class:`Evaluator`; used to cross-check it.
    """
    if isinstance(f, Atom):
        return f.name in m.valuation[w]
    if isinstance(f, Falsum):
        return False
    if isinstance(f, And):
        return kripke_truth(m, w, f.left) and kripke_truth(m, w, f.right)
    if isinstance(f, Tensor):
        return kripke_truth(m, w, f.left) or kripke_truth(m, w, f.right)
    if isinstance(f, Implies):
        return all(
            not kripke_truth(m, v, f.left) or kripke_truth(m, v, f.right) for v in bits(m.up[w])
        )
    raise DialectError(f"not a standard formula: {f!r}")


def naive_supports(m: KripkeModel, t: Team, f: Formula, mt0: bool = False) -> bool:
    """Literal transcription of the support clauses, no shortcuts.

    Exponential; only for cross-checking on tiny models.
    """
    if isinstance(f, Atom):
        return t & ~m.atom_mask(f.name) == 0
    if isinstance(f, Falsum):
        return t == 0
    if isinstance(f, And):
        return naive_supports(m, t, f.left, mt0) and naive_supports(m, t, f.right, mt0)
    if isinstance(f, IDisj):
        return naive_supports(m, t, f.left, mt0) or naive_supports(m, t, f.right, mt0)
    if isinstance(f, Tensor):
        return any(
            naive_supports(m, t1, f.left, mt0) and naive_supports(m, t2, f.right, mt0)
            for t1 in _all_subsets(t)
            for t2 in _all_subsets(t)
            if t1 | t2 == t
        )
    if isinstance(f, Implies):
        dom = t if mt0 else r_image(m, t)
        return all(
            not naive_supports(m, s, f.left, mt0) or naive_supports(m, s, f.right, mt0)
            for s in _all_subsets(dom)
        )
    if isinstance(f, Box):
        return all(
            naive_supports(m, s, f.sub, mt0)
            for s in _all_subsets(r_image(m, t))
            if all(m.up[i] & s for i in bits(t))
        )
    if isinstance(f, Diamond):
        return any(
            naive_supports(m, s, f.sub, mt0)
            for s in _all_subsets(r_image(m, t))
            if all(m.up[i] & s for i in bits(t))
        )
    raise TypeError(f"not a formula: {f!r}")


def _all_subsets(mask: int) -> list[int]:
    out, s = [], mask
    while True:
        out.append(s)
        if s == 0:
            return out
        s = (s - 1) & mask


__all__ = [
    "Evaluator",
    "TruthValue",
    "dependence_atom_mt0",
    "is_truth_conditional_on",
    "kripke_truth",
    "naive_supports",
    "supporting_teams",
    "supports",
    "supports_mt0",
    "truth_at",
    "truth_set",
    "truth_value",
    "atoms_of",
]
