"""Formula AST, ASCII parser and printer.

Grammar, loosest binding first::

    iff     := impl ( '<->' iff )?
    impl    := idisj ( '->' impl )?
    idisj   := tensor ( '\\/' idisj )?
    tensor  := conj ( '|' tensor )?
    conj    := unary ( '&' conj )?
    unary   := ('~' | '?' | '[]' | '<>') unary | atom | 'bot'
             | '=(' iff (',' iff)* ')' | '(' iff ')'

All binary connectives associate to the right.  ``~``, ``?``, ``<->`` and
``=(...)`` are expanded while parsing; the AST only has the core
constructors below.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import DialectError, FormulaSyntaxError


class Dialect(str, enum.Enum):
    INQI = "inqi"
    INQB = "inqb"
    MT0 = "mt0"


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Falsum:
    pass


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Tensor:
    """Standard (split) disjunction."""

    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class IDisj:
    """Inquisitive disjunction."""

    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Box:
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class Diamond:
    sub: "Formula"


Formula = Union[Atom, Falsum, And, Tensor, IDisj, Implies, Box, Diamond]
BINARY = (And, Tensor, IDisj, Implies)
MODAL = (Box, Diamond)

BOT = Falsum()


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def question(f: Formula) -> Formula:
    return IDisj(f, Implies(f, BOT))


def _fold_right(cls, fs: Iterable[Formula]) -> Formula:
    items = list(fs)
    if not items:
        raise ValueError("cannot fold an empty sequence of formulas")
    out = items[-1]
    for f in reversed(items[:-1]):
        out = cls(f, out)
    return out


def conj(fs: Iterable[Formula]) -> Formula:
    return _fold_right(And, fs)


def tensor_fold(fs: Iterable[Formula]) -> Formula:
    return _fold_right(Tensor, fs)


def idisj_fold(fs: Iterable[Formula]) -> Formula:
    return _fold_right(IDisj, fs)


def dependence(args: list[Formula], target: Formula) -> Formula:
    """``=(a1,...,an,b)`` as ``?a1 & ... & ?an -> ?b``; with no ``ai`` it is ``?b``."""
    if not args:
        return question(target)
    return Implies(conj(question(a) for a in args), question(target))


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, BINARY):
        return (f.left, f.right)
    if isinstance(f, MODAL):
        return (f.sub,)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order traversal, children before parents."""
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, done = stack.pop()
        if done:
            yield node
            continue
        stack.append((node, True))
        for c in reversed(children(node)):
            stack.append((c, False))


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    kids = children(f)
    return 0 if not kids else 1 + max(depth(c) for c in kids)


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(n.name for n in subformulas(f) if isinstance(n, Atom))


def has_modality(f: Formula) -> bool:
    return any(isinstance(n, MODAL) for n in subformulas(f))


def is_standard(f: Formula, dialect: Dialect = Dialect.INQI) -> bool:
    """No inquisitive disjunction; outside MT0 also no modality."""
    for n in subformulas(f):
        if isinstance(n, IDisj):
            return False
        if isinstance(n, MODAL) and dialect is not Dialect.MT0:
            return False
    return True


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<op><->|->|\\/|\[\]|<>|[~?&|(),=])|(?P<atom>[a-z][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise FormulaSyntaxError(f"unexpected character {text[start]!r}", start, text)
        if m.group("op"):
            out.append(("op", m.group("op"), m.start("op")))
        else:
            name = m.group("atom")
            kind = "bot" if name == "bot" else "atom"
            out.append((kind, name, m.start("atom")))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, dialect: Dialect):
        self.text = text
        self.dialect = dialect
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def accept(self, op: str) -> bool:
        kind, val, _ = self.toks[self.i]
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            kind, val, pos = self.peek()
            got = "end of input" if kind == "eof" else repr(val)
            raise FormulaSyntaxError(f"expected {op!r}, got {got}", pos, self.text)

    def parse(self) -> Formula:
        f = self.iff()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected token {val!r}", pos, self.text)
        return f

    def iff(self) -> Formula:
        left = self.impl()
        if self.accept("<->"):
            right = self.iff()
            return And(Implies(left, right), Implies(right, left))
        return left

    def _binary(self, op: str, cls, sub, this) -> Formula:
        left = sub()
        if self.accept(op):
            return cls(left, this())
        return left

    def impl(self) -> Formula:
        return self._binary("->", Implies, self.idisj, self.impl)

    def idisj(self) -> Formula:
        return self._binary("\\/", IDisj, self.tensor, self.idisj)

    def tensor(self) -> Formula:
        return self._binary("|", Tensor, self.conj, self.tensor)

    def conj(self) -> Formula:
        return self._binary("&", And, self.unary, self.conj)

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "atom":
            self.i += 1
            return Atom(val)
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "op":
            if val == "~":
                self.i += 1
                return neg(self.unary())
            if val == "?":
                self.i += 1
                return question(self.unary())
            if val in ("[]", "<>"):
                if self.dialect is not Dialect.MT0:
                    raise DialectError(
                        f"modality {val!r} at position {pos} is only allowed in MT0"
                    )
                self.i += 1
                sub = self.unary()
                return Box(sub) if val == "[]" else Diamond(sub)
            if val == "(":
                self.i += 1
                f = self.iff()
                self.expect(")")
                return f
            if val == "=":
                self.i += 1
                self.expect("(")
                args = [self.iff()]
                while self.accept(","):
                    args.append(self.iff())
                self.expect(")")
                return dependence(args[:-1], args[-1])
        got = "end of input" if kind == "eof" else repr(val)
        raise FormulaSyntaxError(f"expected a formula, got {got}", pos, self.text)


def parse_formula(text: str, dialect: Dialect | str = Dialect.INQI) -> Formula:
    return _Parser(text, Dialect(dialect)).parse()


# --------------------------------------------------------------------------
# printing

_LEVEL = {Implies: 1, IDisj: 2, Tensor: 3, And: 4}
_SYMBOL = {Implies: "->", IDisj: "\\/", Tensor: "|", And: "&"}
_UNARY = 5
_ATOMIC = 6


def _is_neg(f: Formula) -> bool:
    return isinstance(f, Implies) and isinstance(f.right, Falsum)


def _is_question(f: Formula) -> bool:
    return isinstance(f, IDisj) and _is_neg(f.right) and f.right.left == f.left


def _level(f: Formula) -> int:
    if isinstance(f, (Atom, Falsum)):
        return _ATOMIC
    if isinstance(f, MODAL) or _is_neg(f) or _is_question(f):
        return _UNARY
    return _LEVEL[type(f)]


def _wrap(f: Formula, min_level: int) -> str:
    s = render_formula(f)
    return s if _level(f) >= min_level else f"({s})"


def render_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Falsum):
        return "bot"
    if _is_neg(f):
        return "~" + _wrap(f.left, _UNARY)
    if _is_question(f):
        return "?" + _wrap(f.left, _UNARY)
    if isinstance(f, Box):
        return "[]" + _wrap(f.sub, _UNARY)
    if isinstance(f, Diamond):
        return "<>" + _wrap(f.sub, _UNARY)
    lvl = _LEVEL[type(f)]
    return f"{_wrap(f.left, lvl + 1)} {_SYMBOL[type(f)]} {_wrap(f.right, lvl)}"


def to_tree(f: Formula) -> list | str:
    """Nested-list view of the AST for ``--json`` output."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Falsum):
        return "bot"
    return [type(f).__name__] + [to_tree(c) for c in children(f)]
