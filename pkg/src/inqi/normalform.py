"""Resolutions, inquisitive normal form and the three syntactic translations."""

from __future__ import annotations

import itertools

from .errors import DialectError, ResolutionExplosion
from .syntax import (
    And,
    Atom,
    Box,
    Diamond,
    Falsum,
    Formula,
    IDisj,
    Implies,
    Tensor,
    conj,
    has_modality,
    idisj_fold,
    is_standard,
    neg,
)

RESOLUTION_CAP = 10_000


def _dedup(fs) -> list[Formula]:
    seen: set[Formula] = set()
    out = []
    for f in fs:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def count_resolutions(f: Formula) -> int:
    """Size of the resolution set before deduplication.

    Exponents past 64 saturate at ``RESOLUTION_CAP**2`` rather than building
    an enormous integer; any such count is far beyond every usable cap.
    """
    if isinstance(f, (Atom, Falsum)):
        return 1
    if isinstance(f, (And, Tensor)):
        return count_resolutions(f.left) * count_resolutions(f.right)
    if isinstance(f, IDisj):
        return count_resolutions(f.left) + count_resolutions(f.right)
    if isinstance(f, Implies):
        a = count_resolutions(f.left)
        b = count_resolutions(f.right)
        if b == 1:
            return 1
        if a > 64:
            return RESOLUTION_CAP**2
        return b**a
    raise DialectError("resolutions are defined for modality-free formulas")


def resolutions(f: Formula, cap: int = RESOLUTION_CAP, *, dedup: bool = True) -> list[Formula]:
    """The resolution set in generation order, first occurrences kept.

    With ``dedup=False`` structural duplicates are kept, so the length
    follows :func:`count_resolutions` exactly.
    """
    if has_modality(f):
        raise DialectError("resolutions are defined for modality-free formulas")
    return _res(f, cap, _dedup if dedup else list)


def _check(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ResolutionExplosion(f"{what} would produce {n} resolutions (cap {cap})")


def _res(f: Formula, cap: int, uniq) -> list[Formula]:
    if is_standard(f):
        return [f]
    if isinstance(f, (And, Tensor)):
        left, right = _res(f.left, cap, uniq), _res(f.right, cap, uniq)
        _check(len(left) * len(right), cap, type(f).__name__)
        cls = type(f)
        return uniq(cls(a, b) for a in left for b in right)
    if isinstance(f, IDisj):
        return uniq(_res(f.left, cap, uniq) + _res(f.right, cap, uniq))
    if isinstance(f, Implies):
        ante, cons = _res(f.left, cap, uniq), _res(f.right, cap, uniq)
        if len(cons) > 1:
            # size check before the choice functions are materialised
            if len(ante) > 64 or len(cons) ** len(ante) > cap:
                raise ResolutionExplosion(
                    f"implication would produce {len(cons)}^{len(ante)} resolutions (cap {cap})"
                )
        return uniq(
            conj(Implies(a, b) for a, b in zip(ante, choice))
            for choice in itertools.product(cons, repeat=len(ante))
        )
    raise TypeError(f"not a formula: {f!r}")


def normal_form(f: Formula, cap: int = RESOLUTION_CAP) -> Formula:
    if is_standard(f):
        return f
    return idisj_fold(resolutions(f, cap))


def standard_variant(f: Formula) -> Formula:
    if isinstance(f, (Atom, Falsum)):
        return f
    if isinstance(f, IDisj):
        return Tensor(standard_variant(f.left), standard_variant(f.right))
    if isinstance(f, (And, Tensor, Implies)):
        return type(f)(standard_variant(f.left), standard_variant(f.right))
    raise DialectError("standard variant is defined for modality-free formulas")


def negative_translation(f: Formula, cap: int = RESOLUTION_CAP) -> Formula:
    return idisj_fold(neg(neg(a)) for a in resolutions(f, cap))


def box_translation(f: Formula) -> Formula:
    """Goedel-style embedding into S4 modal team logic."""
    if isinstance(f, Atom):
        return Box(f)
    if isinstance(f, Falsum):
        return Box(f)
    if isinstance(f, Implies):
        return Box(Implies(box_translation(f.left), box_translation(f.right)))
    if isinstance(f, (And, Tensor, IDisj)):
        return type(f)(box_translation(f.left), box_translation(f.right))
    if isinstance(f, (Box, Diamond)):
        raise DialectError("the box translation takes modality-free formulas")
    raise TypeError(f"not a formula: {f!r}")
