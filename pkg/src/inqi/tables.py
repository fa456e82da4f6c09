"""Vectorised support tables for exhaustive sweeps over small frames.

For a fixed frame and a batch of valuations, ``FrameTables.table(f)`` is a
boolean array of shape ``(n_valuations, 2**n)`` whose entry ``[v, t]`` says
whether team ``t`` supports ``f`` in the model with valuation ``v``.  The
clauses are the same as in :mod:`inqi.semantics` but every team is computed
at once, which is what makes the model-sweep suites affordable.  The scalar
evaluator remains the reference; the test suite checks the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import SizeLimit
from .models import Frame, Kind, KripkeModel, Team, frame_valuations, frames, model_from_frame
from .syntax import And, Atom, Box, Diamond, Falsum, Formula, IDisj, Implies, Tensor

MAX_TABLE_WORLDS = 6


@dataclass(frozen=True)
class _Base:
    """Per-(frame, alphabet, mode) data shared by every formula's table."""

    valuations: tuple[tuple[int, ...], ...]
    teams: np.ndarray
    atom: dict
    rimg: np.ndarray
    ext: np.ndarray
    ss: np.ndarray
    rest: np.ndarray
    starts: np.ndarray


@lru_cache(maxsize=4096)
def _base(frame: Frame, atoms: tuple[str, ...], mode: str) -> _Base:
    return _build_base(frame, atoms, tuple(frame_valuations(frame, len(atoms))), mode)


def _build_base(frame: Frame, atoms, valuations, mode: str) -> _Base:
    n = frame.n
    N = 1 << n
    teams = np.arange(N, dtype=np.int64)
    k = len(atoms)
    val = np.array(valuations, dtype=np.int64).reshape(len(valuations), n)
    atom = {}
    for idx, a in enumerate(atoms):
        bit = (val >> (k - 1 - idx)) & 1
        mask = (bit << np.arange(n, dtype=np.int64)).sum(axis=1)
        atom[a] = (teams[None, :] & ~mask[:, None]) == 0
    rimg = np.zeros(N, dtype=np.int64)
    for t in range(N):
        r = 0
        for i in range(n):
            if t >> i & 1:
                r |= frame.up[i]
        rimg[t] = r
    dom = teams if mode == "mt0" else rimg
    # ext[s, t]: s lies inside the implication range of t
    ext = ((teams[:, None] & ~dom[None, :]) == 0).astype(np.float32)
    ss, rest, owner = [], [], []
    for t in range(N):
        s = t
        while True:
            ss.append(s)
            rest.append(t & ~s)
            owner.append(t)
            if s == 0:
                break
            s = (s - 1) & t
    # pairs are generated grouped by owner already, so reduceat offsets are run starts
    owner_arr = np.array(owner)
    starts = np.flatnonzero(np.r_[True, owner_arr[1:] != owner_arr[:-1]])
    return _Base(
        tuple(tuple(v) for v in valuations), teams, atom, rimg, ext,
        np.array(ss), np.array(rest), starts,
    )


@lru_cache(maxsize=1024)
def _successor_matrix(frame: Frame) -> np.ndarray:
    """``succ[s, t]``: ``s`` is an MT0 successor team of ``t``."""
    n, N, up = frame.n, 1 << frame.n, frame.up
    succ = np.zeros((N, N), dtype=np.float32)
    for t in range(N):
        members = [up[i] for i in range(n) if t >> i & 1]
        reach = 0
        for m in members:
            reach |= m
        s = reach
        while True:
            if all(m & s for m in members):
                succ[s, t] = 1.0
            if s == 0:
                break
            s = (s - 1) & reach
    return succ


class FrameTables:
    def __init__(
        self,
        frame: Frame,
        atoms: Sequence[str],
        valuations: Sequence[Sequence[int]] | None = None,
        mode: str = "inq",
    ):
        n = frame.n
        if n > MAX_TABLE_WORLDS:
            raise SizeLimit(f"table engine handles at most {MAX_TABLE_WORLDS} worlds, got {n}")
        self.frame = frame
        self.atoms = list(atoms)
        self.mode = mode
        if valuations is None:
            base = _base(frame, tuple(self.atoms), mode)
        else:
            base = _build_base(frame, tuple(self.atoms), [tuple(v) for v in valuations], mode)
        self.valuations = base.valuations
        self.n = n
        self.N = 1 << n
        self.teams = base.teams
        self._atom = base.atom
        self.rimg = base.rimg
        self.ext = base.ext
        self._ss, self._rest, self._starts = base.ss, base.rest, base.starts
        self._memo: dict[int, np.ndarray] = {}
        self._keep: list[Formula] = []

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.valuations), self.N)

    def table(self, f: Formula) -> np.ndarray:
        key = id(f)
        r = self._memo.get(key)
        if r is None:
            r = self._compute(f)
            self._memo[key] = r
            self._keep.append(f)
        return r

    def _compute(self, f: Formula) -> np.ndarray:
        if isinstance(f, Atom):
            r = self._atom.get(f.name)
            if r is None:
                # atom outside the valuation's alphabet: false everywhere
                r = np.broadcast_to(self.teams[None, :] == 0, self.shape)
            return r
        if isinstance(f, Falsum):
            return np.broadcast_to(self.teams[None, :] == 0, self.shape)
        if isinstance(f, And):
            return self.table(f.left) & self.table(f.right)
        if isinstance(f, IDisj):
            return self.table(f.left) | self.table(f.right)
        if isinstance(f, Tensor):
            a, b = self.table(f.left), self.table(f.right)
            pair = a[:, self._ss] & b[:, self._rest]
            return np.logical_or.reduceat(pair, self._starts, axis=1)
        if isinstance(f, Implies):
            bad = (self.table(f.left) & ~self.table(f.right)).astype(np.float32)
            return (bad @ self.ext) == 0
        if isinstance(f, Box):
            return self.table(f.sub)[:, self.rimg]
        if isinstance(f, Diamond):
            a = self.table(f.sub).astype(np.float32)
            return (a @ _successor_matrix(self.frame)) > 0
        raise TypeError(f"not a formula: {f!r}")

    def model(self, v: int) -> KripkeModel:
        return model_from_frame(self.frame, self.atoms, self.valuations[v])


def _kind_for(mode: str, kind: Kind | str | None) -> Kind:
    if kind is not None:
        return Kind(kind)
    return Kind.S4 if mode == "mt0" else Kind.INTUITIONISTIC


def sweep(
    n_worlds: int, atoms: Sequence[str], kind: Kind | str | None = None, mode: str = "inq"
) -> Iterator[FrameTables]:
    """One ``FrameTables`` per frame with exactly ``n_worlds`` worlds, in enumeration order."""
    kind = _kind_for(mode, kind)
    atoms = sorted(set(atoms))
    for fr in frames(n_worlds, kind):
        yield FrameTables(fr, atoms, mode=mode)


def first_failure(
    f: Formula,
    atoms: Sequence[str],
    max_worlds: int,
    kind: Kind | str | None = None,
    mode: str = "inq",
    min_worlds: int = 0,
) -> tuple[KripkeModel, Team] | None:
    """First (model, team) in enumeration order that does not support ``f``."""
    for n in range(min_worlds, max_worlds + 1):
        for ft in sweep(n, atoms, kind, mode):
            if not ft.valuations:
                continue
            tab = ft.table(f)
            flat = np.flatnonzero(~tab.ravel())
            if flat.size:
                v, t = divmod(int(flat[0]), ft.N)
                return ft.model(v), t
    return None
