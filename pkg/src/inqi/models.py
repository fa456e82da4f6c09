"""Finite Kripke models, teams as bitmasks, and model constructions.

World ``i`` of a model corresponds to bit ``1 << i``; a team is an ``int``
whose set bits are its members.  The accessibility relation is stored as
``up[i]``, the bitmask of ``R[w_i]`` (always reflexive-transitively closed).
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import KindMismatch, ModelError

MAX_WORLDS = 64

Team = int


class Kind(str, enum.Enum):
    INTUITIONISTIC = "intuitionistic"
    S4 = "s4"
    CLASSICAL = "classical"


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, largest first, ending with 0."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


@dataclass(frozen=True)
class Violation:
    invariant: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.invariant} violated at {self.witness}"


class KripkeModel:
    """Immutable finite Kripke model.

    Use :meth:`from_edges` to build from an arbitrary edge list; it closes the
    relation and (by default) validates the result.
    """

    __slots__ = ("worlds", "up", "down", "valuation", "kind", "_index", "_atom_masks")

    def __init__(
        self,
        worlds: Sequence[str],
        up: Sequence[int],
        valuation: Sequence[Iterable[str]],
        kind: Kind | str = Kind.INTUITIONISTIC,
    ):
        self.worlds = tuple(worlds)
        self.up = tuple(up)
        self.valuation = tuple(frozenset(v) for v in valuation)
        self.kind = Kind(kind)
        n = len(self.worlds)
        if len(self.up) != n or len(self.valuation) != n:
            raise ModelError("worlds, relation and valuation lengths differ")
        if len(set(self.worlds)) != n:
            raise ModelError("duplicate world names")
        down = [0] * n
        for i, m in enumerate(self.up):
            for j in bits(m):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._index = {w: i for i, w in enumerate(self.worlds)}
        self._atom_masks: dict[str, int] = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        worlds: Sequence[str],
        edges: Iterable[tuple[str, str]],
        valuation: dict[str, Iterable[str]] | None = None,
        kind: Kind | str = Kind.INTUITIONISTIC,
        *,
        check: bool = True,
        max_worlds: int = MAX_WORLDS,
    ) -> "KripkeModel":
        worlds = list(worlds)
        if len(worlds) > max_worlds:
            raise ModelError(f"model has {len(worlds)} worlds, cap is {max_worlds}")
        index = {w: i for i, w in enumerate(worlds)}
        up = [1 << i for i in range(len(worlds))]
        for a, b in edges:
            if a not in index or b not in index:
                raise ModelError(f"edge ({a}, {b}) mentions an unknown world")
            up[index[a]] |= 1 << index[b]
        valuation = valuation or {}
        for w in valuation:
            if w not in index:
                raise ModelError(f"valuation mentions unknown world {w!r}")
        vals = [frozenset(valuation.get(w, ())) for w in worlds]
        m = cls(worlds, close_relation(up), vals, kind)
        if check:
            v = validate_model(m)
            if v is not None:
                raise ModelError(str(v))
        return m

    # -- accessors --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.worlds)

    @property
    def full(self) -> Team:
        return (1 << len(self.worlds)) - 1

    def index(self, w: str | int) -> int:
        if isinstance(w, int):
            if not 0 <= w < len(self.worlds):
                raise ModelError(f"no world with index {w}")
            return w
        try:
            return self._index[w]
        except KeyError:
            raise ModelError(f"unknown world {w!r}") from None

    def team(self, names: Iterable[str | int]) -> Team:
        t = 0
        for w in names:
            t |= 1 << self.index(w)
        return t

    def team_names(self, t: Team) -> list[str]:
        return [self.worlds[i] for i in bits(t)]

    def atom_mask(self, p: str) -> int:
        m = self._atom_masks.get(p)
        if m is None:
            m = 0
            for i, v in enumerate(self.valuation):
                if p in v:
                    m |= 1 << i
            self._atom_masks[p] = m
        return m

    def related(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def pairs(self) -> list[tuple[str, str]]:
        return [(self.worlds[i], self.worlds[j]) for i in range(len(self)) for j in bits(self.up[i])]

    def as_kind(self, kind: Kind | str) -> "KripkeModel":
        return KripkeModel(self.worlds, self.up, self.valuation, kind)

    def atoms(self) -> frozenset[str]:
        return frozenset().union(*self.valuation) if self.valuation else frozenset()

    def key(self) -> tuple:
        return (self.worlds, self.up, self.valuation, self.kind)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KripkeModel) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"KripkeModel({self.to_json()})"

    # -- JSON -------------------------------------------------------------

    def to_dict(self) -> dict:
        order = [
            [self.worlds[i], self.worlds[j]]
            for i in range(len(self))
            for j in bits(self.up[i])
            if i != j
        ]
        return {
            "kind": self.kind.value,
            "worlds": list(self.worlds),
            "order": order,
            "valuation": {
                w: sorted(v) for w, v in zip(self.worlds, self.valuation) if v
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, *, check: bool = True) -> "KripkeModel":
        try:
            kind = Kind(data.get("kind", "intuitionistic"))
            worlds = [str(w) for w in data["worlds"]]
            edges = [(str(a), str(b)) for a, b in data.get("order", [])]
            valuation = {str(w): [str(p) for p in ps] for w, ps in data.get("valuation", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError(f"malformed model JSON: {exc}") from exc
        return cls.from_edges(worlds, edges, valuation, kind, check=check)

    @classmethod
    def from_json(cls, text: str, *, check: bool = True) -> "KripkeModel":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data, check=check)


def close_relation(up: Sequence[int]) -> tuple[int, ...]:
    """Reflexive-transitive closure of a successor-mask list."""
    n = len(up)
    out = [m | (1 << i) for i, m in enumerate(up)]
    for k in range(n):
        kb = 1 << k
        for i in range(n):
            if out[i] & kb:
                out[i] |= out[k]
    return tuple(out)


def validate_model(m: KripkeModel) -> Violation | None:
    """``None`` when ``m`` satisfies the invariants of its kind."""
    n = len(m)
    for i in range(n):
        if not m.up[i] >> i & 1:
            return Violation("Reflexivity", (m.worlds[i],))
    for i in range(n):
        for j in bits(m.up[i]):
            if m.up[j] & ~m.up[i]:
                k = next(bits(m.up[j] & ~m.up[i]))
                return Violation("Transitivity", (m.worlds[i], m.worlds[j], m.worlds[k]))
    if m.kind is Kind.CLASSICAL:
        for i in range(n):
            if m.up[i] != 1 << i:
                j = next(bits(m.up[i] & ~(1 << i)))
                return Violation("Identity", (m.worlds[i], m.worlds[j]))
    if m.kind is Kind.INTUITIONISTIC:
        for i in range(n):
            for j in bits(m.up[i] & ~(1 << i)):
                if m.up[j] >> i & 1:
                    return Violation("Antisymmetry", (m.worlds[i], m.worlds[j]))
        for i in range(n):
            for j in bits(m.up[i]):
                missing = m.valuation[i] - m.valuation[j]
                if missing:
                    return Violation("Persistency", (m.worlds[i], m.worlds[j], min(missing)))
    return None


def r_image(m: KripkeModel, t: Team) -> Team:
    out = 0
    for i in bits(t):
        out |= m.up[i]
    return out


def is_extension(m: KripkeModel, t_prime: Team, t: Team) -> bool:
    return t_prime & ~r_image(m, t) == 0


def min_set(m: KripkeModel, t: Team) -> Team:
    out = 0
    for i in bits(t):
        if m.down[i] & t & ~(1 << i) == 0:
            out |= 1 << i
    return out


def induced_submodel(m: KripkeModel, keep: Team) -> tuple[KripkeModel, list[int]]:
    """Restrict ``m`` to the worlds in ``keep``; also return the old->new index map."""
    idx = list(bits(keep))
    new_of = {old: new for new, old in enumerate(idx)}
    up = []
    for old in idx:
        mask = 0
        for j in bits(m.up[old] & keep):
            mask |= 1 << new_of[j]
        up.append(mask)
    sub = KripkeModel([m.worlds[i] for i in idx], up, [m.valuation[i] for i in idx], m.kind)
    remap = [-1] * len(m)
    for old, new in new_of.items():
        remap[old] = new
    return sub, remap


def remap_team(t: Team, remap: list[int]) -> Team:
    out = 0
    for i in bits(t):
        if remap[i] < 0:
            raise ModelError("team member dropped by the restriction")
        out |= 1 << remap[i]
    return out


def generated_submodel(m: KripkeModel, t: Team) -> tuple[KripkeModel, Team]:
    sub, remap = induced_submodel(m, r_image(m, t))
    return sub, remap_team(t, remap)


def disjoint_union(m1: KripkeModel, m2: KripkeModel) -> KripkeModel:
    if m1.kind is not m2.kind:
        raise KindMismatch(f"cannot join a {m1.kind.value} and a {m2.kind.value} model")
    if set(m1.worlds) & set(m2.worlds):
        names = [f"{w}#1" for w in m1.worlds] + [f"{w}#2" for w in m2.worlds]
    else:
        names = list(m1.worlds) + list(m2.worlds)
    shift = len(m1)
    up = list(m1.up) + [u << shift for u in m2.up]
    return KripkeModel(names, up, list(m1.valuation) + list(m2.valuation), m1.kind)


def fresh_name(taken: Iterable[str], base: str = "r") -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def add_fresh_root(m: KripkeModel) -> KripkeModel:
    """New world (last index) below every world, with no atom true."""
    if m.kind is not Kind.INTUITIONISTIC:
        raise KindMismatch("add_fresh_root expects an intuitionistic model")
    n = len(m)
    root = fresh_name(m.worlds)
    up = list(m.up) + [(1 << (n + 1)) - 1]
    return KripkeModel(list(m.worlds) + [root], up, list(m.valuation) + [frozenset()], m.kind)


def clusters(m: KripkeModel) -> list[int]:
    """Cluster index of every world; clusters numbered by first member."""
    out = [-1] * len(m)
    c = 0
    for i in range(len(m)):
        if out[i] >= 0:
            continue
        for j in bits(m.up[i] & m.down[i]):
            out[j] = c
        c += 1
    return out


def rho_team(m: KripkeModel, t: Team) -> Team:
    cl = clusters(m)
    out = 0
    for i in bits(t):
        out |= 1 << cl[i]
    return out


def rho_model(m: KripkeModel) -> KripkeModel:
    """Intuitionistic model of R-clusters of an S4 model.

    An atom holds at a cluster iff it holds throughout ``R[w]`` for a member
    ``w`` (i.e. iff ``[]p`` is true there).
    """
    cl = clusters(m)
    reps: list[int] = []
    for i, c in enumerate(cl):
        if c == len(reps):
            reps.append(i)
    names, up, val = [], [], []
    for rep in reps:
        members = [m.worlds[j] for j in bits(m.up[rep] & m.down[rep])]
        names.append(members[0] if len(members) == 1 else "{" + ",".join(members) + "}")
        mask = 0
        for j in bits(m.up[rep]):
            mask |= 1 << cl[j]
        up.append(mask)
        atoms = set(m.atoms())
        for j in bits(m.up[rep]):
            atoms &= m.valuation[j]
        val.append(frozenset(atoms))
    return KripkeModel(names, up, val, Kind.INTUITIONISTIC)


def mt0_successor(m: KripkeModel, t: Team, t_prime: Team) -> bool:
    """``t R t'``: ``t'`` inside ``R[t]`` and every world of ``t`` sees some world of ``t'``."""
    if t_prime & ~r_image(m, t):
        return False
    return all(m.up[i] & t_prime for i in bits(t))


def are_isomorphic(m1: KripkeModel, m2: KripkeModel) -> bool:
    """Brute-force isomorphism test on relation and valuation (small models)."""
    n = len(m1)
    if n != len(m2) or sorted(map(popcount, m1.up)) != sorted(map(popcount, m2.up)):
        return False
    for perm in itertools.permutations(range(n)):
        if all(m1.valuation[i] == m2.valuation[perm[i]] for i in range(n)) and all(
            m1.related(i, j) == m2.related(perm[i], perm[j]) for i in range(n) for j in range(n)
        ):
            return True
    return False


# --------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class Frame:
    n: int
    up: tuple[int, ...]
    kind: Kind

    @property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i, m in enumerate(self.up):
            for j in bits(m):
                down[j] |= 1 << i
        return tuple(down)


def _is_transitive(up: list[int]) -> bool:
    for i, m in enumerate(up):
        for j in bits(m):
            if up[j] & ~m:
                return False
    return True


@lru_cache(maxsize=None)
def frames(n: int, kind: Kind) -> tuple[Frame, ...]:
    """All frames on ``n`` labelled worlds satisfying ``kind``.

    Ordered lexicographically by the off-diagonal entries of the relation
    matrix read row by row.
    """
    kind = Kind(kind)
    if kind is Kind.CLASSICAL:
        return (Frame(n, tuple(1 << i for i in range(n)), kind),)
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for entries in itertools.product((0, 1), repeat=len(cells)):
        up = [1 << i for i in range(n)]
        for (i, j), e in zip(cells, entries):
            if e:
                up[i] |= 1 << j
        if not _is_transitive(up):
            continue
        if kind is Kind.INTUITIONISTIC and any(
            up[j] >> i & 1 for i in range(n) for j in bits(up[i] & ~(1 << i))
        ):
            continue
        out.append(Frame(n, tuple(up), kind))
    return tuple(out)


def frame_valuations(frame: Frame, n_atoms: int) -> list[tuple[int, ...]]:
    """Admissible valuations as per-world atom bitsets, in lexicographic order.

    Atom ``k`` of world ``i`` is bit ``n_atoms - 1 - k`` of entry ``i``, so the
    tuple order equals the lexicographic order of the flattened truth table
    (world-major, atoms in sorted order).
    """
    n = frame.n
    choices = range(1 << n_atoms)
    if frame.kind is not Kind.INTUITIONISTIC:
        return list(itertools.product(choices, repeat=n))
    down = frame.down
    out: list[tuple[int, ...]] = []
    cur = [0] * n

    def rec(i: int) -> None:
        if i == n:
            out.append(tuple(cur))
            return
        for v in choices:
            ok = True
            for j in range(i):
                if frame.up[j] >> i & 1 and cur[j] & ~v:
                    ok = False
                    break
                if down[j] >> i & 1 and v & ~cur[j]:
                    ok = False
                    break
            if ok:
                cur[i] = v
                rec(i + 1)

    rec(0)
    return out


def world_names(n: int) -> list[str]:
    return [f"w{i + 1}" for i in range(n)]


def model_from_frame(frame: Frame, atoms: Sequence[str], val: Sequence[int]) -> KripkeModel:
    k = len(atoms)
    valuation = [
        frozenset(a for idx, a in enumerate(atoms) if v >> (k - 1 - idx) & 1) for v in val
    ]
    return KripkeModel(world_names(frame.n), frame.up, valuation, frame.kind)


def enumerate_models(
    n_worlds: int, atoms: Iterable[str], kind: Kind | str = Kind.INTUITIONISTIC
) -> Iterator[KripkeModel]:
    atoms = sorted(set(atoms))
    for fr in frames(n_worlds, Kind(kind)):
        for val in frame_valuations(fr, len(atoms)):
            yield model_from_frame(fr, atoms, val)


# --------------------------------------------------------------------------
# fixtures

FIXTURES = ("FIX_A", "FIX_B", "FIX_C")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("inqi") / "data" / "models" / f"{name.lower()}.json"))


def load_fixture(name: str) -> KripkeModel:
    name = name.upper()
    if name not in FIXTURES:
        raise ModelError(f"unknown fixture {name!r}")
    return KripkeModel.from_json(fixture_path(name).read_text())


def load_model(path_or_name: str) -> KripkeModel:
    """Load a model JSON file; bare fixture names (``FIX_A``, ``FIX_A.json``) also work."""
    p = Path(path_or_name)
    if p.exists():
        return KripkeModel.from_json(p.read_text())
    stem = p.name.removesuffix(".json").upper()
    if stem in FIXTURES:
        return load_fixture(stem)
    raise ModelError(f"no such model file: {path_or_name}")
