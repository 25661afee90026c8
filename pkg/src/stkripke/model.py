"""Finite Kripke interpretations: construction, validation, enumeration, I/O.

Valuations are stored on leaves only (atoms and ``bot``); values of compound
formulas are always computed by :mod:`stkripke.semantics`.
"""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Sequence

BOT_NAME = "bot"

# Mutation hook for the suite's sensitivity checks: when set, minimal
# enumeration and the trivial model keep bot at 0 everywhere.
PIN_MINIMAL_BOTTOM = False

DEFAULT_CEILING = 20
CEILING_ENV = "STKRIPKE_CEILING"


class ModelKind(enum.IntEnum):
    """Interpretation classes, ordered by strictness."""

    MINIMAL = 0
    INTUITIONISTIC = 1
    CLASSICAL = 2

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown model kind {name!r}") from None

    @property
    def label(self) -> str:
        return self.name.lower()


class ModelError(ValueError):
    pass


class CeilingExceeded(RuntimeError):
    """Enumeration would exceed the configured worlds x leaves ceiling."""


def enumeration_ceiling() -> int:
    return int(os.environ.get(CEILING_ENV, DEFAULT_CEILING))


@dataclass(frozen=True)
class Violation:
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.detail}"


@dataclass(frozen=True)
class Interpretation:
    """A finite frame with a leaf valuation.

    ``valuation`` maps each world to the set of leaves (atom names, or
    ``"bot"``) true there; anything not listed is 0.
    """

    worlds: tuple[str, ...]
    relation: frozenset[tuple[str, str]]
    valuation: tuple[frozenset[str], ...]
    kind: ModelKind = ModelKind.MINIMAL
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.valuation) != len(self.worlds):
            raise ModelError("valuation must have one entry per world")
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.worlds)})

    @classmethod
    def build(cls, worlds: Sequence[str], pairs: Iterable[tuple[str, str]],
              true_at: dict[str, Iterable[str]], kind: ModelKind = ModelKind.MINIMAL,
              close: bool = True) -> "Interpretation":
        worlds = tuple(worlds)
        rel = closure(pairs, worlds) if close else frozenset(pairs)
        val = tuple(frozenset(true_at.get(w, ())) for w in worlds)
        return cls(worlds, rel, val, kind)

    def index(self, w: str) -> int:
        try:
            return self._index[w]
        except KeyError:
            raise ModelError(f"unknown world {w!r}") from None

    def value(self, w: str, leaf: str) -> int:
        return int(leaf in self.valuation[self.index(w)])

    def successors(self, w: str) -> list[str]:
        return [v for v in self.worlds if (w, v) in self.relation]

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.worlds)) - 1

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """Bitmask of R-successors for each world."""
        out = []
        for w in self.worlds:
            m = 0
            for v in self.successors(w):
                m |= 1 << self._index[v]
            out.append(m)
        return tuple(out)

    def leaf_mask(self, leaf: str) -> int:
        m = 0
        for i, true in enumerate(self.valuation):
            if leaf in true:
                m |= 1 << i
        return m

    @property
    def leaves(self) -> set[str]:
        return set().union(*self.valuation)

    def retag(self, kind: ModelKind) -> "Interpretation":
        return Interpretation(self.worlds, self.relation, self.valuation, kind)

    def signature(self) -> tuple:
        return (len(self.worlds), tuple(sorted(self.relation)), self.valuation)

    def to_text(self) -> str:
        return dumps(self)


# --------------------------------------------------------------------------
# relations

def closure(pairs: Iterable[tuple[str, str]], worlds: Sequence[str]) -> frozenset[tuple[str, str]]:
    """Least reflexive-transitive relation on ``worlds`` containing ``pairs``."""
    worlds = list(worlds)
    known = set(worlds)
    rel = {(w, w) for w in worlds}
    for a, b in pairs:
        if a not in known or b not in known:
            raise ModelError(f"pair ({a}, {b}) mentions an unknown world")
        rel.add((a, b))
    # Warshall
    for k in worlds:
        for i in worlds:
            if (i, k) in rel:
                for j in worlds:
                    if (k, j) in rel:
                        rel.add((i, j))
    return frozenset(rel)


def validate(m: Interpretation, kind: ModelKind | None = None) -> list[Violation]:
    """Check frame and valuation constraints for ``kind`` (default: m.kind)."""
    kind = m.kind if kind is None else kind
    out: list[Violation] = []
    if not m.worlds:
        out.append(Violation("nonempty", "W is empty"))
        return out
    if len(set(m.worlds)) != len(m.worlds):
        out.append(Violation("worlds", "duplicate world names"))
    ws = set(m.worlds)
    for a, b in sorted(m.relation):
        if a not in ws or b not in ws:
            out.append(Violation("relation", f"pair ({a}, {b}) leaves W"))
    for w in m.worlds:
        if (w, w) not in m.relation:
            out.append(Violation("reflexivity", f"({w}, {w}) missing"))
    for a, b in sorted(m.relation):
        for c, d in sorted(m.relation):
            if b == c and (a, d) not in m.relation:
                out.append(Violation("transitivity", f"({a}, {b}), ({b}, {d}) but not ({a}, {d})"))
    for a, b in sorted(m.relation):
        if a not in ws or b not in ws:
            continue
        lost = m.valuation[m.index(a)] - m.valuation[m.index(b)]
        for leaf in sorted(lost):
            out.append(Violation("persistence", f"{leaf} true at {a} but not at {b}, although {a}R{b}"))
    if kind >= ModelKind.INTUITIONISTIC:
        for w in m.worlds:
            if BOT_NAME in m.valuation[m.index(w)]:
                out.append(Violation("bottom", f"bot true at {w}"))
    if kind == ModelKind.CLASSICAL:
        names = sorted(m.leaves - {BOT_NAME})
        for p in names:
            holders = [w for w in m.worlds if p in m.valuation[m.index(w)]]
            if holders and len(holders) != len(m.worlds):
                off = [w for w in m.worlds if w not in holders]
                out.append(Violation("classical", f"{p} true at {holders[0]} but not at {off[0]}"))
    return out


def trivial_model(names: Iterable[str] = ()) -> Interpretation:
    """One world where every listed atom and bot is true."""
    leaves = set(names)
    if not PIN_MINIMAL_BOTTOM:
        leaves.add(BOT_NAME)
    return Interpretation(("w",), frozenset({("w", "w")}), (frozenset(leaves),), ModelKind.MINIMAL)


# --------------------------------------------------------------------------
# enumeration (world i is labelled "w{i}"; relations as bitmask tuples)

@lru_cache(maxsize=None)
def preorders(n: int) -> tuple[tuple[int, ...], ...]:
    """All preorders on n labelled worlds as successor-bitmask tuples.

    Canonical order: closures of off-diagonal pair sets, visited by the
    pair-set's bitmask in ascending order, first occurrence kept.
    """
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen: dict[tuple[int, ...], None] = {}
    for bits in range(1 << len(off)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off):
            if bits >> k & 1:
                up[i] |= 1 << j
        # transitive closure on bitmasks
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                for j in range(n):
                    if m >> j & 1:
                        m |= up[j]
                if m != up[i]:
                    up[i] = m
                    changed = True
        seen.setdefault(tuple(up), None)
    return tuple(seen)


@lru_cache(maxsize=None)
def upsets(up: tuple[int, ...]) -> tuple[int, ...]:
    """World sets closed under the preorder, ascending by bitmask."""
    n = len(up)
    out = []
    for s in range(1 << n):
        if all(up[i] & ~s == 0 for i in range(n) if s >> i & 1):
            out.append(s)
    return tuple(out)


def leaves_for(kind: ModelKind, names: Sequence[str]) -> list[str]:
    names = list(names)
    if kind == ModelKind.MINIMAL and not PIN_MINIMAL_BOTTOM:
        return names + [BOT_NAME]
    return names


def check_ceiling(kind: ModelKind, max_worlds: int, names: Sequence[str]) -> None:
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    worlds = 1 if kind == ModelKind.CLASSICAL else max_worlds
    load = worlds * max(1, len(leaves_for(kind, names)))
    limit = enumeration_ceiling()
    if load > limit:
        raise CeilingExceeded(
            f"{worlds} worlds x {len(leaves_for(kind, names))} leaves = {load} exceeds ceiling {limit} "
            f"(set {CEILING_ENV} to raise it)")


def random_model(rng, kind: ModelKind, max_worlds: int, names: Sequence[str]) -> Interpretation:
    """Uniform over frames and valuations for a uniformly drawn world count."""
    n = 1 if kind == ModelKind.CLASSICAL else rng.randint(1, max_worlds)
    up = rng.choice(preorders(n))
    leaves = leaves_for(kind, names)
    masks = [rng.choice(upsets(up)) for _ in leaves]
    return from_masks(up, leaves, masks, kind)


def world_names(n: int) -> tuple[str, ...]:
    return tuple(f"w{i}" for i in range(n))


def from_masks(up: Sequence[int], leaves: Sequence[str], masks: Sequence[int],
               kind: ModelKind) -> Interpretation:
    n = len(up)
    ws = world_names(n)
    rel = frozenset((ws[i], ws[j]) for i in range(n) for j in range(n) if up[i] >> j & 1)
    val = tuple(frozenset(leaf for leaf, m in zip(leaves, masks) if m >> i & 1) for i in range(n))
    return Interpretation(ws, rel, val, kind)


def is_rooted(up: Sequence[int]) -> bool:
    full = (1 << len(up)) - 1
    return any(m == full for m in up)


def frames(n: int, rooted: bool = False) -> tuple[tuple[int, ...], ...]:
    return tuple(up for up in preorders(n) if is_rooted(up)) if rooted else preorders(n)


def enumerate_models(kind: ModelKind, max_worlds: int, names: Sequence[str],
                     rooted: bool = False) -> Iterator[Interpretation]:
    """Every interpretation of ``kind`` with at most ``max_worlds`` worlds.

    Order: world count, then preorder, then leaf valuation (first leaf most
    significant).  Classical models are emitted with one world only.  With
    ``rooted`` only frames having a world that sees every world are used.
    """
    check_ceiling(kind, max_worlds, names)
    leaves = leaves_for(kind, names)
    sizes = [1] if kind == ModelKind.CLASSICAL else range(1, max_worlds + 1)
    for n in sizes:
        for up in frames(n, rooted):
            ups = upsets(up)
            for masks in itertools.product(ups, repeat=len(leaves)):
                yield from_masks(up, leaves, masks, kind)


# --------------------------------------------------------------------------
# text format

def dumps(m: Interpretation) -> str:
    lines = [f"kind {m.kind.label}"]
    lines += [f"world {w}" for w in m.worlds]
    for a, b in sorted(m.relation, key=lambda p: (m.index(p[0]), m.index(p[1]))):
        if a != b:
            lines.append(f"rel {a} {b}")
    for w, true in zip(m.worlds, m.valuation):
        if true:
            items = sorted(true - {BOT_NAME}) + ([BOT_NAME] if BOT_NAME in true else [])
            lines.append(f"true {w} {' '.join(items)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Interpretation:
    """Parse the model text format; closure is applied and the result validated."""
    kind = None
    worlds: list[str] = []
    pairs: list[tuple[str, str]] = []
    true_at: dict[str, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "kind" and len(rest) == 1:
            try:
                kind = ModelKind.parse(rest[0])
            except ValueError as exc:
                raise ModelError(f"line {lineno}: {exc}") from None
        elif head == "world" and len(rest) == 1:
            if rest[0] in worlds:
                raise ModelError(f"line {lineno}: world {rest[0]} declared twice")
            worlds.append(rest[0])
        elif head == "rel" and len(rest) == 2:
            pairs.append((rest[0], rest[1]))
        elif head == "true" and len(rest) >= 1:
            w, *leaves = rest
            if w not in worlds:
                raise ModelError(f"line {lineno}: unknown world {w}")
            true_at.setdefault(w, set()).update(leaves)
        else:
            raise ModelError(f"line {lineno}: cannot read {raw.strip()!r}")
    if kind is None:
        raise ModelError("missing 'kind' line")
    if not worlds:
        raise ModelError("no worlds declared")
    m = Interpretation.build(worlds, pairs, true_at, kind)
    problems = validate(m)
    if problems:
        raise ModelError("invalid model: " + "; ".join(map(str, problems)))
    return m


def load(path: str | os.PathLike) -> Interpretation:
    return loads(Path(path).read_text())


def dump(m: Interpretation, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(m))
