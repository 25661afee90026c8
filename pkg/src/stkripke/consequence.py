"""Consequence checking: exact for classical, bounded search otherwise.

The search walks the same canonical order as
:func:`stkripke.model.enumerate_models` but evaluates whole blocks of models
at once with numpy: each model is a row, each formula value a row of world
bitmasks.  Certificates are re-checked with the scalar evaluator before they
are returned.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence, Union

import numpy as np

from . import semantics
from .formula import (And, Atom, Bottom, Formula, Implies, Not, Or, atoms,
                      random_formula, subformulas)
from .model import (BOT_NAME, Interpretation, ModelKind, check_ceiling,
                    enumerate_models, frames, from_masks, leaves_for,
                    upsets, validate)
from .semantics import Inference, Metainference

Payload = Union[Inference, Metainference]

# rows per evaluation block
BLOCK_ROWS = 1 << 18


class Mode(enum.Enum):
    TARSKIAN = "tarskian"
    ST = "st"
    META = "meta"

    @classmethod
    def parse(cls, name: str) -> "Mode":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown mode {name!r}") from None


class Outcome(enum.Enum):
    FAILS = "fails"
    HOLDS_EXACT = "holds_exact"
    HOLDS_UP_TO_BOUND = "holds_up_to_bound"


@dataclass(frozen=True)
class Bound:
    max_worlds: int = 3
    extra_atoms: int = 0
    rooted: bool = False

    def __post_init__(self):
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        if self.extra_atoms < 0:
            raise ValueError("extra_atoms must be nonnegative")


@dataclass(frozen=True)
class Query:
    logic: ModelKind
    mode: Mode
    payload: Payload
    bound: Bound = field(default_factory=Bound)

    def __post_init__(self):
        if self.mode == Mode.META:
            if not isinstance(self.payload, Metainference):
                raise TypeError("meta mode needs a Metainference payload")
        elif not isinstance(self.payload, Inference):
            raise TypeError(f"{self.mode.value} mode needs an Inference payload")
        if self.mode == Mode.TARSKIAN and len(self.payload.succedent) != 1:
            raise ValueError("Tarskian queries need exactly one succedent formula")

    def atom_names(self) -> list[str]:
        names: set[str] = set()
        for f in self.payload.formulas():
            names |= atoms(f)
        ordered = sorted(names)
        i = 0
        while len(ordered) < len(names) + self.bound.extra_atoms:
            fresh = f"fresh{i}"
            if fresh not in names:
                ordered.append(fresh)
            i += 1
        return ordered


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    certificate: Interpretation | None = None
    bound: Bound | None = None
    models_checked: int = 0

    @property
    def holds(self) -> bool:
        return self.outcome != Outcome.FAILS

    def describe(self) -> str:
        if self.outcome == Outcome.FAILS:
            return f"fails ({len(self.certificate.worlds)}-world countermodel)"
        if self.outcome == Outcome.HOLDS_EXACT:
            return "holds (exact)"
        scope = "rooted frames, " if self.bound.rooted else ""
        return (f"holds up to bound ({scope}max_worlds={self.bound.max_worlds}, "
                f"models checked={self.models_checked})")


class InternalError(AssertionError):
    pass


# --------------------------------------------------------------------------
# scalar route

def refutes(m: Interpretation, q: Query) -> bool:
    """Whether ``m`` is a countermodel to the query payload."""
    if q.mode == Mode.TARSKIAN:
        return not semantics.satisfies_tarskian(m, q.payload)
    if q.mode == Mode.ST:
        return not semantics.satisfies_inference(m, q.payload)
    return not semantics.satisfies_metainference(m, q.payload)


def search_scalar(q: Query) -> Verdict:
    """Model-by-model search over :func:`enumerate_models`; slow reference route."""
    kind = q.logic
    max_worlds = 1 if kind == ModelKind.CLASSICAL else q.bound.max_worlds
    count = 0
    for m in enumerate_models(kind, max_worlds, q.atom_names(), q.bound.rooted):
        count += 1
        if refutes(m, q):
            return Verdict(Outcome.FAILS, m, q.bound, count)
    if kind == ModelKind.CLASSICAL:
        return Verdict(Outcome.HOLDS_EXACT, None, None, count)
    return Verdict(Outcome.HOLDS_UP_TO_BOUND, None, q.bound, count)


# --------------------------------------------------------------------------
# batched route

@dataclass
class Block:
    """A run of consecutive models, all with ``n`` worlds."""

    n: int
    up: np.ndarray       # (n, rows) successor masks
    leaves: np.ndarray   # (k, rows) leaf masks
    start: int           # canonical index of the first row

    @property
    def rows(self) -> int:
        return self.up.shape[1]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def model(self, row: int, leaf_names: Sequence[str], kind: ModelKind) -> Interpretation:
        up = [int(x) for x in self.up[:, row]]
        masks = [int(x) for x in self.leaves[:, row]]
        return from_masks(up, leaf_names, masks, kind)


def _product_rows(ups: tuple[int, ...], k: int) -> np.ndarray:
    """(k, len(ups)**k) array in itertools.product order."""
    u = np.asarray(ups, dtype=np.uint16)
    if k == 0:
        return np.zeros((0, 1), dtype=np.uint16)
    grids = np.meshgrid(*([u] * k), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids])


def blocks(n: int, k: int, rooted: bool = False) -> Iterator[Block]:
    """Canonical model blocks with ``n`` worlds and ``k`` leaves."""
    pending_up: list[np.ndarray] = []
    pending_leaves: list[np.ndarray] = []
    rows = 0
    start = 0
    for up in frames(n, rooted):
        leaf_rows = _product_rows(upsets(up), k)
        r = leaf_rows.shape[1]
        up_rows = np.repeat(np.asarray(up, dtype=np.uint16)[:, None], r, axis=1)
        pending_up.append(up_rows)
        pending_leaves.append(leaf_rows)
        rows += r
        if rows >= BLOCK_ROWS:
            yield Block(n, np.concatenate(pending_up, axis=1), np.concatenate(pending_leaves, axis=1), start)
            start += rows
            pending_up, pending_leaves, rows = [], [], 0
    if rows:
        yield Block(n, np.concatenate(pending_up, axis=1), np.concatenate(pending_leaves, axis=1), start)


def block_masks(block: Block, leaf_names: Sequence[str], fs: Sequence[Formula]) -> dict[Formula, np.ndarray]:
    """World bitmasks of every subformula of ``fs`` for every row."""
    pos = {name: j for j, name in enumerate(leaf_names)}
    zero = np.zeros(block.rows, dtype=np.uint16)
    vals: dict[Formula, np.ndarray] = {}
    for g in subformulas(*fs):
        if isinstance(g, Atom):
            vals[g] = block.leaves[pos[g.name]] if g.name in pos else zero
        elif isinstance(g, Bottom):
            vals[g] = block.leaves[pos[BOT_NAME]] if BOT_NAME in pos else zero
        elif isinstance(g, And):
            vals[g] = vals[g.left] & vals[g.right]
        elif isinstance(g, Or):
            vals[g] = vals[g.left] | vals[g.right]
        elif semantics.IMPLICATION_IF_ONLY:
            vals[g] = np.full(block.rows, block.full, dtype=np.uint16)
        else:
            bad = vals[g.left] & ~vals[g.right]
            out = np.zeros(block.rows, dtype=np.uint16)
            for i in range(block.n):
                out |= ((block.up[i] & bad) == 0).astype(np.uint16) << i
            vals[g] = out
    return vals


def _inference_fails(vals, rows: int, full: int, inf: Inference) -> np.ndarray:
    bad = np.ones(rows, dtype=bool)
    for g in inf.antecedent:
        bad &= vals[g] == full
    for d in inf.succedent:
        bad &= vals[Not(d)] == full
    return bad


def _refuted_rows(block: Block, leaf_names: Sequence[str], q: Query) -> np.ndarray:
    payload = q.payload
    if q.mode == Mode.META:
        fs = [f for s in payload.inferences() for f in s.antecedent] + \
             [Not(f) for s in payload.inferences() for f in s.succedent]
    elif q.mode == Mode.ST:
        fs = list(payload.antecedent) + [Not(f) for f in payload.succedent]
    else:
        fs = list(payload.antecedent) + list(payload.succedent)
    vals = block_masks(block, leaf_names, fs)
    full = block.full
    if q.mode == Mode.TARSKIAN:
        bad = np.ones(block.rows, dtype=bool)
        for g in payload.antecedent:
            bad &= vals[g] == full
        return bad & (vals[payload.succedent[0]] != full)
    if q.mode == Mode.ST:
        return _inference_fails(vals, block.rows, full, payload)
    bad = _inference_fails(vals, block.rows, full, payload.conclusion)
    for p in payload.premises:
        bad &= ~_inference_fails(vals, block.rows, full, p)
    return bad


def search(q: Query) -> Verdict:
    """First countermodel in canonical order, or a holds verdict."""
    kind = q.logic
    names = q.atom_names()
    max_worlds = 1 if kind == ModelKind.CLASSICAL else q.bound.max_worlds
    check_ceiling(kind, max_worlds, names)
    leaf_names = leaves_for(kind, names)
    checked = 0
    for n in range(1, max_worlds + 1):
        for block in blocks(n, len(leaf_names), q.bound.rooted):
            hits = np.flatnonzero(_refuted_rows(block, leaf_names, q))
            if hits.size:
                row = int(hits[0])
                cert = block.model(row, leaf_names, kind)
                _certify(cert, q)
                return Verdict(Outcome.FAILS, cert, q.bound, checked + row + 1)
            checked += block.rows
    if kind == ModelKind.CLASSICAL:
        return Verdict(Outcome.HOLDS_EXACT, None, None, checked)
    return Verdict(Outcome.HOLDS_UP_TO_BOUND, None, q.bound, checked)


def _certify(cert: Interpretation, q: Query) -> None:
    problems = validate(cert, q.logic)
    if problems:
        raise InternalError(f"certificate fails validation: {problems}")
    if not refutes(cert, q):
        raise InternalError("certificate does not refute the payload under the scalar evaluator")


def check_classical(q: Query) -> Verdict:
    if q.logic != ModelKind.CLASSICAL:
        raise ValueError("check_classical needs a classical query")
    return search(q)


def check_bounded(q: Query) -> Verdict:
    if q.logic == ModelKind.CLASSICAL:
        raise ValueError("check_bounded is for minimal and intuitionistic queries")
    return search(q)


def check(q: Query) -> Verdict:
    return check_classical(q) if q.logic == ModelKind.CLASSICAL else check_bounded(q)


# --------------------------------------------------------------------------
# random batteries

DEFAULT_NAMES = ("a", "b", "c")


def random_inference(rng: random.Random, n_atoms: int = 3, max_depth: int = 4,
                     max_antecedent: int = 2, succedent: tuple[int, int] = (1, 1)) -> Inference:
    names = list(DEFAULT_NAMES[:n_atoms])
    gamma = tuple(random_formula(rng, names, max_depth) for _ in range(rng.randint(0, max_antecedent)))
    delta = tuple(random_formula(rng, names, max_depth) for _ in range(rng.randint(*succedent)))
    return Inference(gamma, delta)


@dataclass
class Report:
    name: str
    trials: int = 0
    discrepancies: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        return f"{status} {self.name}: {self.trials} trials, {len(self.discrepancies)} discrepancies{extra}"


def cross_check_st_classical(seed: int = 0, trials: int = 200, bound: Bound = Bound(3),
                             n_atoms: int = 3, max_depth: int = 4) -> Report:
    """Classical exact verdict against bounded intuitionistic ST search."""
    rng = random.Random(seed)
    rep = Report("intuitionistic ST vs classical")
    fails = 0
    for _ in range(trials):
        inf = random_inference(rng, n_atoms, max_depth)
        classical = check(Query(ModelKind.CLASSICAL, Mode.ST, inf))
        bounded = check(Query(ModelKind.INTUITIONISTIC, Mode.ST, inf, bound))
        rep.trials += 1
        if not classical.holds:
            fails += 1
            if bounded.holds:
                rep.discrepancies.append(f"internal error: classical countermodel missed by search: {inf}")
        elif not bounded.holds:
            rep.discrepancies.append(f"bug: intuitionistic ST countermodel to classically valid {inf}")
    rep.notes.append(f"{fails} classically invalid")
    return rep


def glivenko_test(seed: int = 0, trials: int = 100, bound: Bound = Bound(4),
                  n_atoms: int = 3, max_depth: int = 4, max_attempts: int = 100_000) -> Report:
    """Classically valid pairs must have no bounded intuitionistic refutation of the double negation."""
    rng = random.Random(seed)
    rep = Report("double-negation translation")
    attempts = 0
    while rep.trials < trials and attempts < max_attempts:
        attempts += 1
        inf = random_inference(rng, n_atoms, max_depth)
        tarski = Inference(inf.antecedent, inf.succedent[:1])
        if not check(Query(ModelKind.CLASSICAL, Mode.TARSKIAN, tarski)).holds:
            continue
        rep.trials += 1
        nn = Inference(tarski.antecedent, (Not(Not(tarski.succedent[0])),))
        v = check(Query(ModelKind.INTUITIONISTIC, Mode.TARSKIAN, nn, bound))
        if not v.holds:
            rep.discrepancies.append(f"intuitionistic countermodel to {nn}")
    if rep.trials < trials:
        rep.discrepancies.append(f"only {rep.trials} classically valid pairs in {attempts} attempts")
    witness = minimal_witness()
    minimal = check(Query(ModelKind.MINIMAL, Mode.TARSKIAN, Inference((), (witness,)), Bound(2)))
    if minimal.holds:
        rep.discrepancies.append(f"minimal witness {witness} not refuted")
    rep.notes.append(f"{attempts} pairs sampled")
    rep.notes.append(f"minimal witness {'refuted' if not minimal.holds else 'NOT refuted'}")
    return rep


def minimal_witness() -> Formula:
    a, b = Atom("a"), Atom("b")
    return Not(Not(Implies(Not(a), Implies(a, b))))
