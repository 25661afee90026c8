"""Named fixtures from the paper's concrete models, plus the full battery.

A fixture is a model file in the text format and an expectations file with
one checkable claim per line::

    eval <world> <formula> = 0|1
    true <formula> = yes|no
    false <formula> = yes|no
    inference <sequent> = holds|fails
    meta <metainference> = holds|fails
    validates <kind> = yes|no
    check <logic> <mode> <max_worlds> <payload> = fails|holds_exact|holds_up_to_bound
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterator

from . import model, properties, semantics
from .consequence import Bound, Mode, Query, Report, check
from .formula import parse
from .model import Interpretation, ModelKind, loads, validate
from .semantics import parse_metainference, parse_sequent

FIXTURES = ("glivenko_failure", "trivial", "conjunction_intro", "explosion")
DEFAULT_SEED = 20231018
MUTATIONS = ("if-only", "pin-bottom")


@dataclass(frozen=True)
class Expectation:
    kind: str
    subject: str
    expected: str
    world: str | None = None
    logic: ModelKind | None = None
    mode: Mode | None = None
    max_worlds: int | None = None

    def __str__(self) -> str:
        head = self.kind
        if self.world is not None:
            head += f" {self.world}"
        if self.logic is not None:
            head += f" {self.logic.label}"
        if self.mode is not None:
            head += f" {self.mode.value} {self.max_worlds}"
        return f"{head} {self.subject} = {self.expected}"


@dataclass
class Fixture:
    name: str
    model: Interpretation | None
    expectations: list[Expectation]


@dataclass
class Item:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{': ' + self.detail if self.detail else ''}"


@dataclass
class SuiteReport:
    seed: int
    mutation: str | None = None
    items: list[Item] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.passed for i in self.items)

    def failed(self) -> list[Item]:
        return [i for i in self.items if not i.passed]

    def text(self) -> str:
        head = f"paper suite (seed={self.seed}" + (f", mutation={self.mutation}" if self.mutation else "") + ")"
        lines = [head] + [i.line() for i in self.items]
        n_fail = len(self.failed())
        lines.append(f"{len(self.items) - n_fail}/{len(self.items)} passed")
        return "\n".join(lines)


def parse_expectations(text: str) -> list[Expectation]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if " = " not in line:
            raise ValueError(f"line {lineno}: missing ' = '")
        claim, expected = line.rsplit(" = ", 1)
        kind, _, rest = claim.partition(" ")
        expected = expected.strip()
        if kind == "eval":
            world, _, subject = rest.partition(" ")
            out.append(Expectation(kind, subject.strip(), expected, world=world))
        elif kind == "check":
            logic, mode, bound, subject = rest.split(None, 3)
            out.append(Expectation(kind, subject, expected, logic=ModelKind.parse(logic),
                                   mode=Mode.parse(mode), max_worlds=int(bound)))
        elif kind in ("true", "false", "inference", "meta", "validates"):
            out.append(Expectation(kind, rest.strip(), expected))
        else:
            raise ValueError(f"line {lineno}: unknown expectation {kind!r}")
    return out


def load_fixture(name: str) -> Fixture:
    base = resources.files("stkripke") / "fixtures"
    m = loads((base / f"{name}.model").read_text())
    exps = parse_expectations((base / f"{name}.expect").read_text())
    return Fixture(name, m, exps)


def fixture_glivenko_failure() -> Fixture:
    return load_fixture("glivenko_failure")


def fixture_conjunction_intro() -> Fixture:
    return load_fixture("conjunction_intro")


def fixture_explosion_pair() -> Fixture:
    return load_fixture("explosion")


def fixture_trivial() -> Fixture:
    return load_fixture("trivial")


def _payload(mode: Mode, text: str):
    return parse_metainference(text) if mode == Mode.META else parse_sequent(text)


def actual(m: Interpretation | None, e: Expectation) -> str:
    """Compute the observed value for one expectation."""
    yes_no = {True: "yes", False: "no"}
    if e.kind == "eval":
        return str(semantics.evaluate(m, e.world, parse(e.subject)))
    if e.kind == "true":
        return yes_no[semantics.is_true(m, parse(e.subject))]
    if e.kind == "false":
        return yes_no[semantics.is_false(m, parse(e.subject))]
    if e.kind == "inference":
        return "holds" if semantics.satisfies_inference(m, parse_sequent(e.subject)) else "fails"
    if e.kind == "meta":
        return "holds" if semantics.satisfies_metainference(m, parse_metainference(e.subject)) else "fails"
    if e.kind == "validates":
        return yes_no[not validate(m, ModelKind.parse(e.subject))]
    if e.kind == "check":
        v = check(Query(e.logic, e.mode, _payload(e.mode, e.subject), Bound(e.max_worlds)))
        return v.outcome.value
    raise ValueError(e.kind)


def run_fixture(fx: Fixture) -> list[Item]:
    items = []
    for e in fx.expectations:
        try:
            got = actual(fx.model, e)
        except Exception as exc:  # reported, not raised: one bad line must not hide the rest
            items.append(Item(f"{fx.name}: {e}", False, f"error {exc}"))
            continue
        ok = got == e.expected
        items.append(Item(f"{fx.name}: {e}", ok, "" if ok else f"got {got}"))
    return items


@contextlib.contextmanager
def mutated(name: str | None) -> Iterator[None]:
    """Temporarily break the semantics in a named way (not thread-safe)."""
    if name is None:
        yield
        return
    if name not in MUTATIONS:
        raise ValueError(f"unknown mutation {name!r}; choose from {', '.join(MUTATIONS)}")
    saved = semantics.IMPLICATION_IF_ONLY, model.PIN_MINIMAL_BOTTOM
    if name == "if-only":
        semantics.IMPLICATION_IF_ONLY = True
    else:
        model.PIN_MINIMAL_BOTTOM = True
    try:
        yield
    finally:
        semantics.IMPLICATION_IF_ONLY, model.PIN_MINIMAL_BOTTOM = saved


def batteries(seed: int) -> list[Report]:
    return [
        properties.heredity(seed),
        properties.reduction(seed, trials=500),
        properties.falsity_collapse(seed),
        properties.bivalence(seed),
        properties.empty_premise(seed),
        properties.triviality(seed, trials=100),
        properties.cross_check_st_classical(seed, trials=200, bound=Bound(3)),
        properties.glivenko_test(seed, trials=100, bound=Bound(4)),
    ]


def run_suite(seed: int = DEFAULT_SEED, mutation: str | None = None,
              include_batteries: bool = True) -> SuiteReport:
    rep = SuiteReport(seed, mutation)
    with mutated(mutation):
        for name in FIXTURES:
            rep.items.extend(run_fixture(load_fixture(name)))
        if include_batteries:
            for r in batteries(seed):
                detail = "; ".join([f"{r.trials} cases"] + r.notes + r.discrepancies[:3])
                rep.items.append(Item(f"battery: {r.name}", r.ok, detail))
    return rep
