"""Evaluation of formulas in Kripke interpretations and ST satisfaction.

Formula values are computed bottom-up as world bitmasks: bit ``i`` of
``truth_mask(m, f)`` is ``v_{w_i}(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .formula import (BOT, And, Atom, Bottom, Formula, Implies, Not, Or,
                      ParseError, Parser, disjoin, subformulas, unparse)
from .model import BOT_NAME, Interpretation

# Mutation hook: when set, every implication gets value 1 (the laxest
# valuation compatible with reading the implication clause as "if" only).
IMPLICATION_IF_ONLY = False


@dataclass(frozen=True)
class Inference:
    antecedent: tuple[Formula, ...] = ()
    succedent: tuple[Formula, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple(self.antecedent))
        object.__setattr__(self, "succedent", tuple(self.succedent))

    def formulas(self) -> tuple[Formula, ...]:
        return self.antecedent + self.succedent

    def __str__(self) -> str:
        return format_sequent(self)


@dataclass(frozen=True)
class Metainference:
    premises: tuple[Inference, ...] = ()
    conclusion: Inference = field(default_factory=Inference)

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))

    def inferences(self) -> tuple[Inference, ...]:
        return self.premises + (self.conclusion,)

    def formulas(self) -> tuple[Formula, ...]:
        return tuple(f for s in self.inferences() for f in s.formulas())

    def __str__(self) -> str:
        return format_metainference(self)


# --------------------------------------------------------------------------
# evaluation

def implication_mask(up_masks: Sequence[int], a: int, b: int) -> int:
    if IMPLICATION_IF_ONLY:
        return (1 << len(up_masks)) - 1
    bad = a & ~b
    out = 0
    for i, up in enumerate(up_masks):
        if up & bad == 0:
            out |= 1 << i
    return out


def truth_masks(m: Interpretation, fs: Iterable[Formula]) -> dict[Formula, int]:
    """World bitmask for every subformula of ``fs``."""
    vals: dict[Formula, int] = {}
    up = m.up_masks
    for g in subformulas(*fs):
        if isinstance(g, Atom):
            vals[g] = m.leaf_mask(g.name)
        elif isinstance(g, Bottom):
            vals[g] = m.leaf_mask(BOT_NAME)
        elif isinstance(g, And):
            vals[g] = vals[g.left] & vals[g.right]
        elif isinstance(g, Or):
            vals[g] = vals[g.left] | vals[g.right]
        else:
            vals[g] = implication_mask(up, vals[g.left], vals[g.right])
    return vals


def truth_mask(m: Interpretation, f: Formula) -> int:
    return truth_masks(m, [f])[f]


def evaluate(m: Interpretation, w: str, f: Formula) -> int:
    i = m.index(w)
    return truth_mask(m, f) >> i & 1


def world_values(m: Interpretation, f: Formula) -> dict[str, int]:
    mask = truth_mask(m, f)
    return {w: mask >> i & 1 for i, w in enumerate(m.worlds)}


def is_true(m: Interpretation, f: Formula) -> bool:
    return truth_mask(m, f) == m.full_mask


def is_false(m: Interpretation, f: Formula) -> bool:
    """Strong falsity: the negation of ``f`` holds at every world."""
    return truth_mask(m, Not(f)) == m.full_mask


def satisfies_inference(m: Interpretation, inf: Inference) -> bool:
    full = m.full_mask
    vals = truth_masks(m, list(inf.antecedent) + [Not(d) for d in inf.succedent])
    all_true = all(vals[g] == full for g in inf.antecedent)
    all_false = all(vals[Not(d)] == full for d in inf.succedent)
    return not (all_true and all_false)


def satisfies_metainference(m: Interpretation, meta: Metainference) -> bool:
    if any(not satisfies_inference(m, p) for p in meta.premises):
        return True
    return satisfies_inference(m, meta.conclusion)


def satisfies_tarskian(m: Interpretation, inf: Inference) -> bool:
    """Truth preservation from all of the antecedent to the single succedent."""
    if len(inf.succedent) != 1:
        raise ValueError("Tarskian consequence needs exactly one succedent formula")
    if not all(is_true(m, g) for g in inf.antecedent):
        return True
    return is_true(m, inf.succedent[0])


def reduce_succedent(inf: Inference) -> Inference:
    """Replace a nonempty succedent by its right-nested disjunction."""
    if not inf.succedent:
        raise ValueError("cannot reduce an empty succedent")
    return Inference(inf.antecedent, (disjoin(list(inf.succedent)),))


# --------------------------------------------------------------------------
# sequent syntax:  G1, G2 => D1, D2     [ s1 ; s2 ] =>* [ s ]

def _formula_list(p: Parser, stops: tuple[str, ...]) -> list[Formula]:
    out: list[Formula] = []
    if p.peek() is None or p.at(*stops):
        return out
    out.append(p.formula())
    while p.at(","):
        p.next()
        out.append(p.formula())
    return out


def _sequent(p: Parser, stops: tuple[str, ...]) -> Inference:
    left = _formula_list(p, ("=>",))
    p.expect("=>")
    right = _formula_list(p, stops)
    return Inference(tuple(left), tuple(right))


def parse_sequent(text: str) -> Inference:
    p = Parser(text)
    if not p.tokens:
        raise ParseError("empty sequent", 0, text)
    s = _sequent(p, ())
    p.done()
    return s


def parse_metainference(text: str) -> Metainference:
    p = Parser(text)
    if not p.tokens:
        raise ParseError("empty metainference", 0, text)
    p.expect("[")
    premises: list[Inference] = []
    if not p.at("]"):
        premises.append(_sequent(p, (";", "]")))
        while p.at(";"):
            p.next()
            premises.append(_sequent(p, (";", "]")))
    p.expect("]")
    p.expect("=>*")
    p.expect("[")
    conclusion = _sequent(p, ("]",))
    p.expect("]")
    p.done()
    return Metainference(tuple(premises), conclusion)


def format_sequent(inf: Inference) -> str:
    left = ", ".join(unparse(f) for f in inf.antecedent)
    right = ", ".join(unparse(f) for f in inf.succedent)
    return f"{left} => {right}".strip()


def format_metainference(meta: Metainference) -> str:
    prem = " ; ".join(format_sequent(s) for s in meta.premises)
    return f"[{' ' + prem + ' ' if prem else ''}] =>* [ {format_sequent(meta.conclusion)} ]"


__all__ = [
    "Inference", "Metainference", "evaluate", "world_values", "truth_mask",
    "truth_masks", "is_true", "is_false", "satisfies_inference",
    "satisfies_metainference", "satisfies_tarskian", "reduce_succedent",
    "parse_sequent", "parse_metainference", "format_sequent",
    "format_metainference", "BOT",
]
