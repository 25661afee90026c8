"""Randomised and exhaustive property batteries over the semantics.

Each battery returns a :class:`~stkripke.consequence.Report`; an empty
discrepancy list means the property held on every case examined.
"""

from __future__ import annotations

import random
from typing import Callable

import numpy as np

from . import semantics
from .consequence import (Bound, Mode, Query, Report, blocks, block_masks,
                          check, cross_check_st_classical, glivenko_test,
                          random_inference)
from .formula import (And, Atom, Bottom, Formula, Implies, Not, Or, all_formulas,
                      atoms, random_formula)
from .model import ModelKind, leaves_for, random_model, trivial_model
from .semantics import Inference, Metainference

NAMES = ["a", "b", "c"]


def classical_value(f: Formula, true_atoms: set[str]) -> bool:
    """Two-valued truth table; used as an oracle independent of the Kripke code."""
    if isinstance(f, Atom):
        return f.name in true_atoms
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return classical_value(f.left, true_atoms) and classical_value(f.right, true_atoms)
    if isinstance(f, Or):
        return classical_value(f.left, true_atoms) or classical_value(f.right, true_atoms)
    return (not classical_value(f.left, true_atoms)) or classical_value(f.right, true_atoms)


def heredity(seed: int = 0, exhaustive_depth: int = 2, random_formulas: int = 500,
             max_depth: int = 4, max_worlds: int = 3, n_atoms: int = 2) -> Report:
    """Truth persists along R, over every minimal model in the bound.

    Formulas: all of depth <= ``exhaustive_depth`` plus a random sample up to
    ``max_depth``.
    """
    rng = random.Random(seed)
    names = NAMES[:n_atoms]
    rep = Report("heredity")
    fs = list(all_formulas(names, exhaustive_depth))
    fs += [random_formula(rng, names, max_depth) for _ in range(random_formulas)]
    leaves = leaves_for(ModelKind.MINIMAL, names)
    models = 0
    for n in range(1, max_worlds + 1):
        for block in blocks(n, len(leaves)):
            models += block.rows
            vals = block_masks(block, leaves, fs)
            for f in fs:
                m = vals[f]
                for i in range(n):
                    bad = ((m >> i) & 1).astype(bool) & ((block.up[i] & ~m) != 0)
                    if bad.any():
                        row = int(np.flatnonzero(bad)[0])
                        rep.discrepancies.append(f"{f} not hereditary from w{i} in model #{block.start + row}")
                        break
            rep.trials += block.rows * len(fs)
    # scalar route on a random sample
    for _ in range(300):
        mdl = random_model(rng, ModelKind.MINIMAL, max_worlds, names)
        f = random_formula(rng, names, max_depth)
        vals = semantics.world_values(mdl, f)
        for u, v in mdl.relation:
            if vals[u] and not vals[v]:
                rep.discrepancies.append(f"scalar: {f} true at {u} but not {v}")
        rep.trials += 1
    rep.notes.append(f"{models} models x {len(fs)} formulas")
    return rep


def reduction(seed: int = 0, trials: int = 500, max_worlds: int = 3, max_depth: int = 4) -> Report:
    """Multi-succedent inferences agree with their disjunctive reduction."""
    rng = random.Random(seed)
    rep = Report("succedent reduction")
    for _ in range(trials):
        kind = rng.choice(list(ModelKind))
        inf = random_inference(rng, 3, max_depth, succedent=(1, 3))
        m = random_model(rng, kind, max_worlds, NAMES)
        native = semantics.satisfies_inference(m, inf)
        reduced = semantics.satisfies_inference(m, semantics.reduce_succedent(inf))
        if native != reduced:
            rep.discrepancies.append(f"{kind.label} model disagrees on {inf}")
        rep.trials += 1
    return rep


def falsity_collapse(seed: int = 0, trials: int = 500, max_worlds: int = 3, max_depth: int = 4) -> Report:
    """Intuitionistic falsity is value 0 everywhere."""
    rng = random.Random(seed)
    rep = Report("intuitionistic falsity collapse")
    for _ in range(trials):
        m = random_model(rng, ModelKind.INTUITIONISTIC, max_worlds, NAMES)
        f = random_formula(rng, NAMES, max_depth)
        if semantics.is_false(m, f) != (semantics.truth_mask(m, f) == 0):
            rep.discrepancies.append(f"{f}")
        rep.trials += 1
    return rep


def bivalence(seed: int = 0, trials: int = 500, max_depth: int = 4) -> Report:
    """Classical models: falsity is non-truth, and ST matches the truth table."""
    rng = random.Random(seed)
    rep = Report("classical bivalence")
    for _ in range(trials):
        m = random_model(rng, ModelKind.CLASSICAL, 1, NAMES)
        true_atoms = set(m.valuation[0])
        f = random_formula(rng, NAMES, max_depth)
        if semantics.is_false(m, f) == semantics.is_true(m, f):
            rep.discrepancies.append(f"{f} is both or neither true and false")
        if semantics.is_true(m, f) != classical_value(f, true_atoms):
            rep.discrepancies.append(f"{f} disagrees with the truth table")
        inf = random_inference(rng, 3, max_depth, succedent=(0, 3))
        table = not (all(classical_value(g, true_atoms) for g in inf.antecedent)
                     and not any(classical_value(d, true_atoms) for d in inf.succedent))
        if semantics.satisfies_inference(m, inf) != table:
            rep.discrepancies.append(f"ST inference {inf} disagrees with the truth table")
        rep.trials += 1
    return rep


def empty_premise(seed: int = 0, trials: int = 500, max_worlds: int = 3, max_depth: int = 3) -> Report:
    """A metainference without premises behaves like its conclusion."""
    rng = random.Random(seed)
    rep = Report("empty-premise metainference")
    for _ in range(trials):
        kind = rng.choice(list(ModelKind))
        m = random_model(rng, kind, max_worlds, NAMES)
        inf = random_inference(rng, 3, max_depth, succedent=(0, 2))
        if semantics.satisfies_metainference(m, Metainference((), inf)) != semantics.satisfies_inference(m, inf):
            rep.discrepancies.append(f"{kind.label}: {inf}")
        rep.trials += 1
    return rep


def triviality(seed: int = 0, trials: int = 100, max_depth: int = 4, max_worlds: int = 3) -> Report:
    """Minimal ST refutes every inference with a nonempty succedent, via the trivial model."""
    rng = random.Random(seed)
    rep = Report("minimal ST triviality")
    for _ in range(trials):
        inf = random_inference(rng, 3, max_depth)
        names = set().union(*(atoms(f) for f in inf.formulas()))
        tm = trivial_model(names)
        for f in inf.formulas():
            if not (semantics.is_true(tm, f) and semantics.is_false(tm, f)):
                rep.discrepancies.append(f"trivial model does not make {f} both true and false")
        if semantics.satisfies_inference(tm, inf):
            rep.discrepancies.append(f"trivial model satisfies {inf}")
        v = check(Query(ModelKind.MINIMAL, Mode.ST, inf, Bound(max_worlds)))
        if v.holds:
            rep.discrepancies.append(f"minimal ST search finds no countermodel to {inf}")
        rep.trials += 1
    return rep


BATTERIES: dict[str, Callable[..., Report]] = {
    "heredity": heredity,
    "reduction": reduction,
    "falsity": falsity_collapse,
    "bivalence": bivalence,
    "empty-premise": empty_premise,
    "triviality": triviality,
    "thm44": cross_check_st_classical,
    "glivenko": glivenko_test,
}
