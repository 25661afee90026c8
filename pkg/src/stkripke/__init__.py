"""Kripke semantics for minimal, intuitionistic and classical logic with
strict-tolerant inference, metainference, and bounded countermodel search."""

from .consequence import Bound, Mode, Outcome, Query, Verdict, check
from .formula import BOT, And, Atom, Bottom, Formula, Implies, Not, Or, parse, unparse
from .model import Interpretation, ModelKind, closure, enumerate_models, trivial_model, validate
from .semantics import (Inference, Metainference, evaluate, is_false, is_true,
                        parse_metainference, parse_sequent, reduce_succedent,
                        satisfies_inference, satisfies_metainference)

__version__ = "0.1.0"
