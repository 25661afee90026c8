import itertools

import pytest
from hypothesis import given, settings, strategies as st

from stkripke import semantics
from stkripke.formula import BOT, Atom, Implies, Not, ParseError, parse, subformulas
from stkripke.model import Interpretation, ModelError, ModelKind, trivial_model
from stkripke.semantics import (Inference, Metainference, evaluate, format_metainference,
                                format_sequent, is_false, is_true, parse_metainference,
                                parse_sequent, reduce_succedent, satisfies_inference,
                                satisfies_metainference, world_values)
from stkripke.suite import load_fixture

from conftest import formulas, models

F = parse("~a -> (a -> b)")
a, b = Atom("a"), Atom("b")


@pytest.fixture
def lemma_model():
    return load_fixture("glivenko_failure").model


@pytest.fixture
def fork_model():
    return load_fixture("conjunction_intro").model


def classical_world(true):
    return Interpretation(("w",), frozenset({("w", "w")}), (frozenset(true),), ModelKind.CLASSICAL)


def test_lemma_values(lemma_model):
    m = lemma_model
    assert (evaluate(m, "w", Not(a)), evaluate(m, "w'", Not(a))) == (0, 1)
    assert evaluate(m, "w'", parse("a -> b")) == 0
    assert evaluate(m, "w'", F) == 0 and evaluate(m, "w", F) == 0
    assert evaluate(m, "w", Not(Not(F))) == 0 and evaluate(m, "w'", Not(Not(F))) == 1


def test_negated_bottom_always_true(fork_model, lemma_model):
    for m in (fork_model, lemma_model, trivial_model({"a"})):
        assert is_true(m, Not(BOT))


def test_unknown_world(lemma_model):
    with pytest.raises(ModelError):
        evaluate(lemma_model, "nowhere", a)


def test_truth_and_falsity_examples(lemma_model, fork_model):
    tm = trivial_model({"a", "b"})
    assert is_true(tm, parse("(a -> b) & ~a | b"))
    assert not is_true(lemma_model, Not(Not(F)))
    assert is_true(classical_world({"a"}), a)
    assert is_false(trivial_model({"a"}), a) and is_true(trivial_model({"a"}), a)
    assert is_false(fork_model, parse("a & b"))
    assert not is_false(fork_model, a) and not is_false(fork_model, b)


def test_inference_examples(fork_model):
    tm = trivial_model({"a", "b"})
    assert not satisfies_inference(tm, parse_sequent("a => b"))
    assert not satisfies_inference(tm, parse_sequent("=> a"))
    assert satisfies_inference(fork_model, parse_sequent("=> a"))
    assert satisfies_inference(fork_model, parse_sequent("=> b"))
    assert not satisfies_inference(classical_world({"a"}), parse_sequent("a => b"))


def test_empty_sides():
    m = classical_world({"a"})
    assert not satisfies_inference(m, parse_sequent("a =>"))
    assert satisfies_inference(m, parse_sequent("b =>"))
    assert not satisfies_inference(m, parse_sequent("=>"))


def test_metainference_examples(fork_model):
    meta = parse_metainference("[ => a ; => b ] =>* [ => a & b ]")
    assert not satisfies_metainference(fork_model, meta)
    tm = trivial_model({"a", "b"})
    assert satisfies_metainference(tm, parse_metainference("[ => a ] =>* [ => b ]"))
    assert satisfies_metainference(tm, parse_metainference("[ b => a ; a => b ] =>* [ => b ]"))


def test_reduce_succedent():
    g = (parse("c"),)
    assert reduce_succedent(Inference(g, (a, b))) == Inference(g, (parse("a | b"),))
    assert reduce_succedent(Inference(g, (a,))) == Inference(g, (a,))
    with pytest.raises(ValueError):
        reduce_succedent(Inference(g, ()))


def test_reduction_exhaustive_on_lemma_model(lemma_model):
    # every antecedent of size <= 2 and succedent pair over the fixture's subformulas
    subs = subformulas(Not(Not(F)))
    for k in range(3):
        for gamma in itertools.combinations(subs, k):
            for d1, d2 in itertools.product(subs, repeat=2):
                inf = Inference(gamma, (d1, d2))
                assert satisfies_inference(lemma_model, inf) == satisfies_inference(lemma_model, reduce_succedent(inf))


@pytest.mark.parametrize("text, expected", [
    ("a, ~a => b", Inference((a, Not(a)), (b,))),
    ("=> a -> b", Inference((), (parse("a -> b"),))),
    ("a =>", Inference((a,), ())),
    ("=>", Inference()),
    ("a => b, a & b", Inference((a,), (b, parse("a & b")))),
])
def test_parse_sequent(text, expected):
    assert parse_sequent(text) == expected
    assert parse_sequent(format_sequent(expected)) == expected


def test_parse_metainference():
    meta = parse_metainference("[ => a ; => ~a ] =>* [ => b ]")
    assert meta == Metainference((Inference((), (a,)), Inference((), (Not(a),))), Inference((), (b,)))
    assert parse_metainference(format_metainference(meta)) == meta
    empty = parse_metainference("[] =>* [ a => a ]")
    assert empty.premises == () and parse_metainference(format_metainference(empty)) == empty


@pytest.mark.parametrize("text", ["", "a", "a => b =>", "[ => a ] => [ => b ]", "[ => a ] =>* => b", "[ => a ; ] =>* [ => b ]"])
def test_bad_sequents(text):
    with pytest.raises(ParseError):
        if text.startswith("["):
            parse_metainference(text)
        else:
            parse_sequent(text)


# properties ---------------------------------------------------------------

@settings(max_examples=300)
@given(models(kinds=(ModelKind.MINIMAL,)), formulas())
def test_heredity(m, f):
    vals = world_values(m, f)
    for u, v in m.relation:
        assert not vals[u] or vals[v]


@settings(max_examples=300)
@given(models(kinds=(ModelKind.INTUITIONISTIC,)), formulas())
def test_intuitionistic_falsity_collapse(m, f):
    assert is_false(m, f) == all(v == 0 for v in world_values(m, f).values())


@given(models(kinds=(ModelKind.CLASSICAL,)), formulas())
def test_classical_bivalence(m, f):
    assert is_false(m, f) != is_true(m, f)


@settings(max_examples=300)
@given(models(), st.lists(formulas(6), max_size=2), st.lists(formulas(6), min_size=1, max_size=3))
def test_reduction_equivalence(m, gamma, delta):
    inf = Inference(tuple(gamma), tuple(delta))
    assert satisfies_inference(m, inf) == satisfies_inference(m, reduce_succedent(inf))


@given(models(), st.lists(formulas(6), max_size=2), st.lists(formulas(6), max_size=2))
def test_empty_premise_meta(m, gamma, delta):
    inf = Inference(tuple(gamma), tuple(delta))
    assert satisfies_metainference(m, Metainference((), inf)) == satisfies_inference(m, inf)


@given(formulas())
def test_trivial_model_totality(f):
    tm = trivial_model({"a", "b", "c"})
    assert is_true(tm, f) and is_false(tm, f)


def test_if_only_mutation_changes_lemma_values(lemma_model, monkeypatch):
    monkeypatch.setattr(semantics, "IMPLICATION_IF_ONLY", True)
    assert evaluate(lemma_model, "w", Not(a)) == 1
