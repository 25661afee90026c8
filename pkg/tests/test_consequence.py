import pytest
from hypothesis import given, settings, strategies as st

from stkripke.consequence import (Bound, Mode, Outcome, Query, check, check_bounded,
                                  check_classical, cross_check_st_classical,
                                  glivenko_test, minimal_witness, refutes, search,
                                  search_scalar)
from stkripke.formula import Not, parse
from stkripke.model import CeilingExceeded, ModelKind, trivial_model, validate
from stkripke.semantics import Inference, Metainference, parse_metainference, parse_sequent
from stkripke.suite import load_fixture

from conftest import formulas

M, I, C = ModelKind.MINIMAL, ModelKind.INTUITIONISTIC, ModelKind.CLASSICAL
CONJ = parse_metainference("[ => a ; => b ] =>* [ => a & b ]")


def q(logic, mode, text, max_worlds=3, **kw):
    payload = parse_metainference(text) if mode == Mode.META else parse_sequent(text)
    return Query(logic, mode, payload, Bound(max_worlds, **kw))


def test_classical_examples():
    assert check_classical(q(C, Mode.TARSKIAN, "=> ~a -> (a -> b)")).outcome == Outcome.HOLDS_EXACT
    assert check_classical(Query(C, Mode.META, CONJ)).outcome == Outcome.HOLDS_EXACT
    v = check_classical(q(C, Mode.TARSKIAN, "a => b"))
    assert v.outcome == Outcome.FAILS
    assert v.certificate.valuation == (frozenset({"a"}),)


def test_classical_never_bounded():
    for text in ("a => a", "=> a | ~a", "a, ~a =>"):
        assert check(q(C, Mode.ST, text)).outcome == Outcome.HOLDS_EXACT


def test_routing_errors():
    with pytest.raises(ValueError):
        check_classical(q(M, Mode.ST, "a => a"))
    with pytest.raises(ValueError):
        check_bounded(q(C, Mode.ST, "a => a"))
    with pytest.raises(ValueError):
        q(M, Mode.TARSKIAN, "a => a, b")
    with pytest.raises(TypeError):
        Query(M, Mode.META, parse_sequent("a => a"))


def test_minimal_st_refutes_with_trivial_model():
    v = check(q(M, Mode.ST, "a => a"))
    assert v.outcome == Outcome.FAILS
    assert v.certificate.valuation == trivial_model({"a"}).valuation


def test_minimal_witness_two_worlds():
    v = check(Query(M, Mode.TARSKIAN, Inference((), (minimal_witness(),)), Bound(2)))
    assert v.outcome == Outcome.FAILS
    cert = v.certificate
    # same frame as the paper's model: a single strict edge, bot only at the top
    assert len(cert.worlds) == 2
    lo, hi = sorted(cert.worlds, key=lambda w: -len(cert.successors(w)))
    assert set(cert.successors(lo)) == {lo, hi}
    assert cert.successors(hi) == [hi]
    assert "bot" in cert.valuation[cert.index(hi)] and "bot" not in cert.valuation[cert.index(lo)]
    assert all("b" not in v for v in cert.valuation)
    assert check(Query(M, Mode.TARSKIAN, Inference((), (minimal_witness(),)), Bound(1))).outcome \
        == Outcome.HOLDS_UP_TO_BOUND


def test_conjunction_intro_separation():
    for logic in (M, I):
        v = check(Query(logic, Mode.META, CONJ, Bound(3)))
        assert v.outcome == Outcome.FAILS
        rooted = check(Query(logic, Mode.META, CONJ, Bound(3, rooted=True)))
        assert len(rooted.certificate.worlds) == 3
        assert validate(rooted.certificate, logic) == []


def test_explosion():
    assert check(q(I, Mode.ST, "a, ~a => b", 4)).outcome == Outcome.HOLDS_UP_TO_BOUND
    assert check(q(M, Mode.ST, "a, ~a => b")).outcome == Outcome.FAILS
    assert check(q(C, Mode.ST, "a, ~a => b")).outcome == Outcome.HOLDS_EXACT
    for logic in (M, I):
        assert check(q(logic, Mode.META, "[ => bot ] =>* [ => b ]")).outcome == Outcome.HOLDS_UP_TO_BOUND
        assert check(q(logic, Mode.META, "[ => a ; => ~a ] =>* [ => b ]")).outcome == Outcome.FAILS


def test_minimal_st_separation_from_classical():
    query = q(M, Mode.ST, "=> ~a -> (a -> b)", 2)
    v = check(query)
    assert v.outcome == Outcome.FAILS
    assert refutes(v.certificate, query)
    assert refutes(load_fixture("glivenko_failure").model, query)


def test_extra_atoms():
    v = check(q(I, Mode.ST, "a => a", 2, extra_atoms=2))
    assert v.outcome == Outcome.HOLDS_UP_TO_BOUND
    assert q(I, Mode.ST, "a => a", extra_atoms=2).atom_names() == ["a", "fresh0", "fresh1"]
    one = check(q(I, Mode.ST, "a => a", 2)).models_checked
    assert v.models_checked > one


def test_ceiling(monkeypatch):
    monkeypatch.setenv("STKRIPKE_CEILING", "6")
    with pytest.raises(CeilingExceeded):
        check(q(I, Mode.ST, "a, b => c", 3))
    check(q(I, Mode.ST, "a, b => c", 2))


def test_determinism():
    first = check(Query(I, Mode.META, CONJ))
    second = check(Query(I, Mode.META, CONJ))
    assert first == second


def test_cross_check_small():
    rep = cross_check_st_classical(seed=3, trials=25)
    assert rep.ok and rep.trials == 25


def test_glivenko_examples():
    w = minimal_witness()
    assert check(Query(I, Mode.TARSKIAN, Inference((), (w,)), Bound(4))).outcome == Outcome.HOLDS_UP_TO_BOUND
    rep = glivenko_test(seed=5, trials=10, bound=Bound(3))
    assert rep.ok and rep.trials == 10
    assert check(q(C, Mode.TARSKIAN, "=> a")).outcome == Outcome.FAILS


# batched search against the scalar reference ----------------------------

payloads = st.one_of(
    st.tuples(st.just(Mode.ST), st.builds(lambda g, d: Inference(tuple(g), tuple(d)),
                                          st.lists(formulas(5), max_size=2), st.lists(formulas(5), max_size=2))),
    st.tuples(st.just(Mode.TARSKIAN), st.builds(lambda g, d: Inference(tuple(g), (d,)),
                                                st.lists(formulas(5), max_size=2), formulas(5))),
    st.tuples(st.just(Mode.META), st.builds(
        lambda ps, c: Metainference(tuple(ps), c),
        st.lists(st.builds(lambda g, d: Inference(tuple(g), tuple(d)),
                           st.lists(formulas(4), max_size=1), st.lists(formulas(4), max_size=1)), max_size=2),
        st.builds(lambda g, d: Inference(tuple(g), tuple(d)),
                  st.lists(formulas(4), max_size=1), st.lists(formulas(4), max_size=1)))),
)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(list(ModelKind)), payloads, st.integers(1, 3), st.booleans())
def test_batched_matches_scalar(logic, mode_payload, max_worlds, rooted):
    mode, payload = mode_payload
    query = Query(logic, mode, payload, Bound(max_worlds, rooted=rooted))
    fast, slow = search(query), search_scalar(query)
    assert fast.outcome == slow.outcome
    assert fast.certificate == slow.certificate
    assert fast.models_checked == slow.models_checked
    if fast.certificate is not None:
        assert validate(fast.certificate, logic) == []
        assert refutes(fast.certificate, query)


@settings(max_examples=100, deadline=None)
@given(st.lists(formulas(6), max_size=2), formulas(6))
def test_certificates_transfer_down_the_hierarchy(gamma, f):
    inf = Inference(tuple(gamma), (f,))
    cm = check(Query(C, Mode.ST, inf))
    if cm.outcome == Outcome.FAILS:
        # classical countermodels are intuitionistic and minimal countermodels
        for logic in (I, M):
            cert = cm.certificate.retag(logic)
            assert validate(cert) == []
            assert refutes(cert, Query(logic, Mode.ST, inf))
    vm = check(Query(M, Mode.TARSKIAN, inf, Bound(2)))
    if vm.outcome == Outcome.FAILS and validate(vm.certificate, I) == []:
        assert refutes(vm.certificate.retag(I), Query(I, Mode.TARSKIAN, inf))
