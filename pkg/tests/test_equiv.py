import random

import pytest
from hypothesis import given, strategies as st

from hteq.corpus import random_formula, random_theory, theory_pairs
from hteq.equiv import (
    EquivNotion, Verdict, characteristic_set, decide_equivalence, dual_theory,
    equivalence_interpretations, gamma_phi, is_closed, is_there_closed,
    is_total_closed, is_totality_preserving, membership_via_gamma, restrict,
    tau_epsilon,
)
from hteq.ht import (
    HTInterpretation, InterpretationSet, Tag, answer_sets_theory, countermodels,
    enumerate_ht, equilibrium_models, ht_sat,
)
from hteq.syntax import (
    BOT, And, Atom, Impl, Signature, Theory, format_formula, neg, parse_program,
    parse_theory,
)
from tests import reference as ref
from tests.conftest import theories

A = Signature(["a"])
AB = Signature(["a", "b"])
NAMES = ("C_s", "C_c", "C_u", "C_a", "E_s", "E_c", "E_u", "E_a")
DISJ = parse_theory("a | b.")
SHIFTED = parse_program("a :- not b.\nb :- not a.")


def fs(*names):
    return frozenset(names)


def pairs(members):
    return {(m.here_atoms, m.there_atoms) for m in members}


def gamma1(n):
    return Theory.of([Atom(f"a{i}") for i in range(1, n + 1)])


def gamma2(n):
    fs_ = [Impl(neg(Atom(f"a{i}")), Atom(f"a{i}")) for i in range(1, n + 1)]
    fs_ += [Impl(Atom(f"a{i + 1}"), Atom(f"a{i}")) for i in range(1, n)]
    return Theory.of(fs_)


# closure predicates -------------------------------------------------------

def test_closure_examples():
    cs = countermodels(parse_theory("a."))
    assert is_there_closed(HTInterpretation.of([], ["a"], A), cs)
    assert not is_there_closed(HTInterpretation.of([], [], A), cs)
    s = InterpretationSet.from_members([({"a"}, {"a"}), (set(), {"a"})], A)
    assert is_total_closed(HTInterpretation.of(["a"], ["a"], A), s)
    assert not is_total_closed(HTInterpretation.of([], ["a"], A), s)
    assert is_closed(HTInterpretation.of([], ["a"], A), s)


@given(theories(("a", "b", "c"), min_size=1))
def test_closure_predicates_match_reference(t):
    atoms = ["a", "b", "c"]
    cs = countermodels(t)
    es = equivalence_interpretations(t)
    ref_cs = ref.countermodels(t.formulas, atoms)
    ref_es = ref.equivalence_interpretations(t.formulas, atoms)
    for m in enumerate_ht(t.signature):
        key = (m.here_atoms, m.there_atoms)
        assert is_there_closed(m, cs) == ref.there_closed(key, ref_cs)
        assert is_closed(m, es) == ref.closed(key, ref_es)
        assert is_total_closed(m, es) == ref.total_closed(key, ref_es)


# equivalence interpretations ----------------------------------------------

def test_equivalence_interpretations_examples():
    es = equivalence_interpretations(parse_theory("a."))
    assert es.tag is Tag.E_S
    assert pairs(es) == {(fs("a"), fs("a")), (fs(), fs("a"))}
    assert pairs(equivalence_interpretations(DISJ)) == {
        (fs("a"), fs("a")), (fs("b"), fs("b")), (fs("a", "b"), fs("a", "b")),
        (fs(), fs("a")), (fs(), fs("b")), (fs(), fs("a", "b")),
    }
    assert len(equivalence_interpretations(Theory.of([BOT], AB))) == 0


# characteristic sets ------------------------------------------------------

@pytest.mark.parametrize("name", NAMES)
def test_characteristic_sets_match_reference(name):
    rng = random.Random(NAMES.index(name))
    atoms = ["a", "b", "c"]
    family, code = name.split("_")
    notion = {"s": "strong", "c": "classical", "u": "uniform", "a": "answer-set"}[code]
    for _ in range(60):
        t = random_theory(rng, atoms)
        got = characteristic_set(t, Signature(atoms), notion, family)
        assert got.tag.value == name
        assert pairs(got) == ref.characteristic(t.formulas, atoms, name)


def test_characteristic_examples():
    # ({},{a}) is closed in E_s because ({a},{a}) is a total model; likewise
    # for b, and the total {a,b} is trivially closed
    expected = {(fs("a"), fs("a")), (fs("b"), fs("b")), (fs("a", "b"), fs("a", "b")),
                (fs(), fs("a")), (fs(), fs("b"))}
    assert pairs(characteristic_set(DISJ, AB, "uniform", "E")) == expected
    assert pairs(characteristic_set(SHIFTED, AB, "uniform", "E")) == expected
    loop = parse_theory("-a -> a.")
    assert len(characteristic_set(loop, notion="answer-set", family="C")) == 0
    assert len(characteristic_set(loop, notion="answer-set", family="E")) == 0


def test_truncated_chain_characteristic_sets():
    sig = Signature(["a1", "a2", "a3"])
    top = (fs(), fs("a1", "a2", "a3"))
    assert top in pairs(characteristic_set(gamma1(3), sig, "uniform", "C"))
    assert top not in pairs(characteristic_set(gamma2(3), sig, "uniform", "C"))


def test_frozen_characteristic_sizes():
    # sizes of every set for two fixed theories, computed once by the
    # literal reference implementation and frozen here
    t = parse_theory("a | b.\nc -> a.")
    atoms = ["a", "b", "c"]
    sizes = {n: len(characteristic_set(t, Signature(atoms), code, fam))
             for n, fam, code in [(n, n[0], n[2]) for n in NAMES]}
    assert sizes == {"C_s": 15, "C_c": 3, "C_u": 9, "C_a": 2,
                     "E_s": 13, "E_c": 5, "E_u": 9, "E_a": 2}


def test_e_a_is_equilibrium_and_c_a_gives_answer_sets():
    rng = random.Random(4)
    atoms = ["a", "b", "c"]
    for _ in range(80):
        t = random_theory(rng, atoms)
        sig = Signature(atoms)
        ea = characteristic_set(t, sig, "answer-set", "E")
        assert ea == equilibrium_models(t, sig).retag(Tag.E_A)
        ca = characteristic_set(t, sig, "answer-set", "C")
        assert {m.there_atoms for m in ca} == set(answer_sets_theory(t, sig))
        assert all(not m.here for m in ca)


# decisions ----------------------------------------------------------------

def test_decision_examples():
    assert decide_equivalence(DISJ, SHIFTED, "uniform").equivalent
    v = decide_equivalence(DISJ, SHIFTED, "strong")
    assert not v.equivalent
    assert str(v.witness) == "({},{a,b})"
    # a here-countermodel of the disjunction, a model of the shifted program
    assert v.witness_side == 1
    chain = decide_equivalence(gamma1(3), gamma2(3), "uniform")
    assert not chain.equivalent
    assert str(chain.witness) == "({},{a1,a2,a3})"


def test_decision_over_extra_atoms():
    v = decide_equivalence(parse_theory("a."), parse_theory("a."), "strong", extra_atoms=["z"])
    assert v.equivalent
    assert list(v.signature) == ["a", "z"]


def test_verdict_invariant():
    with pytest.raises(ValueError):
        Verdict(True, witness=HTInterpretation.of([], [], A))
    with pytest.raises(ValueError):
        Verdict(False)


def test_notion_parsing():
    assert EquivNotion.parse("s") is EquivNotion.STRONG
    assert EquivNotion.parse("answer_set") is EquivNotion.ANSWER_SET
    with pytest.raises(ValueError):
        EquivNotion.parse("hyper")


def test_theorem2_and_family_agreement_on_corpus():
    for pair in theory_pairs(200, 3, seed=1):
        sig = Signature(sorted(set(pair.first.signature) | set(pair.second.signature)))
        cs_equal = countermodels(pair.first, sig) == countermodels(pair.second, sig)
        es_equal = (equivalence_interpretations(pair.first, sig)
                    == equivalence_interpretations(pair.second, sig))
        assert cs_equal == es_equal
        for notion in ("classical", "answer-set", "strong", "uniform"):
            c_eq = (characteristic_set(pair.first, sig, notion, "C")
                    == characteristic_set(pair.second, sig, notion, "C"))
            e_eq = (characteristic_set(pair.first, sig, notion, "E")
                    == characteristic_set(pair.second, sig, notion, "E"))
            assert c_eq == e_eq
            # decide_equivalence raises if the families ever disagree
            assert decide_equivalence(pair.first, pair.second, notion, signature=sig).equivalent == e_eq


def test_notions_are_ordered_by_strength():
    for pair in theory_pairs(150, 3, seed=9):
        v = {n: decide_equivalence(pair.first, pair.second, n).equivalent
             for n in ("classical", "answer-set", "strong", "uniform")}
        if v["strong"]:
            assert v["uniform"] and v["classical"]
        if v["uniform"]:
            assert v["answer-set"]


# tau, Gamma_phi and the dual theory ---------------------------------------

def test_tau_epsilon_examples():
    t = tau_epsilon(A)
    assert [format_formula(f) for f in t.formulas] == ["--a -> a"]
    assert not ht_sat((set(), {"a"}), t.formulas[0])
    assert all(ht_sat((set(), set()), f) for f in tau_epsilon(AB).formulas)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_tau_epsilon_characterises_totality(n):
    sig = Signature([f"x{i}" for i in range(n)])
    tau = tau_epsilon(sig)
    for m in enumerate_ht(sig):
        assert all(ht_sat(m, f) for f in tau.formulas) == m.is_total


def test_gamma_phi_examples():
    t = parse_theory("a.")
    g = gamma_phi(t, Atom("a"))
    assert [format_formula(f) for f in g.formulas] == ["--a", "a -> (--a -> a)"]
    assert membership_via_gamma(HTInterpretation.of([], ["a"], A), t)
    assert not membership_via_gamma(HTInterpretation.of([], [], A), t)
    with pytest.raises(ValueError):
        gamma_phi(t, Atom("b"))


def test_dual_theory_examples():
    assert format_formula(dual_theory(parse_theory("a."))) == "--a & (a -> (--a -> a))"
    assert dual_theory(Theory.of([], A)) == BOT
    d = dual_theory(parse_theory("a.\nb."))
    conjuncts = []
    for side in (d.left, d.right):
        stack = [side]
        while stack:
            node = stack.pop()
            if isinstance(node, And):
                stack += [node.left, node.right]
            else:
                conjuncts.append(node)
    assert len(conjuncts) == 8  # |Gamma| + |L| per disjunct
    assert len(set(conjuncts)) == 6


@given(theories(("a", "b", "c", "d"), min_size=1, max_size=3))
def test_gamma_membership_equals_es(t):
    es = equivalence_interpretations(t)
    for m in enumerate_ht(t.signature):
        assert membership_via_gamma(m, t) == (m in es)


@given(theories(("a", "b", "c"), min_size=1, max_size=3), st.integers(0, 2))
def test_dual_theory_on_larger_signatures(t, fresh):
    wide = Signature(list(t.signature) + [f"u{i}" for i in range(1, fresh + 1)])
    es = equivalence_interpretations(t)
    d = dual_theory(t)
    for m in enumerate_ht(wide):
        r = restrict(m, t.signature)
        via_dual = ht_sat(r, d) and is_totality_preserving(m, t.signature)
        assert via_dual == (r in es and is_totality_preserving(m, t.signature))
        # membership in the wider E_s coincides with the dual-theory test
        assert (m in equivalence_interpretations(t, wide)) == via_dual


def test_empty_theory_has_no_dual_witness():
    # the empty disjunction is false, yet every total interpretation
    # is an equivalence interpretation of the empty theory
    t = Theory.of([], A)
    es = equivalence_interpretations(t)
    assert HTInterpretation.of(["a"], ["a"], A) in es
    assert not ht_sat((fs("a"), fs("a")), dual_theory(t))


# restriction --------------------------------------------------------------

def test_restriction_examples():
    ax = Signature(["a", "x"])
    m = HTInterpretation.of(["x"], ["a", "x"], ax)
    assert str(restrict(m, A)) == "({},{a})"
    assert is_totality_preserving(m, A)
    m = HTInterpretation.of(["a"], ["a", "x"], ax)
    assert str(restrict(m, A)) == "({a},{a})"
    assert not is_totality_preserving(m, A)
    m = HTInterpretation.of(["a", "x"], ["a", "x"], ax)
    assert str(restrict(m, A)) == "({a},{a})"
    assert is_totality_preserving(m, A)
    with pytest.raises(ValueError):
        restrict(m, Signature(["q"]))


@given(theories(("a", "b"), min_size=1))
def test_countermodels_survive_preserving_restriction(t):
    wide = Signature(["a", "b", "u1", "u2"])
    cs_wide = countermodels(t, wide)
    cs = countermodels(t)
    for m in cs_wide:
        if is_totality_preserving(m, t.signature):
            assert restrict(m, t.signature) in cs


def test_random_formula_theories_cover_all_connectives():
    rng = random.Random(0)
    kinds = set()
    for _ in range(50):
        stack = [random_formula(rng, ["a", "b"])]
        while stack:
            node = stack.pop()
            kinds.add(type(node).__name__)
            stack += [getattr(node, k) for k in ("left", "right", "antecedent", "consequent")
                      if hasattr(node, k)]
    assert {"Atom", "And", "Or", "Impl", "Bottom"} <= kinds
