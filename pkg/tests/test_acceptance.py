"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line in ``RESULTS``; the lines are printed
as they happen and again in the pytest terminal summary. Running this file
directly prints them without pytest.
"""

import itertools
import random
import time

import numpy as np

from hteq.corpus import (
    random_alphabets, random_apan_theory, random_factual,
    random_program, random_theory, small_programs, theory_pairs,
)
from hteq.equiv import (
    characteristic_set, characteristic_tables, decide_equivalence, dual_theory,
    equivalence_interpretations, membership_via_gamma, restrict, tau_epsilon,
)
from hteq.ht import (
    answer_sets_program, answer_sets_theory, enumerate_ht, ht_sat, ht_sat_theory,
    model_table,
)
from hteq.hyper import decide_hyper, hyper_interpretations
from hteq.nonground import (
    decide_uniform_nonground, ground, ground_signature, herbrand_universe,
    parse_ng_program, ue_table,
)
from hteq.oracle import hyper_contexts, pool_for, search_counterexample, validate
from hteq.syntax import (
    Alphabets, Signature, Theory, format_formula, parse_program, parse_theory,
    program_to_theory,
)
from tests.test_equiv import gamma1, gamma2

RESULTS = []


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line)
    return ok


def corpus_theories():
    out = []
    for p in theory_pairs(100, 3, seed=0):
        out += [p.first, p.second]
    rng = random.Random(11)
    for n in (1, 2, 3):
        atoms = [f"a{i}" for i in range(1, n + 1)]
        out += [random_theory(rng, atoms) for _ in range(30)]
    return out


def models_of(theory, sig):
    return [m for m in enumerate_ht(sig) if ht_sat_theory(m, theory)]


# --------------------------------------------------------------------------

def test_1_reduct_answer_sets_equal_equilibrium_models():
    start = time.perf_counter()
    checked = mismatches = 0
    for prog in small_programs(("a", "b")):
        via_reduct = sorted(answer_sets_program(prog), key=prog.signature.mask)
        via_equilibrium = sorted(answer_sets_theory(program_to_theory(prog)),
                                 key=prog.signature.mask)
        checked += 1
        mismatches += via_reduct != via_equilibrium
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 10
    assert record(1, ok, f"{checked} programs, {mismatches} mismatches, {elapsed:.1f}s < 10s")


def test_2_families_and_oracle_agree():
    start = time.perf_counter()
    notions = ("classical", "answer-set", "strong", "uniform")
    rep = validate(pairs=200, atoms=3, seed=0, k_extra=1, notions=notions)
    elapsed = time.perf_counter() - start
    bad = len(rep.discrepancies) + len(rep.hstruct_problems)
    ok = bad == 0 and elapsed < 60
    counts = ", ".join(f"{n} {row['not_equivalent']} ne" for n, row in rep.summary().items())
    assert record(2, ok, f"200 pairs, {bad} discrepancies, {counts}, {elapsed:.1f}s < 60s")


def test_3_gamma_phi_and_dual_match_es():
    rng = random.Random(3)
    checked = wrong = 0
    for i in range(100):
        atoms = [f"a{j}" for j in range(1, 1 + (i % 3) + 1)]
        t = random_theory(rng, atoms)
        sig = t.signature
        es = equivalence_interpretations(t)
        dual = dual_theory(t)
        for m in enumerate_ht(sig):
            checked += 1
            wrong += membership_via_gamma(m, t) != (m in es)
            wrong += ht_sat(m, dual) != (m in es)
        wide = Signature(list(sig) + ["u1", "u2"])
        es_wide = equivalence_interpretations(t, wide)
        for m in enumerate_ht(wide):
            checked += 1
            r = restrict(m, sig)
            preserving = m.is_total or not r.is_total
            wrong += (m in es_wide) != (ht_sat(r, dual) and preserving)
    assert record(3, wrong == 0, f"100 theories, {checked} interpretations, {wrong} mismatches")


def test_4_tau_epsilon_characterises_totality():
    checked = wrong = 0
    for n in range(5):
        sig = Signature([f"x{i}" for i in range(n)])
        tau = tau_epsilon(sig)
        for m in enumerate_ht(sig):
            checked += 1
            wrong += all(ht_sat(m, f) for f in tau.formulas) != m.is_total
    assert record(4, wrong == 0, f"{checked} interpretations over |L|<=4, {wrong} exceptions")


def test_5_hyper_collapses_to_characteristic_sets():
    def pairs(s):
        return {(m.here_atoms, m.there_atoms) for m in s}

    theories = corpus_theories()
    wrong = 0
    for t in theories:
        sig = t.signature
        full = frozenset(sig)
        wrong += pairs(hyper_interpretations(t, sig, Alphabets(full, full))) != pairs(
            characteristic_set(t, sig, "strong"))
        wrong += pairs(hyper_interpretations(t, sig, Alphabets(full, frozenset()))) != pairs(
            characteristic_set(t, sig, "uniform"))
        # E_a keeps (Y, Y) where the empty alphabets keep (0, Y)
        empty = pairs(hyper_interpretations(t, sig, Alphabets()))
        ea = pairs(characteristic_set(t, sig, "answer-set"))
        wrong += {(frozenset(), y) for _, y in ea} != empty
    assert record(5, wrong == 0, f"{len(theories)} theories, {wrong} set differences")


def test_6_hyper_refutations_confirmed_within_budget():
    rng = random.Random(6)
    total = unconfirmed = refuted = 0
    for p in theory_pairs(200, 3, seed=6):
        sig = p.first.signature
        ab = random_alphabets(rng, list(sig))
        v = decide_hyper(p.first, p.second, ab, signature=sig).equivalent
        hit = search_counterexample(p.first, p.second, hyper_contexts(ab, 4, sig))
        if v:
            refuted += hit is not None
        else:
            total += 1
            unconfirmed += hit is None
    ok = unconfirmed == 0 and refuted == 0
    assert record(6, ok, f"{total} not-equivalent verdicts, {unconfirmed} unconfirmed, "
                         f"{refuted} equivalent verdicts refuted")


def test_7_worked_regressions():
    failures = []
    disj = parse_theory("a | b.")
    shifted = program_to_theory(parse_program("a :- not b.\nb :- not a."))
    sig = Signature(["a", "b"])
    if not decide_equivalence(disj, shifted, "uniform").equivalent:
        failures.append("a")
    strong = decide_equivalence(disj, shifted, "strong")
    hit = search_counterexample(disj, shifted, pool_for("strong", sig))
    if strong.equivalent or str(strong.witness) != "({},{a,b})":
        failures.append("a-witness")
    if hit is None or [format_formula(f) for f in hit.context.formulas] != ["a -> b", "b -> a"]:
        failures.append("a-context")
    chain = decide_equivalence(gamma1(3), gamma2(3), "uniform")
    if chain.equivalent or str(chain.witness) != "({},{a1,a2,a3})":
        failures.append("b")
    dual = format_formula(dual_theory(parse_theory("a."))) + "."
    if "".join(dual.split()) != "".join("--a & (a -> (--a -> a)).".split()):
        failures.append("c")
    assert record(7, not failures, "(a) (b) (c) reproduced" if not failures
                  else f"failed: {', '.join(failures)}")


NG_CORPUS = [
    "q(a).\np(X) :- q(X).",
    "q(a).\np(a).",
    "p(X) :- q(X), not r(X).",
    "q(a).\nr(X) :- q(X).",
    "q(a).\nq(b).\np(X) :- q(X).",
    "s :- not t.\nt :- not s.",
    "p(X) | r(X) :- q(X).",
]


def test_8_nonground_uniform_equivalence():
    p1 = parse_ng_program("q(a).\np(X) :- q(X).")
    p2 = parse_ng_program("q(a).\np(a).")
    problems = []
    if not decide_uniform_nonground(p1, p2, k=0).equivalent:
        problems.append("k=0 finds a difference")
    if decide_uniform_nonground(p1, p2, k=1).equivalent:
        problems.append("k=1 finds no difference")

    def agree(m1, m2):
        by_ue = np.array_equal(ue_table(m1), ue_table(m2))
        t1, t2 = characteristic_tables(m1), characteristic_tables(m2)
        return by_ue == np.array_equal(t1["E_u"], t2["E_u"])

    checked = disagree = 0
    rng = random.Random(8)
    for n in range(1, 5):
        atoms = [f"p{i}" for i in range(1, n + 1)]
        sig = Signature(atoms)
        for _ in range(250):
            a, b = random_program(rng, atoms), random_program(rng, atoms)
            checked += 1
            disagree += not agree(model_table(a, sig), model_table(b, sig))
    # ground instances of non-ground programs with at most 4 ground atoms
    progs = [parse_ng_program(t) for t in NG_CORPUS]
    for x, y in itertools.combinations(progs, 2):
        joint = x.union(y)
        u = herbrand_universe(joint)
        for k in range(2):
            uk = u.extend(k)
            sig = ground_signature(joint, uk)
            if len(sig) > 4:
                continue
            checked += 1
            disagree += not agree(model_table(ground(x, uk, sig), sig),
                                  model_table(ground(y, uk, sig), sig))
    if disagree:
        problems.append(f"{disagree} UE/E_u disagreements")
    assert record(8, not problems, f"example at k=0/1 as expected, {checked} ground pairs, "
                  f"{disagree} disagreements" if not problems else "; ".join(problems))


def test_9_monotonicity_properties():
    rng = random.Random(9)
    atoms = ["a", "b", "c", "d"]
    sig = Signature(atoms)
    violations = {"factual": 0, "hyp-eval": 0, "hyp-tot": 0}

    done = 0
    while done < 1000:
        f = random_factual(rng, atoms, depth=3)
        t = Theory.of([f], sig)
        ms = models_of(t, sig)
        if not ms:
            continue
        m = rng.choice(ms)
        x, y = m.here_atoms, m.there_atoms
        for extra in _subsets(y - x):
            violations["factual"] += not ht_sat((x | extra, y), f)
        done += 1

    done = 0
    while done < 1000:
        ab = random_alphabets(rng, atoms)
        t = random_apan_theory(rng, ab, atoms, extended=True)
        ms = models_of(t, sig)
        if not ms:
            continue
        m = rng.choice(ms)
        x, y = m.here_atoms, m.there_atoms
        for xp in _subsets(y):
            if x & ab.a_plus <= xp and xp & ab.a_minus <= x:
                violations["hyp-eval"] += not ht_sat_theory((xp, y), t)
        done += 1

    done = 0
    while done < 1000:
        ab = random_alphabets(rng, atoms)
        t = random_apan_theory(rng, ab, atoms, extended=True)
        totals = [m for m in models_of(t, sig) if m.is_total]
        if not totals:
            continue
        y = rng.choice(totals).there_atoms
        base = y & ab.a_plus
        for extra in _subsets(y - base):
            violations["hyp-tot"] += not ht_sat_theory((base | extra, y), t)
        done += 1

    bad = sum(violations.values())
    detail = ", ".join(f"{k} {v}" for k, v in violations.items())
    assert record(9, bad == 0, f"1000 instances each, violations: {detail}")


def _subsets(s):
    s = sorted(s)
    for r in range(len(s) + 1):
        for c in itertools.combinations(s, r):
            yield frozenset(c)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
