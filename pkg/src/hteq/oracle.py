"""Brute-force context oracle.

Answer sets of ``theory + context`` are computed here without the table
kernels: model sets come from the tree-walking ``ht_sat`` and equilibrium
models from grouping those models by their there-part. The oracle then
searches finite context pools for a context on which two theories have
different answer sets.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import corpus, kernels
from .equiv import EquivNotion, characteristic_tables, es_table
from .errors import BoundError
from .ht import as_theory, classical_sat, enumerate_ht, ht_sat, max_atoms, model_table
from .hyper import decide_hyper, hyper_table
from .syntax import (
    Alphabets, Atom, Formula, Impl, Signature, Theory, format_formula, natural_key,
)

DEFAULT_BUDGET = 4
DEFAULT_K_EXTRA = 1
DEFAULT_MAX_CONTEXTS = 100_000


def max_contexts(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("HTEQ_MAX_CONTEXTS")
    return int(env) if env else DEFAULT_MAX_CONTEXTS


@dataclass(frozen=True)
class ContextPool:
    kind: str
    contexts: tuple
    notes: tuple
    signature: Signature

    def __len__(self):
        return len(self.contexts)

    def __iter__(self):
        return iter(self.contexts)


def fresh_atoms(k: int, taken=()) -> list[str]:
    taken = set(taken)
    out, i = [], 1
    while len(out) < k:
        name = f"u{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def uniform_contexts(signature, k_extra: int = DEFAULT_K_EXTRA, limit=None) -> ContextPool:
    """Every set of atom facts over the signature plus ``k_extra`` fresh atoms."""
    sig = signature if isinstance(signature, Signature) else Signature(signature)
    names = list(sig) + fresh_atoms(k_extra, sig)
    lim = max_atoms(limit)
    if len(names) > lim:
        raise BoundError("uniform context signature", len(names), lim)
    full = Signature(names)
    contexts, notes = [], []
    for size in range(len(names) + 1):
        for combo in itertools.combinations(names, size):
            contexts.append(Theory.of([Atom(a) for a in combo], full))
            notes.append("facts {" + ",".join(combo) + "}")
    return ContextPool("uniform", tuple(contexts), tuple(notes), full)


def hyper_formulas(ab: Alphabets) -> list[Formula]:
    """Facts over A+ followed by a -> b for a in A-, b in A+, a != b."""
    plus = sorted(ab.a_plus, key=natural_key)
    minus = sorted(ab.a_minus, key=natural_key)
    out = [Atom(b) for b in plus]
    out += [Impl(Atom(a), Atom(b)) for a in minus for b in plus if a != b]
    return out


def hyper_contexts(ab: Alphabets, budget: int = DEFAULT_BUDGET, signature=None,
                   extra_formulas=(), limit=None) -> ContextPool:
    """All theories of at most ``budget`` formulas from the proof-shaped pool.

    ``extra_formulas`` (factual formulas over A+) are appended to the pool;
    the pool kind is then ``extended_hyper``.
    """
    sig = signature or Signature.sorted(ab.atoms)
    pool = hyper_formulas(ab) + [f for f in extra_formulas if f not in hyper_formulas(ab)]
    total = sum(math.comb(len(pool), k) for k in range(min(budget, len(pool)) + 1))
    lim = max_contexts(limit)
    if total > lim:
        raise BoundError("hyper context pool", total, lim)
    contexts, notes = [], []
    for size in range(min(budget, len(pool)) + 1):
        for combo in itertools.combinations(pool, size):
            contexts.append(Theory.of(combo, sig))
            notes.append("{" + ", ".join(format_formula(f) for f in combo) + "}")
    kind = "extended_hyper" if extra_formulas else "hyper"
    return ContextPool(kind, tuple(contexts), tuple(notes), sig)


# --------------------------------------------------------------------------
# Independent answer-set computation

class _Space:
    """Index bookkeeping for all interpretations over one signature."""

    def __init__(self, sig: Signature):
        self.sig = sig
        self.members = list(enumerate_ht(sig, limit=len(sig)))
        self.there = np.array([m.there for m in self.members], dtype=np.int64)
        self.total = np.array([m.is_total for m in self.members], dtype=bool)
        self.cache: dict = {}

    def models(self, formulas) -> np.ndarray:
        key = tuple(formulas)
        hit = self.cache.get(key)
        if hit is None:
            hit = np.ones(len(self.members), dtype=bool)
            for f in formulas:
                fk = (f,)
                col = self.cache.get(fk)
                if col is None:
                    col = np.array([ht_sat(m, f) for m in self.members], dtype=bool)
                    self.cache[fk] = col
                hit &= col
            self.cache[key] = hit
        return hit

    def answer_sets(self, models: np.ndarray) -> list[int]:
        """There-masks Y with (Y,Y) a model and no model (X,Y), X strictly inside Y."""
        size = 1 << len(self.sig)
        blocked = np.bincount(self.there[models & ~self.total], minlength=size) > 0
        candidates = self.there[models & self.total]
        return sorted(int(y) for y in candidates if not blocked[y])


def answer_sets_with(theory, context, signature=None) -> list[frozenset]:
    theory = as_theory(theory)
    sig = signature or Signature.union(theory.signature, context.signature)
    space = _Space(sig)
    models = space.models(theory.formulas) & space.models(context.formulas)
    return [sig.names(y) for y in space.answer_sets(models)]


def answer_set_equivalent_under(t1, t2, ctx: Theory, signature=None) -> bool:
    t1, t2 = as_theory(t1), as_theory(t2)
    sig = signature or Signature.union(t1.signature, t2.signature, ctx.signature)
    return answer_sets_with(t1, ctx, sig) == answer_sets_with(t2, ctx, sig)


@dataclass(frozen=True)
class Counterexample:
    context: Theory
    answer_set: frozenset
    side: int
    note: str = ""

    def to_json(self) -> dict:
        return {
            "context": [format_formula(f) for f in self.context.formulas],
            "answer_set": sorted(self.answer_set, key=natural_key),
            "side": self.side,
        }


def search_counterexample(t1, t2, pool: ContextPool):
    """First pool context (pool order) on which the answer sets differ.

    Returns a :class:`Counterexample` with the least differing answer set and
    the theory that has it, or None when the pool is exhausted.
    """
    t1, t2 = as_theory(t1), as_theory(t2)
    sig = Signature.union(t1.signature, t2.signature, pool.signature)
    space = _Space(sig)
    m1, m2 = space.models(t1.formulas), space.models(t2.formulas)
    for ctx, note in zip(pool.contexts, pool.notes):
        mc = space.models(ctx.formulas)
        as1 = space.answer_sets(m1 & mc)
        as2 = space.answer_sets(m2 & mc)
        if as1 != as2:
            diff = sorted(set(as1) ^ set(as2))
            y = diff[0]
            side = 1 if y in as1 else 2
            return Counterexample(ctx, sig.names(y), side, note)
    return None


def classically_equivalent(t1, t2, signature=None) -> bool:
    t1, t2 = as_theory(t1), as_theory(t2)
    sig = signature or Signature.union(t1.signature, t2.signature)
    for y in range(1 << len(sig)):
        names = sig.names(y)
        s1 = all(classical_sat(names, f) for f in t1.formulas)
        s2 = all(classical_sat(names, f) for f in t2.formulas)
        if s1 != s2:
            return False
    return True


def pool_for(notion, signature, k_extra=DEFAULT_K_EXTRA, budget=DEFAULT_BUDGET,
             ab: Optional[Alphabets] = None) -> ContextPool:
    """Context pool that the constructive arguments use for each notion."""
    if notion == "hyper":
        return hyper_contexts(ab, budget, signature)
    notion = EquivNotion.parse(notion)
    if notion is EquivNotion.UNIFORM:
        return uniform_contexts(signature, k_extra)
    if notion is EquivNotion.STRONG:
        full = Alphabets(frozenset(signature), frozenset(signature))
        return hyper_contexts(full, budget, signature)
    return ContextPool("empty", (Theory.of([], signature),), ("{}",), signature)


# --------------------------------------------------------------------------
# Validation

NOTIONS = ("classical", "answer-set", "strong", "uniform", "hyper")


@dataclass
class PairOutcome:
    index: int
    notion: str
    decision: bool
    c_family: Optional[bool]
    oracle: bool
    counterexample: Optional[Counterexample] = None
    alphabets: Optional[Alphabets] = None
    problems: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "pair": self.index,
            "notion": self.notion,
            "decision": "equivalent" if self.decision else "not equivalent",
            "oracle": "equivalent" if self.oracle else "not equivalent",
            "problems": list(self.problems),
        }
        if self.alphabets is not None:
            out["aplus"] = sorted(self.alphabets.a_plus, key=natural_key)
            out["aminus"] = sorted(self.alphabets.a_minus, key=natural_key)
        if self.counterexample is not None:
            out["context"] = self.counterexample.to_json()
        return out


def _hstruct_problems(theory, sig) -> list[str]:
    """E_a/E_s/E_u against hyperequivalence sets for the three collapses."""
    models = model_table(theory, sig)
    tables = characteristic_tables(models)
    es = es_table(models)
    full = frozenset(sig)
    out = []
    if not np.array_equal(hyper_table(es, sig, Alphabets(full, full)), tables["E_s"]):
        out.append("hstruct: (L,L) differs from E_s")
    if not np.array_equal(hyper_table(es, sig, Alphabets(full, frozenset())), tables["E_u"]):
        out.append("hstruct: (L,{}) differs from E_u")
    # the empty collapse keeps (0,Y); E_a holds (Y,Y): compare there-parts
    empty = hyper_table(es, sig, Alphabets())
    ea_there = _there_parts(tables["E_a"], sig)
    if _there_parts(empty, sig) != ea_there or not _all_empty_here(empty, sig):
        out.append("hstruct: ({},{}) differs from E_a")
    return out


def _there_parts(table, sig) -> set:
    _, there = kernels.decode(np.flatnonzero(table.reshape(-1)), len(sig))
    return set(int(t) for t in there)


def _all_empty_here(table, sig) -> bool:
    here, _ = kernels.decode(np.flatnonzero(table.reshape(-1)), len(sig))
    return not here.any()


def check_pair(index, t1, t2, notion, *, ab=None, k_extra=DEFAULT_K_EXTRA,
               budget=DEFAULT_BUDGET, mutate=False, factual_extras=()) -> PairOutcome:
    """Decision, C-family cross-check and oracle verdict for one pair."""
    t1, t2 = as_theory(t1), as_theory(t2)
    sig = Signature.union(t1.signature, t2.signature, ab.atoms if ab else ())
    t1, t2 = t1.with_signature(sig), t2.with_signature(sig)
    if notion == "hyper":
        decision = bool(decide_hyper(t1, t2, ab, signature=sig))
        c_family = None
    else:
        code = EquivNotion.parse(notion).code
        tab1 = characteristic_tables(model_table(t1, sig))
        tab2 = characteristic_tables(model_table(t2, sig))
        decision = bool(np.array_equal(tab1[f"E_{code}"], tab2[f"E_{code}"]))
        c_family = bool(np.array_equal(tab1[f"C_{code}"], tab2[f"C_{code}"]))
    if mutate:
        decision = not decision

    problems = []
    if c_family is not None and c_family != decision:
        problems.append("C-family and E-family decisions differ")

    counter = None
    if notion == "classical":
        oracle = classically_equivalent(t1, t2, sig)
    else:
        pool = pool_for(notion, sig, k_extra, budget, ab)
        counter = search_counterexample(t1, t2, pool)
        oracle = counter is None
    if oracle != decision:
        if decision:
            problems.append("equivalent verdict refuted by a pool context")
        else:
            problems.append("not-equivalent verdict unconfirmed within the pool")

    if notion == "hyper" and factual_extras:
        extended = hyper_contexts(ab, min(budget, 2), sig, factual_extras)
        hit = search_counterexample(t1, t2, extended)
        if (hit is None) != oracle:
            problems.append("factual extension of the pool changed the oracle verdict")

    return PairOutcome(index, notion, decision, c_family, oracle, counter,
                       ab if notion == "hyper" else None, problems)


@dataclass
class ValidationReport:
    pairs: int
    atoms: int
    seed: int
    budget: int
    k_extra: int
    notions: tuple
    outcomes: list
    hstruct_problems: list

    @property
    def discrepancies(self) -> list[PairOutcome]:
        return [o for o in self.outcomes if o.problems]

    @property
    def ok(self) -> bool:
        return not self.discrepancies and not self.hstruct_problems

    def summary(self) -> dict:
        per = {}
        for notion in self.notions:
            rows = [o for o in self.outcomes if o.notion == notion]
            per[notion] = {
                "checked": len(rows),
                "equivalent": sum(o.decision for o in rows),
                "not_equivalent": sum(not o.decision for o in rows),
                "confirmed_by_context": sum(o.counterexample is not None for o in rows),
                "discrepancies": sum(bool(o.problems) for o in rows),
            }
        return per

    def to_json(self) -> dict:
        return {
            "config": {
                "pairs": self.pairs, "atoms": self.atoms, "seed": self.seed,
                "budget": self.budget, "k_extra": self.k_extra,
                "notions": list(self.notions),
            },
            "summary": self.summary(),
            "hstruct_problems": list(self.hstruct_problems),
            "discrepancies": [o.to_json() for o in self.discrepancies],
            "ok": self.ok,
        }


def _validate_one(args):
    index, pair, notions, seed, budget, k_extra, mutate = args
    rng = random.Random(f"{seed}:{index}")
    sig = pair.first.signature
    ab = corpus.random_alphabets(rng, list(sig))
    extras = [corpus.random_factual(rng, sorted(ab.a_plus, key=natural_key))
              for _ in range(2)] if ab.a_plus else []
    outcomes = []
    for notion in notions:
        outcomes.append(check_pair(index, pair.first, pair.second, notion, ab=ab,
                                   k_extra=k_extra, budget=budget, mutate=mutate,
                                   factual_extras=extras))
    hstruct = []
    for side, t in ((1, pair.first), (2, pair.second)):
        hstruct += [f"pair {index} theory {side}: {p}" for p in _hstruct_problems(t, sig)]
    return outcomes, hstruct


def validate(pairs: int = 200, atoms: int = 3, seed: int = 0, budget: int = DEFAULT_BUDGET,
             k_extra: int = DEFAULT_K_EXTRA, notions=NOTIONS, mutate: bool = False,
             jobs: int = 1) -> ValidationReport:
    """Run the decision procedures against the oracle on a seeded corpus."""
    corpus_pairs = corpus.theory_pairs(pairs, atoms, seed)
    notions = tuple(notions)
    work = [(i, p, notions, seed, budget, k_extra, mutate)
            for i, p in enumerate(corpus_pairs)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_validate_one, work, chunksize=8))
    else:
        results = [_validate_one(w) for w in work]
    outcomes, hstruct = [], []
    for o, h in results:
        outcomes += o
        hstruct += h
    return ValidationReport(pairs, atoms, seed, budget, k_extra, notions, outcomes, hstruct)
