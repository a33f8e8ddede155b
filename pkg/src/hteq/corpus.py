"""Seeded generators for formulas, theories, theory pairs and programs."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .syntax import (
    BOT, TOP, Alphabets, And, Atom, Bottom, Formula, Impl, Or, Program, Rule, Signature,
    Theory, neg,
)


def atom_names(n: int, prefix: str = "") -> list[str]:
    if prefix:
        return [f"{prefix}{i}" for i in range(1, n + 1)]
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"p{i}" for i in range(1, n + 1)]


def random_formula(rng: random.Random, atoms, depth: int = 3) -> Formula:
    if depth <= 0 or rng.random() < 0.25:
        return BOT if rng.random() < 0.05 else Atom(rng.choice(atoms))
    kind = rng.choices(("and", "or", "impl", "neg"), weights=(3, 3, 4, 2))[0]
    if kind == "neg":
        return neg(random_formula(rng, atoms, depth - 1))
    left = random_formula(rng, atoms, depth - 1)
    right = random_formula(rng, atoms, depth - 1)
    return {"and": And, "or": Or, "impl": Impl}[kind](left, right)


def random_factual(rng: random.Random, atoms, depth: int = 2) -> Formula:
    """A formula built from atoms, bottom, conjunction, disjunction and negation."""
    if depth <= 0 or rng.random() < 0.3:
        return Atom(rng.choice(atoms))
    kind = rng.choice(("and", "or", "neg"))
    if kind == "neg":
        return neg(random_factual(rng, atoms, depth - 1))
    left = random_factual(rng, atoms, depth - 1)
    right = random_factual(rng, atoms, depth - 1)
    return And(left, right) if kind == "and" else Or(left, right)


def random_rule_formula(rng: random.Random, atoms) -> Formula:
    """A rule-shaped implication: literal conjunction to literal disjunction."""
    def literal():
        a = Atom(rng.choice(atoms))
        return neg(a) if rng.random() < 0.35 else a

    body = [literal() for _ in range(rng.randint(0, 2))]
    head = [literal() for _ in range(rng.randint(0, 2))]
    b = body[0] if body else TOP
    for lit in body[1:]:
        b = And(b, lit)
    h = head[0] if head else BOT
    for lit in head[1:]:
        h = Or(h, lit)
    return Impl(b, h) if body else h


def random_theory(rng: random.Random, atoms, size=None, depth: int = 3) -> Theory:
    size = size if size is not None else rng.randint(1, 3)
    formulas = []
    for _ in range(size):
        if rng.random() < 0.4:
            formulas.append(random_rule_formula(rng, atoms))
        else:
            formulas.append(random_formula(rng, atoms, depth))
    return Theory.of(formulas, Signature(atoms))


# --------------------------------------------------------------------------
# Equivalence-preserving rewrites and perturbations

def _rewrite(rng: random.Random, f: Formula) -> Formula:
    """Strongly equivalent variant of ``f`` (HT-valid rewrite steps only)."""
    if isinstance(f, (Atom, Bottom)):
        return f
    if isinstance(f, And):
        left, right = _rewrite(rng, f.left), _rewrite(rng, f.right)
        return And(right, left) if rng.random() < 0.5 else And(left, right)
    if isinstance(f, Or):
        left, right = _rewrite(rng, f.left), _rewrite(rng, f.right)
        return Or(right, left) if rng.random() < 0.5 else Or(left, right)
    ante, cons = _rewrite(rng, f.antecedent), _rewrite(rng, f.consequent)
    if isinstance(cons, Bottom) and rng.random() < 0.3:
        # -p is equivalent to ---p
        return neg(neg(neg(ante)))
    if isinstance(ante, And) and rng.random() < 0.3:
        # (p & q) -> r is equivalent to p -> (q -> r)
        return Impl(ante.left, Impl(ante.right, cons))
    return Impl(ante, cons)


def _perturb(rng: random.Random, f: Formula, atoms) -> Formula:
    if isinstance(f, (Atom, Bottom)) or rng.random() < 0.3:
        choice = rng.random()
        if choice < 0.4:
            return Atom(rng.choice(atoms))
        if choice < 0.7:
            return neg(f)
        return neg(neg(f))
    if isinstance(f, Impl):
        if rng.random() < 0.5:
            return Impl(_perturb(rng, f.antecedent, atoms), f.consequent)
        return Impl(f.antecedent, _perturb(rng, f.consequent, atoms))
    if rng.random() < 0.5:
        return type(f)(_perturb(rng, f.left, atoms), f.right)
    return type(f)(f.left, _perturb(rng, f.right, atoms))


def variant(rng: random.Random, theory: Theory) -> Theory:
    formulas = list(theory.formulas)
    rng.shuffle(formulas)
    out = []
    for f in formulas:
        g = _rewrite(rng, f)
        if isinstance(g, And) and rng.random() < 0.5:
            out.extend((g.left, g.right))
        else:
            out.append(g)
    if rng.random() < 0.2:
        out.append(TOP)
    return Theory.of(out, theory.signature)


def perturbation(rng: random.Random, theory: Theory) -> Theory:
    atoms = list(theory.signature)
    formulas = list(theory.formulas)
    i = rng.randrange(len(formulas))
    formulas[i] = _perturb(rng, formulas[i], atoms)
    return Theory.of(formulas, theory.signature)


@dataclass(frozen=True)
class TheoryPair:
    first: Theory
    second: Theory
    origin: str


def theory_pairs(count: int, n_atoms: int = 3, seed: int = 0) -> list[TheoryPair]:
    """Deterministic mix of rewritten, perturbed and unrelated pairs."""
    rng = random.Random(seed)
    atoms = atom_names(n_atoms)
    sig = Signature(atoms)
    pairs = []
    for _ in range(count):
        t1 = random_theory(rng, atoms)
        roll = rng.random()
        if roll < 0.35:
            pairs.append(TheoryPair(t1, variant(rng, t1), "rewrite"))
        elif roll < 0.75:
            pairs.append(TheoryPair(t1, perturbation(rng, t1), "perturb"))
        else:
            pairs.append(TheoryPair(t1, random_theory(rng, atoms), "random"))
    return [TheoryPair(p.first.with_signature(sig), p.second.with_signature(sig), p.origin)
            for p in pairs]


def random_alphabets(rng: random.Random, atoms) -> Alphabets:
    plus = frozenset(a for a in atoms if rng.random() < 0.5)
    minus = frozenset(a for a in atoms if rng.random() < 0.5)
    return Alphabets(plus, minus)


def _fill_leaves(rng, f, plus, minus, pos, negv, below_cons):
    if isinstance(f, Bottom):
        return f
    if isinstance(f, Atom):
        allowed = set(plus) if (pos or below_cons or not negv) else None
        if negv:
            allowed = set(minus) if allowed is None else allowed & set(minus)
        allowed = sorted(allowed) if allowed is not None else []
        return Atom(rng.choice(allowed)) if allowed else BOT
    if isinstance(f, (And, Or)):
        return type(f)(_fill_leaves(rng, f.left, plus, minus, pos, negv, below_cons),
                       _fill_leaves(rng, f.right, plus, minus, pos, negv, below_cons))
    return Impl(_fill_leaves(rng, f.antecedent, plus, minus, negv, True, below_cons),
                _fill_leaves(rng, f.consequent, plus, minus, True, negv, True))


def random_apan_formula(rng: random.Random, ab: Alphabets, atoms, depth: int = 3) -> Formula:
    """Random formula whose positive occurrences lie in A+ and negative ones in A-.

    Occurrences that no atom may fill become bottom.
    """
    shape = random_formula(rng, list(atoms), depth)
    return _fill_leaves(rng, shape, ab.a_plus, ab.a_minus, True, False, False)


def random_apan_theory(rng: random.Random, ab: Alphabets, atoms, size=None,
                       extended: bool = False, depth: int = 3) -> Theory:
    size = size if size is not None else rng.randint(1, 3)
    plus = sorted(ab.a_plus)
    formulas = []
    for _ in range(size):
        if extended and plus and rng.random() < 0.3:
            formulas.append(random_factual(rng, plus))
        else:
            formulas.append(random_apan_formula(rng, ab, atoms, depth))
    return Theory.of(formulas, Signature(atoms))


# --------------------------------------------------------------------------
# Programs

def all_rules(atoms) -> list[Rule]:
    """Every nonempty rule over ``atoms``; each atom picks any subset of the
    four positions (positive/negative head, positive/negative body)."""
    atoms = list(atoms)
    rules = []
    for choice in itertools.product(range(16), repeat=len(atoms)):
        parts = [set(), set(), set(), set()]
        for a, bits in zip(atoms, choice):
            for k in range(4):
                if bits >> k & 1:
                    parts[k].add(a)
        if any(parts):
            rules.append(Rule(*parts))
    return rules


def single_position_rules(atoms) -> list[Rule]:
    """Rules where every atom occupies at most one of the four positions."""
    atoms = list(atoms)
    rules = []
    for choice in itertools.product(range(5), repeat=len(atoms)):
        parts = [set(), set(), set(), set()]
        for a, pos in zip(atoms, choice):
            if pos:
                parts[pos - 1].add(a)
        if any(parts):
            rules.append(Rule(*parts))
    return rules


def small_programs(atoms=("a", "b")):
    """All programs of at most two rules from every rule over ``atoms``, then
    all three-rule programs over the single-position rules."""
    sig = Signature(atoms)
    pool = all_rules(atoms)
    for size in range(3):
        for rules in itertools.combinations(pool, size):
            yield Program(tuple(rules), sig)
    for rules in itertools.combinations(single_position_rules(atoms), 3):
        yield Program(tuple(rules), sig)


def random_program(rng: random.Random, atoms, size=None) -> Program:
    size = size if size is not None else rng.randint(1, 3)
    rules = []
    while len(rules) < size:
        parts = [frozenset(a for a in atoms if rng.random() < p)
                 for p in (0.35, 0.1, 0.3, 0.25)]
        if any(parts):
            rules.append(Rule(*parts))
    return Program.of(rules, Signature(atoms))
