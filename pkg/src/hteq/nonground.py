"""Function-free non-ground programs over finite universes.

Rules with variables are grounded over a finite constant pool: the Herbrand
constants of the program (or ``c`` when it has none) plus fresh constants
``u1``, ``u2``, ... that stand for the open-universe extensions. Constants
are interpreted by identity, so a ground atom ``p(a,b)`` is an ordinary
propositional atom with that name.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import BoundError, ParseError
from .ht import HTInterpretation, InterpretationSet, answer_sets_program, model_table
from .syntax import Parser, Program, Rule, Signature, natural_key

DEFAULT_MAX_GROUND_ATOMS = 16
DEFAULT_MAX_GROUND_RULES = 200_000
DEFAULT_EXTRA_CONSTS = 2
DEFAULT_CONSTANT = "c"


def max_ground_atoms(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("HTEQ_MAX_GROUND_ATOMS")
    return int(env) if env else DEFAULT_MAX_GROUND_ATOMS


def max_ground_rules(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("HTEQ_MAX_GROUND_RULES")
    return int(env) if env else DEFAULT_MAX_GROUND_RULES


# --------------------------------------------------------------------------
# Terms, atoms, rules

@dataclass(frozen=True, order=True)
class Constant:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class NGAtom:
    predicate: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def variables(self) -> set:
        return {t for t in self.args if isinstance(t, Variable)}

    def constants(self) -> set:
        return {t.name for t in self.args if isinstance(t, Constant)}

    def substitute(self, binding: dict) -> "NGAtom":
        return NGAtom(self.predicate, tuple(binding.get(t, t) for t in self.args))

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(t) for t in self.args)})"


def ground_atom_name(predicate: str, args) -> str:
    return predicate if not args else f"{predicate}({','.join(args)})"


@dataclass(frozen=True)
class NGRule:
    head_pos: tuple = ()
    head_neg: tuple = ()
    body_pos: tuple = ()
    body_neg: tuple = ()

    def atoms(self):
        return self.head_pos + self.head_neg + self.body_pos + self.body_neg

    def variables(self) -> list:
        """Variables in order of first occurrence."""
        seen = []
        for a in self.atoms():
            for t in a.args:
                if isinstance(t, Variable) and t not in seen:
                    seen.append(t)
        return seen

    def __str__(self):
        head = [str(a) for a in self.head_pos] + [f"not {a}" for a in self.head_neg]
        body = [str(a) for a in self.body_pos] + [f"not {a}" for a in self.body_neg]
        text = " | ".join(head)
        if body:
            text = (text + " :- " if text else ":- ") + ", ".join(body)
        return text + "."


@dataclass(frozen=True)
class NGProgram:
    rules: tuple
    predicates: tuple  # (name, arity) pairs in first-seen order

    def constants(self) -> list[str]:
        names = set()
        for r in self.rules:
            for a in r.atoms():
                names |= a.constants()
        return sorted(names, key=natural_key)

    def union(self, other: "NGProgram") -> "NGProgram":
        return _make_program(self.rules + tuple(r for r in other.rules if r not in self.rules))

    def __str__(self):
        return "\n".join(str(r) for r in self.rules) + ("\n" if self.rules else "")


def _make_program(rules) -> NGProgram:
    arity: dict[str, int] = {}
    for r in rules:
        for a in r.atoms():
            if arity.setdefault(a.predicate, a.arity) != a.arity:
                raise ValueError(f"predicate {a.predicate!r} used with arities "
                                 f"{arity[a.predicate]} and {a.arity}")
    return NGProgram(tuple(rules), tuple(arity.items()))


def is_safe(rule: NGRule) -> bool:
    """Every variable of the head or negative body occurs in the positive body."""
    bound = set()
    for a in rule.body_pos:
        bound |= a.variables()
    for a in rule.head_pos + rule.head_neg + rule.body_neg:
        if not a.variables() <= bound:
            return False
    return True


def is_safe_program(program: NGProgram) -> bool:
    return all(is_safe(r) for r in program.rules)


# --------------------------------------------------------------------------
# Parsing

_OUT_OF_SCOPE = ("only function-free programs without equality are supported; "
                 "equality and function symbols belong to the first-order setting "
                 "that this tool does not implement")
_EQUALITY = re.compile(r"^[^%\n]*?(!=|=)", re.M)


class _NGParser(Parser):
    def term(self):
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return Constant(tok.text)
        if tok.kind != "ident":
            self.fail(f"expected a term, found {tok.text or 'end of input'!r}", tok)
        self.next()
        if self.at("("):
            self.fail(f"function symbol {tok.text!r}: {_OUT_OF_SCOPE}", tok)
        if tok.text[0].isupper() or tok.text[0] == "_":
            return Variable(tok.text)
        return Constant(tok.text)

    def ng_atom(self) -> NGAtom:
        tok = self.peek()
        name = self.atom_name()
        args = []
        if self.accept("("):
            while True:
                args.append(self.term())
                if not self.accept(","):
                    break
            self.expect(")")
        self._arity(name, len(args), tok)
        return NGAtom(name, tuple(args))

    def _arity(self, name, n, tok):
        known = self.arities.setdefault(name, n)
        if known != n:
            self.fail(f"predicate {name!r} used with arities {known} and {n}", tok)


def parse_ng_program(text: str) -> NGProgram:
    """Parse rules over atoms ``p(t1,...,tn)``; uppercase terms are variables."""
    for lineno, line in enumerate(text.splitlines(), 1):
        m = _EQUALITY.match(line)
        if m:
            raise ParseError(f"equality: {_OUT_OF_SCOPE}", lineno, m.start(1) + 1)
    p = _NGParser(text)
    p.arities = {}
    rules = []
    while not p.at_eof():
        if p.peek().kind == "hash":
            p.fail(f"unknown directive {p.peek().text!r}")
        hp, hn, bp, bn = p.rule_parts(p.ng_atom)
        rules.append(NGRule(tuple(hp), tuple(hn), tuple(bp), tuple(bn)))
    return _make_program(rules)


# --------------------------------------------------------------------------
# Universes and grounding

@dataclass(frozen=True)
class Universe:
    herbrand: tuple
    fresh: tuple = ()

    @property
    def constants(self) -> tuple:
        return self.herbrand + self.fresh

    def extend(self, k: int) -> "Universe":
        taken = set(self.constants)
        fresh, i = list(self.fresh), 1
        while len(fresh) < len(self.fresh) + k:
            name = f"u{i}"
            if name not in taken:
                fresh.append(name)
                taken.add(name)
            i += 1
        return Universe(self.herbrand, tuple(fresh))

    def __str__(self):
        return "{" + ",".join(self.constants) + "}"


def herbrand_universe(program: NGProgram) -> Universe:
    consts = program.constants()
    return Universe(tuple(consts) if consts else (DEFAULT_CONSTANT,))


def ground_signature(program: NGProgram, universe: Universe, limit=None) -> Signature:
    """All ground atoms of the program's predicates over the universe."""
    names = []
    for pred, arity in program.predicates:
        for args in itertools.product(universe.constants, repeat=arity):
            names.append(ground_atom_name(pred, args))
    lim = max_ground_atoms(limit)
    if len(names) > lim:
        raise BoundError("ground atom base", len(names), lim)
    return Signature.sorted(names)


def ground(program: NGProgram, universe: Universe, signature=None, limit=None,
           rule_limit=None) -> Program:
    """Instantiate every rule with every substitution over the universe."""
    sig = signature or ground_signature(program, universe, limit)
    consts = [Constant(c) for c in universe.constants]
    count = sum(len(consts) ** len(r.variables()) for r in program.rules)
    rlim = max_ground_rules(rule_limit)
    if count > rlim:
        raise BoundError("ground rule instances", count, rlim)
    rules = []
    for r in program.rules:
        variables = r.variables()
        for values in itertools.product(consts, repeat=len(variables)):
            binding = dict(zip(variables, values))
            parts = [frozenset(_ground_name(a.substitute(binding)) for a in side)
                     for side in (r.head_pos, r.head_neg, r.body_pos, r.body_neg)]
            rules.append(Rule(*parts))
    return Program.of(rules, sig)


def _ground_name(atom: NGAtom) -> str:
    return ground_atom_name(atom.predicate, [t.name for t in atom.args])


def ordinary_answer_sets(program: NGProgram, limit=None) -> list[frozenset]:
    gp = ground(program, herbrand_universe(program), limit=limit)
    return answer_sets_program(gp, limit=max_ground_atoms(limit))


def open_answer_sets(program: NGProgram, k: int = DEFAULT_EXTRA_CONSTS,
                     limit=None) -> list[tuple[Universe, frozenset]]:
    """Answer sets over the Herbrand universe extended by 0..k fresh constants."""
    base = herbrand_universe(program)
    out = []
    for j in range(k + 1):
        u = base.extend(j)
        gp = ground(program, u, limit=limit)
        out += [(u, a) for a in answer_sets_program(gp, limit=max_ground_atoms(limit))]
    return out


# --------------------------------------------------------------------------
# Uniform equivalence via total and maximal non-total models

def maximal_nontotal_table(models: np.ndarray) -> np.ndarray:
    """Non-total models (X,Y) with no non-total model (X',Y), X strictly inside X'."""
    n = models.ndim
    nontotal = models & ~kernels.total_mask(n)
    at_or_above = ~kernels.orthant_closure(~nontotal, [kernels.MODE_UP] * n)
    strictly_above = np.zeros_like(nontotal)
    for axis in range(n):
        there_only = [slice(None)] * n
        here_too = [slice(None)] * n
        there_only[axis], here_too[axis] = 1, 2
        strictly_above[tuple(there_only)] |= at_or_above[tuple(here_too)]
    return nontotal & ~strictly_above


def ue_table(models: np.ndarray) -> np.ndarray:
    """Total models together with maximal non-total models."""
    return (models & kernels.total_mask(models.ndim)) | maximal_nontotal_table(models)


@dataclass(frozen=True)
class NGVerdict:
    equivalent: bool
    searched: tuple  # universes in search order
    universe: Optional[Universe] = None
    witness: Optional[HTInterpretation] = None
    witness_side: Optional[int] = None

    def __post_init__(self):
        if self.equivalent != (self.witness is None):
            raise ValueError("a witness is present iff the verdict is 'not equivalent'")

    def __bool__(self):
        return self.equivalent


def decide_uniform_nonground(p1: NGProgram, p2: NGProgram, k: int = DEFAULT_EXTRA_CONSTS,
                             limit=None) -> NGVerdict:
    """Compare total and maximal non-total models of both groundings over
    the joint Herbrand universe extended by 0..k fresh constants."""
    joint = p1.union(p2)
    base = herbrand_universe(joint)
    searched = []
    for j in range(k + 1):
        u = base.extend(j)
        searched.append(u)
        sig = ground_signature(joint, u, limit)
        t1 = model_table(ground(p1, u, sig), sig, limit=len(sig))
        t2 = model_table(ground(p2, u, sig), sig, limit=len(sig))
        ue1, ue2 = ue_table(t1), ue_table(t2)
        if not np.array_equal(ue1, ue2):
            witness = InterpretationSet(ue1 ^ ue2, sig).least()
            side = 1 if witness in InterpretationSet(ue1, sig) else 2
            return NGVerdict(False, tuple(searched), u, witness, side)
    return NGVerdict(True, tuple(searched))
