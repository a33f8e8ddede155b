"""Formulas, theories and disjunctive programs: AST, parsing, printing and
syntactic analyses (factuality, polarity, A+/A- membership).

Only four connectives exist as node kinds: bottom, conjunction, disjunction
and implication. Negation, top and equivalence are expanded while parsing::

    -f      ->  Impl(f, BOT)
    #t      ->  Impl(BOT, BOT)
    f <-> g ->  And(Impl(f, g), Impl(g, f))
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ParseError

__all__ = [
    "Bottom", "Atom", "And", "Or", "Impl", "Formula", "BOT", "TOP",
    "neg", "conj", "disj", "iff", "atoms_of", "Signature", "Theory", "Rule",
    "Program", "Alphabets", "Polarity", "PolarityReport", "parse_formula",
    "parse_theory", "parse_program", "format_formula", "format_theory",
    "format_rule", "format_program", "rule_to_formula", "program_to_theory",
    "is_factual", "atom_polarities", "is_apan_formula", "is_apan_theory",
    "natural_key",
]


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True, slots=True)
class Bottom:
    def __repr__(self):
        return "BOT"


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Impl:
    antecedent: "Formula"
    consequent: "Formula"


Formula = Union[Bottom, Atom, And, Or, Impl]

BOT = Bottom()
TOP = Impl(BOT, BOT)


def neg(f: Formula) -> Formula:
    return Impl(f, BOT)


def conj(fs: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``TOP``."""
    result = None
    for f in fs:
        result = f if result is None else And(result, f)
    return TOP if result is None else result


def disj(fs: Iterable[Formula]) -> Formula:
    """Left-folded disjunction; the empty disjunction is ``BOT``."""
    result = None
    for f in fs:
        result = f if result is None else Or(result, f)
    return BOT if result is None else result


def iff(f: Formula, g: Formula) -> Formula:
    return And(Impl(f, g), Impl(g, f))


def atoms_of(f: Formula) -> frozenset[str]:
    out = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Impl):
            stack.append(node.antecedent)
            stack.append(node.consequent)
    return frozenset(out)


_DIGITS = re.compile(r"(\d+)")


def natural_key(name: str):
    """Sort key ordering ``a2`` before ``a10``."""
    return tuple(int(p) if p.isdigit() else p for p in _DIGITS.split(name))


# --------------------------------------------------------------------------
# Signatures, theories, programs

class Signature:
    """A finite, totally ordered set of atom names.

    Atom ``i`` of the signature corresponds to bit ``i`` of the integer masks
    used throughout the package.
    """

    __slots__ = ("atoms", "_index")

    def __init__(self, atoms: Iterable[str] = ()):
        atoms = tuple(atoms)
        index = {}
        for i, a in enumerate(atoms):
            if not isinstance(a, str) or not a:
                raise ValueError(f"invalid atom name {a!r}")
            if a in index:
                raise ValueError(f"duplicate atom {a!r} in signature")
            index[a] = i
        self.atoms = atoms
        self._index = index

    @classmethod
    def sorted(cls, atoms: Iterable[str]) -> "Signature":
        return cls(sorted(set(atoms), key=natural_key))

    @classmethod
    def union(cls, *parts: Iterable[str]) -> "Signature":
        names = set()
        for p in parts:
            names.update(p)
        return cls.sorted(names)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Signature) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return f"Signature({list(self.atoms)!r})"

    def index(self, name: str) -> int:
        return self._index[name]

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for a in names:
            m |= 1 << self._index[a]
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    def sorted_names(self, mask: int) -> list[str]:
        return [a for i, a in enumerate(self.atoms) if mask >> i & 1]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def extend(self, names: Iterable[str]) -> "Signature":
        return Signature.union(self.atoms, names)


@dataclass(frozen=True)
class Theory:
    formulas: tuple
    signature: Signature

    def __post_init__(self):
        missing = set()
        for f in self.formulas:
            missing |= atoms_of(f) - set(self.signature)
        if missing:
            raise ValueError(f"atoms {sorted(missing)} not in signature")

    @classmethod
    def of(cls, formulas: Iterable[Formula], signature=None, extra=()) -> "Theory":
        seen = []
        for f in formulas:
            if f not in seen:
                seen.append(f)
        names = set(extra)
        for f in seen:
            names |= atoms_of(f)
        if signature is None:
            signature = Signature.sorted(names)
        elif not names <= set(signature):
            signature = signature.extend(names)
        # the signature covers every atom by construction, skip the recheck
        theory = object.__new__(cls)
        object.__setattr__(theory, "formulas", tuple(seen))
        object.__setattr__(theory, "signature", signature)
        return theory

    def __iter__(self):
        return iter(self.formulas)

    def __len__(self):
        return len(self.formulas)

    def atoms(self) -> frozenset[str]:
        out = set()
        for f in self.formulas:
            out |= atoms_of(f)
        return frozenset(out)

    def union(self, other: "Theory") -> "Theory":
        sig = Signature.union(self.signature, other.signature)
        return Theory.of(self.formulas + other.formulas, sig)

    def with_signature(self, signature: Signature) -> "Theory":
        return Theory(self.formulas, signature)


@dataclass(frozen=True)
class Rule:
    head_pos: frozenset = frozenset()
    head_neg: frozenset = frozenset()
    body_pos: frozenset = frozenset()
    body_neg: frozenset = frozenset()

    def __post_init__(self):
        for name in ("head_pos", "head_neg", "body_pos", "body_neg"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if not (self.head_pos or self.head_neg or self.body_pos or self.body_neg):
            raise ValueError("a rule needs a nonempty head or body")

    def atoms(self) -> frozenset:
        return self.head_pos | self.head_neg | self.body_pos | self.body_neg

    @property
    def is_fact(self) -> bool:
        return not (self.body_pos or self.body_neg)

    def satisfied_by(self, interp: Iterable[str]) -> bool:
        """Classical rule satisfaction by a set of atoms."""
        i = set(interp)
        if self.body_pos <= i and not (self.body_neg & i):
            return bool(i & self.head_pos) or not self.head_neg <= i
        return True


@dataclass(frozen=True)
class Program:
    rules: tuple
    signature: Signature

    def __post_init__(self):
        missing = set()
        for r in self.rules:
            missing |= r.atoms() - set(self.signature)
        if missing:
            raise ValueError(f"atoms {sorted(missing)} not in signature")

    @classmethod
    def of(cls, rules: Iterable[Rule], signature=None, extra=()) -> "Program":
        seen = []
        for r in rules:
            if r not in seen:
                seen.append(r)
        names = set(extra)
        for r in seen:
            names |= r.atoms()
        if signature is None:
            signature = Signature.sorted(names)
        elif not names <= set(signature):
            signature = signature.extend(names)
        return cls(tuple(seen), signature)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def with_signature(self, signature: Signature) -> "Program":
        return Program(self.rules, signature)


@dataclass(frozen=True)
class Alphabets:
    a_plus: frozenset = frozenset()
    a_minus: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "a_plus", frozenset(self.a_plus))
        object.__setattr__(self, "a_minus", frozenset(self.a_minus))

    @property
    def atoms(self) -> frozenset:
        return self.a_plus | self.a_minus


# --------------------------------------------------------------------------
# Rule translation

def _literals(pos, negs) -> list:
    return [Atom(a) for a in sorted(pos, key=natural_key)] + [
        neg(Atom(a)) for a in sorted(negs, key=natural_key)
    ]


def rule_to_formula(r: Rule) -> Formula:
    body = conj(_literals(r.body_pos, r.body_neg))
    head = disj(_literals(r.head_pos, r.head_neg))
    return Impl(body, head)


def program_to_theory(p: Program) -> Theory:
    return Theory.of((rule_to_formula(r) for r in p.rules), p.signature)


# --------------------------------------------------------------------------
# Syntactic analyses

def is_factual(f: Formula) -> bool:
    """True iff every implication in ``f`` has consequent bottom."""
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Impl):
            if not isinstance(node.consequent, Bottom):
                return False
            stack.append(node.antecedent)
        elif isinstance(node, (And, Or)):
            stack.append(node.left)
            stack.append(node.right)
    return True


@dataclass(frozen=True)
class Polarity:
    positive: bool = False
    negative: bool = False


@dataclass(frozen=True)
class PolarityReport(Mapping):
    flags: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.flags.get(name, Polarity())

    def __iter__(self):
        return iter(self.flags)

    def __len__(self):
        return len(self.flags)

    def positive_atoms(self) -> frozenset:
        return frozenset(a for a, p in self.flags.items() if p.positive)

    def negative_atoms(self) -> frozenset:
        return frozenset(a for a, p in self.flags.items() if p.negative)


def atom_polarities(f: Formula) -> PolarityReport:
    """Positive/negative occurrence flags for every atom of ``f``.

    An occurrence is negative iff it lies below some antecedent. It is
    positive if its path crosses no antecedent, if it lies below some
    consequent, or if it lies in ``p`` of an implication ``(p -> q) -> r``.
    On top of that, the antecedent of a negative implication counts as
    positive, which keeps truth in the there world preserved downwards
    for theories that respect the alphabets. So ``b`` in ``a -> -b``
    carries both flags, as does ``a`` in ``((a -> b) -> c) -> d``.
    """
    flags: dict[str, list] = {}
    # node, inherited positive, negative, below some consequent
    stack = [(f, True, False, False)]
    while stack:
        node, pos, negv, lit = stack.pop()
        if isinstance(node, Atom):
            cur = flags.setdefault(node.name, [False, False])
            cur[0] |= pos or lit or not negv
            cur[1] |= negv
        elif isinstance(node, (And, Or)):
            stack.append((node.left, pos, negv, lit))
            stack.append((node.right, pos, negv, lit))
        elif isinstance(node, Impl):
            # p in (p -> q) -> r is positive through the inherited flag
            stack.append((node.antecedent, negv, True, lit))
            stack.append((node.consequent, True, negv, True))
    return PolarityReport({a: Polarity(p, n) for a, (p, n) in flags.items()})


def is_apan_formula(f: Formula, ab: Alphabets, extended: bool = False) -> bool:
    report = atom_polarities(f)
    if report.positive_atoms() <= ab.a_plus and report.negative_atoms() <= ab.a_minus:
        return True
    return extended and is_factual(f) and atoms_of(f) <= ab.a_plus


def is_apan_theory(theory, ab: Alphabets, extended: bool = False) -> bool:
    formulas = theory.formulas if isinstance(theory, Theory) else theory
    return all(is_apan_formula(f, ab, extended) for f in formulas)


# --------------------------------------------------------------------------
# Printing

_PREC = {Or: 2, And: 3}


def format_formula(f: Formula) -> str:
    return _fmt(f)


def _is_neg(f) -> bool:
    return isinstance(f, Impl) and isinstance(f.consequent, Bottom)


def _fmt(f) -> str:
    if isinstance(f, Bottom):
        return "#f"
    if isinstance(f, Atom):
        return f.name
    if f == TOP:
        return "#t"
    if _is_neg(f):
        return "-" + _wrap(f.antecedent, unary=True)
    if isinstance(f, Impl):
        return f"{_wrap(f.antecedent, parent=1)} -> {_wrap(f.consequent, parent=1)}"
    op = " & " if isinstance(f, And) else " | "
    prec = _PREC[type(f)]
    left = _wrap(f.left, parent=prec)
    right = _wrap(f.right, parent=prec, right=True)
    return left + op + right


def _wrap(child, parent=0, unary=False, right=False) -> str:
    text = _fmt(child)
    if isinstance(child, (Atom, Bottom)) or child == TOP or _is_neg(child):
        return text
    if unary:
        return f"({text})"
    # nested implications are always parenthesised
    if isinstance(child, Impl):
        return f"({text})"
    prec = _PREC[type(child)]
    if prec < parent or (right and prec == parent):
        return f"({text})"
    return text


def format_theory(t: Theory, declare: bool = False) -> str:
    lines = []
    if declare:
        unused = [a for a in t.signature if a not in t.atoms()]
        if unused:
            lines.append("#atoms " + ", ".join(unused) + ".")
    lines.extend(_fmt(f) + "." for f in t.formulas)
    return "\n".join(lines) + ("\n" if lines else "")


def format_rule(r: Rule) -> str:
    head = [a for a in sorted(r.head_pos, key=natural_key)]
    head += ["not " + a for a in sorted(r.head_neg, key=natural_key)]
    body = [a for a in sorted(r.body_pos, key=natural_key)]
    body += ["not " + a for a in sorted(r.body_neg, key=natural_key)]
    text = " | ".join(head)
    if body:
        text = (text + " :- " if text else ":- ") + ", ".join(body)
    return text + "."


def format_program(p: Program, declare: bool = False) -> str:
    lines = []
    if declare:
        used = set()
        for r in p.rules:
            used |= r.atoms()
        unused = [a for a in p.signature if a not in used]
        if unused:
            lines.append("#atoms " + ", ".join(unused) + ".")
    lines.extend(format_rule(r) for r in p.rules)
    return "\n".join(lines) + ("\n" if lines else "")


# --------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\f]+)|(?P<nl>\n)|(?P<comment>%[^\n]*)"
    r"|(?P<op><->|->|:-|[&|,.()\-])"
    r"|(?P<hash>\#[a-z]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<num>[0-9]+)"
)

IDENT = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    """Recursive-descent parser shared by the theory and program grammars."""

    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.declared: list[str] = []

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind != "eof" and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "eof":
            self.fail(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return self.next()

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.column)

    def atom_name(self) -> str:
        tok = self.peek()
        if tok.kind != "ident" or not IDENT.match(tok.text):
            self.fail(f"expected an atom, found {tok.text or 'end of input'!r}", tok)
        return self.next().text

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    def declaration(self):
        """``#atoms a, b, c.``"""
        self.next()
        while True:
            tok = self.peek()
            name = self.atom_name()
            if name in self.declared:
                self.fail(f"duplicate declaration of atom {name!r}", tok)
            self.declared.append(name)
            if not self.accept(","):
                break
        self.expect(".")

    def at_declaration(self) -> bool:
        tok = self.peek()
        if tok.kind == "hash" and tok.text == "#atoms":
            return True
        if tok.kind == "hash" and tok.text not in ("#t", "#f"):
            self.fail(f"unknown directive {tok.text!r}", tok)
        return False

    # formulas -------------------------------------------------------------

    def formula(self) -> Formula:
        f = self.implication()
        while self.accept("<->"):
            f = iff(f, self.implication())
        return f

    def implication(self) -> Formula:
        f = self.disjunction()
        if self.accept("->"):
            return Impl(f, self.implication())
        return f

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.accept("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if self.accept("-"):
            return neg(self.unary())
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "hash" and tok.text == "#f":
            self.next()
            return BOT
        if tok.kind == "hash" and tok.text == "#t":
            self.next()
            return TOP
        return Atom(self.atom_name())

    # rules ----------------------------------------------------------------

    def rule_parts(self, atom):
        """Parse ``H1 | ... | not Hk :- B1, ..., not Bn`` up to the final dot.

        ``atom`` parses one atom and returns its key. Returns the four lists
        (head_pos, head_neg, body_pos, body_neg).
        """
        start = self.peek()
        hp, hn, bp, bn = [], [], [], []
        if not self.at(":-") and not self.at("."):
            while True:
                if self.accept("not"):
                    hn.append(atom())
                else:
                    hp.append(atom())
                if not self.accept("|"):
                    break
        if self.accept(":-"):
            if not self.at("."):
                while True:
                    if self.accept("not"):
                        bn.append(atom())
                    else:
                        bp.append(atom())
                    if not self.accept(","):
                        break
        self.expect(".")
        if not (hp or hn or bp or bn):
            self.fail("rule with empty head and empty body", start)
        return hp, hn, bp, bn


def parse_formula(text: str) -> Formula:
    p = Parser(text)
    f = p.formula()
    p.accept(".")
    if not p.at_eof():
        p.fail(f"unexpected {p.peek().text!r}")
    return f


def parse_theory(text: str, extra_atoms: Sequence[str] = ()) -> Theory:
    """Parse dot-terminated formulas (and ``#atoms`` declarations)."""
    p = Parser(text)
    formulas = []
    while not p.at_eof():
        if p.at_declaration():
            p.declaration()
            continue
        formulas.append(p.formula())
        p.expect(".")
    return Theory.of(formulas, extra=list(p.declared) + list(extra_atoms))


def parse_program(text: str, extra_atoms: Sequence[str] = ()) -> Program:
    p = Parser(text)
    rules = []
    while not p.at_eof():
        if p.at_declaration():
            p.declaration()
            continue
        hp, hn, bp, bn = p.rule_parts(p.atom_name)
        rules.append(Rule(frozenset(hp), frozenset(hn), frozenset(bp), frozenset(bn)))
    return Program.of(rules, extra=list(p.declared) + list(extra_atoms))
