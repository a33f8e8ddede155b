"""Here-and-there semantics over finite signatures.

Two evaluation routes exist on purpose. ``ht_sat`` and ``classical_sat``
walk the formula tree for one interpretation; the table functions
(``model_table`` and everything built on it) evaluate a whole theory over all
``3**n`` interpretations at once through :mod:`hteq.kernels`.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import BoundError
from .syntax import (
    And, Atom, Bottom, Impl, Or, Program, Signature, Theory, program_to_theory,
)

DEFAULT_MAX_ATOMS = 16


def max_atoms(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("HTEQ_MAX_ATOMS")
    return int(env) if env else DEFAULT_MAX_ATOMS


def check_bound(signature: Signature, limit=None):
    lim = max_atoms(limit)
    if len(signature) > lim:
        raise BoundError("signature", len(signature), lim)


class Tag(enum.Enum):
    PLAIN = "plain"
    MODELS = "models"
    C_C = "C_c"
    C_A = "C_a"
    C_S = "C_s"
    C_U = "C_u"
    E_C = "E_c"
    E_A = "E_a"
    E_S = "E_s"
    E_U = "E_u"
    E_HYPER = "E_hyper"


# --------------------------------------------------------------------------
# Interpretations

@dataclass(frozen=True)
class HTInterpretation:
    """A pair (X, Y), X a subset of Y, stored as bit masks over ``signature``."""

    here: int
    there: int
    signature: Signature

    def __post_init__(self):
        if self.here & ~self.there:
            raise ValueError("here part must be a subset of the there part")
        if self.there & ~self.signature.full_mask:
            raise ValueError("interpretation uses atoms outside the signature")

    @classmethod
    def of(cls, here: Iterable[str], there: Iterable[str], signature: Signature):
        there = set(there)
        return cls(signature.mask(here), signature.mask(there), signature)

    @property
    def here_atoms(self) -> frozenset:
        return self.signature.names(self.here)

    @property
    def there_atoms(self) -> frozenset:
        return self.signature.names(self.there)

    @property
    def is_total(self) -> bool:
        return self.here == self.there

    def sort_key(self):
        return (self.there, self.here)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        h = ",".join(self.signature.sorted_names(self.here))
        t = ",".join(self.signature.sorted_names(self.there))
        return f"({{{h}}},{{{t}}})"

    def to_json(self) -> dict:
        return {
            "here": self.signature.sorted_names(self.here),
            "there": self.signature.sorted_names(self.there),
        }


class InterpretationSet:
    """A set of HT-interpretations over one signature, backed by a table."""

    def __init__(self, table: np.ndarray, signature: Signature, tag: Tag = Tag.PLAIN):
        n = len(signature)
        table = np.asarray(table, dtype=bool)
        if table.shape != (3,) * n:
            raise ValueError(f"table shape {table.shape} does not match {n} atoms")
        table = table.copy()
        table.flags.writeable = False
        self.table = table
        self.signature = signature
        self.tag = tag

    @classmethod
    def from_members(cls, members: Iterable, signature: Signature, tag=Tag.PLAIN):
        n = len(signature)
        table = np.zeros((3,) * n, dtype=bool)
        flat = table.reshape(-1)
        for m in members:
            here, there = _masks(m, signature)
            flat[kernels.encode(here, there, n)] = True
        return cls(table, signature, tag)

    def __contains__(self, m) -> bool:
        here, there = _masks(m, self.signature)
        if here & ~there or there & ~self.signature.full_mask:
            return False
        n = len(self.signature)
        return bool(self.table.reshape(-1)[kernels.encode(here, there, n)])

    def masks(self) -> list[tuple[int, int]]:
        """Members as (here, there) masks in canonical order."""
        n = len(self.signature)
        idx = np.flatnonzero(self.table.reshape(-1))
        here, there = kernels.decode(idx, n)
        order = np.lexsort((here, there))
        return [(int(here[i]), int(there[i])) for i in order]

    def __iter__(self) -> Iterator[HTInterpretation]:
        sig = self.signature
        return (HTInterpretation(h, t, sig) for h, t in self.masks())

    def __len__(self):
        return int(np.count_nonzero(self.table))

    def __bool__(self):
        return bool(self.table.any())

    def __eq__(self, other):
        if not isinstance(other, InterpretationSet):
            return NotImplemented
        return self.signature == other.signature and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.signature, self.table.tobytes()))

    def __repr__(self):
        body = ", ".join(str(m) for m in self)
        return f"InterpretationSet[{self.tag.value}]{{{body}}}"

    def symmetric_difference(self, other: "InterpretationSet") -> "InterpretationSet":
        _same_signature(self, other)
        return InterpretationSet(self.table ^ other.table, self.signature)

    def least(self):
        """Least member in canonical order, or None."""
        ms = self.masks()
        return HTInterpretation(*ms[0], self.signature) if ms else None

    def retag(self, tag: Tag) -> "InterpretationSet":
        return InterpretationSet(self.table, self.signature, tag)


def _masks(m, signature):
    if isinstance(m, HTInterpretation):
        if m.signature == signature:
            return m.here, m.there
        return signature.mask(m.here_atoms), signature.mask(m.there_atoms)
    here, there = m
    if isinstance(here, int) and isinstance(there, int):
        return here, there
    return signature.mask(here), signature.mask(there)


def _same_signature(a, b):
    if a.signature != b.signature:
        raise ValueError("interpretation sets over different signatures")


# --------------------------------------------------------------------------
# Tree-walking satisfaction

def classical_sat(y: Iterable[str], f) -> bool:
    y = y if isinstance(y, (set, frozenset)) else frozenset(y)
    return _classical(f, y)


def _classical(f, y) -> bool:
    if isinstance(f, Atom):
        return f.name in y
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return _classical(f.left, y) and _classical(f.right, y)
    if isinstance(f, Or):
        return _classical(f.left, y) or _classical(f.right, y)
    if isinstance(f, Impl):
        return not _classical(f.antecedent, y) or _classical(f.consequent, y)
    raise TypeError(f"not a formula: {f!r}")


def _ht(f, x, y) -> bool:
    if isinstance(f, Atom):
        return f.name in x
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return _ht(f.left, x, y) and _ht(f.right, x, y)
    if isinstance(f, Or):
        return _ht(f.left, x, y) or _ht(f.right, x, y)
    if isinstance(f, Impl):
        return (not _ht(f.antecedent, x, y) or _ht(f.consequent, x, y)) and _classical(f, y)
    raise TypeError(f"not a formula: {f!r}")


def ht_sat(m, f) -> bool:
    """(X, Y) |= f in here-and-there.

    ``m`` is an :class:`HTInterpretation` or a pair of atom-name sets.
    """
    if isinstance(m, HTInterpretation):
        x, y = m.here_atoms, m.there_atoms
    else:
        x, y = frozenset(m[0]), frozenset(m[1])
    return _ht(f, x, y)


def ht_sat_theory(m, theory) -> bool:
    formulas = theory.formulas if isinstance(theory, Theory) else theory
    return all(ht_sat(m, f) for f in formulas)


def enumerate_ht(signature: Signature, limit=None) -> Iterator[HTInterpretation]:
    """All (X, Y) over the signature: Y ascending, then X ascending within Y."""
    check_bound(signature, limit)
    for y in range(1 << len(signature)):
        x = 0
        while True:
            yield HTInterpretation(x, y, signature)
            if x == y:
                break
            x = (x - y) & y


def subsets(mask: int) -> Iterator[int]:
    """Submasks of ``mask`` in ascending order."""
    x = 0
    while True:
        yield x
        if x == mask:
            return
        x = (x - mask) & mask


# --------------------------------------------------------------------------
# Tables

def as_theory(obj) -> Theory:
    if isinstance(obj, Theory):
        return obj
    if isinstance(obj, Program):
        return program_to_theory(obj)
    raise TypeError(f"expected a Theory or Program, got {type(obj).__name__}")


def _resolve_signature(theory: Theory, signature) -> Signature:
    if signature is None or signature is theory.signature:
        return theory.signature
    missing = theory.atoms() - set(signature)
    if missing:
        raise ValueError(f"atoms {sorted(missing)} not in signature")
    return signature


def model_table(theory, signature: Signature | None = None, limit=None) -> np.ndarray:
    """Boolean table of HT-models of ``theory`` over ``signature``."""
    theory = as_theory(theory)
    sig = _resolve_signature(theory, signature)
    check_bound(sig, limit)
    index = {a: i for i, a in enumerate(sig)}
    code = kernels.compile_theory(theory.formulas, index)
    return kernels.ht_table(code, len(sig))


def ht_models(theory, signature=None, limit=None) -> InterpretationSet:
    theory = as_theory(theory)
    sig = _resolve_signature(theory, signature)
    return InterpretationSet(model_table(theory, sig, limit), sig, Tag.MODELS)


def countermodels(theory, signature=None, limit=None) -> InterpretationSet:
    theory = as_theory(theory)
    sig = _resolve_signature(theory, signature)
    return InterpretationSet(~model_table(theory, sig, limit), sig, Tag.C_S)


def equilibrium_table(models: np.ndarray) -> np.ndarray:
    """Total models (Y, Y) with no non-total model (X, Y)."""
    n = models.ndim
    total = kernels.total_mask(n)
    no_smaller = kernels.orthant_closure(~(models & ~total), [kernels.MODE_UP] * n)
    return total & models & kernels.at_empty_here(no_smaller)


def equilibrium_models(theory, signature=None, limit=None) -> InterpretationSet:
    theory = as_theory(theory)
    sig = _resolve_signature(theory, signature)
    table = equilibrium_table(model_table(theory, sig, limit))
    return InterpretationSet(table, sig, Tag.E_A)


def answer_sets_theory(theory, signature=None, limit=None) -> list[frozenset]:
    eq = equilibrium_models(theory, signature, limit)
    return [m.there_atoms for m in eq]


# --------------------------------------------------------------------------
# Programs: reduct and answer sets

@dataclass(frozen=True)
class PositiveRule:
    head: frozenset
    body: frozenset

    def satisfied_by(self, interp) -> bool:
        return not self.body <= interp or bool(self.head & interp)


@dataclass(frozen=True)
class PositiveProgram:
    rules: tuple

    def satisfied_by(self, interp) -> bool:
        interp = frozenset(interp)
        return all(r.satisfied_by(interp) for r in self.rules)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def reduct(program: Program, interp: Iterable[str]) -> PositiveProgram:
    i = frozenset(interp)
    rules = []
    for r in program.rules:
        if r.head_neg <= i and not (r.body_neg & i):
            pr = PositiveRule(r.head_pos, r.body_pos)
            if pr not in rules:
                rules.append(pr)
    return PositiveProgram(tuple(rules))


def answer_sets_program(program: Program, signature: Signature | None = None,
                        limit=None) -> list[frozenset]:
    """Answer sets via the reduct, in ascending mask order."""
    sig = signature or program.signature
    if not {a for r in program.rules for a in r.atoms()} <= set(sig):
        raise ValueError("program atoms not in signature")
    check_bound(sig, limit)
    found = []
    for imask in range(1 << len(sig)):
        i = sig.names(imask)
        red = reduct(program, i)
        if not red.satisfied_by(i):
            continue
        if any(red.satisfied_by(sig.names(j)) for j in subsets(imask) if j != imask):
            continue
        found.append(i)
    return found
