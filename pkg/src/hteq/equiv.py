"""Characteristic sets and decisions for classical, answer-set, strong and
uniform equivalence, plus the finite dual-theory constructions.

Two families of characteristic sets are built for every notion: the C family
from HT-countermodels and the E family from equivalence interpretations
(total models and here-countermodels). Decisions compare the E family and
cross-check the C family.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .ht import (
    HTInterpretation, InterpretationSet, Tag, as_theory, ht_sat, model_table,
    subsets,
)
from .syntax import (
    Atom, Formula, Signature, Theory, conj, disj, neg, Impl,
)


class EquivNotion(enum.Enum):
    CLASSICAL = "classical"
    ANSWER_SET = "answer-set"
    STRONG = "strong"
    UNIFORM = "uniform"

    @classmethod
    def parse(cls, value) -> "EquivNotion":
        if isinstance(value, cls):
            return value
        aliases = {"c": cls.CLASSICAL, "a": cls.ANSWER_SET, "s": cls.STRONG,
                   "u": cls.UNIFORM, "answer_set": cls.ANSWER_SET}
        if value in aliases:
            return aliases[value]
        return cls(value)

    @property
    def code(self) -> str:
        return {"classical": "c", "answer-set": "a", "strong": "s", "uniform": "u"}[self.value]


class Family(enum.Enum):
    C = "C"
    E = "E"


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    witness: Optional[HTInterpretation] = None
    witness_side: Optional[int] = None
    notion: str = ""
    signature: Optional[Signature] = None
    sizes: tuple = ()

    def __post_init__(self):
        if self.equivalent != (self.witness is None):
            raise ValueError("a witness is present iff the verdict is 'not equivalent'")

    def __bool__(self):
        return self.equivalent


# --------------------------------------------------------------------------
# Literal closure predicates

def is_total_closed(m: HTInterpretation, s) -> bool:
    """(Y, Y) with (X, Y) in ``s`` for every X within Y."""
    if not m.is_total:
        return False
    sig = m.signature
    return all(HTInterpretation(x, m.there, sig) in s for x in subsets(m.there))


def is_closed(m: HTInterpretation, s) -> bool:
    """(X', Y) in ``s`` for every X <= X' <= Y."""
    sig = m.signature
    free = m.there & ~m.here
    return all(HTInterpretation(m.here | x, m.there, sig) in s for x in subsets(free))


def is_there_closed(m: HTInterpretation, s) -> bool:
    """(Y, Y) not in ``s`` and (X', Y) in ``s`` for every X <= X' < Y."""
    sig = m.signature
    if HTInterpretation(m.there, m.there, sig) in s:
        return False
    free = m.there & ~m.here
    for x in subsets(free):
        xp = m.here | x
        if xp != m.there and HTInterpretation(xp, m.there, sig) not in s:
            return False
    return True


# --------------------------------------------------------------------------
# Tables for the characteristic sets

def _signature_for(theory: Theory, signature) -> Signature:
    if signature is None:
        return theory.signature
    missing = theory.atoms() - set(signature)
    if missing:
        raise ValueError(f"atoms {sorted(missing)} not in signature")
    return signature


def es_table(models: np.ndarray) -> np.ndarray:
    """Equivalence interpretations from a model table."""
    total = kernels.total_mask(models.ndim)
    there_model = kernels.at_total(models)
    return (total & models) | (~total & ~models & there_model)


def _closed(table: np.ndarray) -> np.ndarray:
    return kernels.orthant_closure(table, [kernels.MODE_UP] * table.ndim)


def characteristic_tables(models: np.ndarray) -> dict:
    """All C_e / E_e tables keyed ``"C_s"``, ``"E_u"``, ... from a model table."""
    n = models.ndim
    total = kernels.total_mask(n)
    empty_here = kernels.empty_here_mask(n)
    cs = ~models
    es = es_table(models)
    # there-closed in S: (Y,Y) not in S and closed in S plus the total point
    cu = kernels.at_total(models) & _closed(cs | total)
    es_closed = _closed(es)
    return {
        "C_s": cs,
        "C_c": cs & total,
        "C_u": cu,
        "C_a": cu & empty_here,
        "E_s": es,
        "E_c": es & total,
        "E_u": es_closed,
        "E_a": total & kernels.at_empty_here(es_closed),
    }


_TAGS = {name: Tag(name) for name in ("C_s", "C_c", "C_u", "C_a", "E_s", "E_c", "E_u", "E_a")}


def equivalence_interpretations(theory, signature=None, limit=None) -> InterpretationSet:
    theory = as_theory(theory)
    sig = _signature_for(theory, signature)
    return InterpretationSet(es_table(model_table(theory, sig, limit)), sig, Tag.E_S)


def characteristic_set(theory, signature=None, notion="strong", family="E",
                       limit=None) -> InterpretationSet:
    theory = as_theory(theory)
    sig = _signature_for(theory, signature)
    notion = EquivNotion.parse(notion)
    family = Family(family) if not isinstance(family, Family) else family
    name = f"{family.value}_{notion.code}"
    tables = characteristic_tables(model_table(theory, sig, limit))
    return InterpretationSet(tables[name], sig, _TAGS[name])


def joint_signature(*theories, extra=()) -> Signature:
    names = set(extra)
    for t in theories:
        names |= set(t.signature)
    return Signature.union(names)


def decide_equivalence(t1, t2, notion, extra_atoms=(), signature=None,
                       limit=None) -> Verdict:
    """Compare E-family characteristic sets over the joint signature.

    The C-family comparison is computed as well; a disagreement between the
    two would be an internal error.
    """
    t1, t2 = as_theory(t1), as_theory(t2)
    notion = EquivNotion.parse(notion)
    sig = signature or joint_signature(t1, t2, extra=extra_atoms)
    tab1 = characteristic_tables(model_table(t1, sig, limit))
    tab2 = characteristic_tables(model_table(t2, sig, limit))
    e_name, c_name = f"E_{notion.code}", f"C_{notion.code}"
    e_equal = np.array_equal(tab1[e_name], tab2[e_name])
    c_equal = np.array_equal(tab1[c_name], tab2[c_name])
    if e_equal != c_equal:
        raise RuntimeError(f"C and E characterisations disagree for {notion.value}")
    sizes = (int(tab1[e_name].sum()), int(tab2[e_name].sum()))
    if e_equal:
        return Verdict(True, notion=notion.value, signature=sig, sizes=sizes)
    diff = InterpretationSet(tab1[e_name] ^ tab2[e_name], sig)
    witness = diff.least()
    side = 1 if witness in InterpretationSet(tab1[e_name], sig) else 2
    return Verdict(False, witness, side, notion.value, sig, sizes)


# --------------------------------------------------------------------------
# Totality, Gamma_phi and the dual theory

def tau_epsilon(signature) -> Theory:
    """{--a -> a : a in L}; satisfied exactly by the total interpretations."""
    sig = signature if isinstance(signature, Signature) else Signature(signature)
    return Theory.of([Impl(neg(neg(Atom(a))), Atom(a)) for a in sig], sig)


def gamma_phi(theory, phi: Formula, signature=None) -> Theory:
    theory = as_theory(theory)
    if phi not in theory.formulas:
        raise ValueError("phi must be a member of the theory")
    sig = _signature_for(theory, signature)
    formulas = [neg(neg(psi)) for psi in theory.formulas]
    formulas += [Impl(phi, Impl(neg(neg(Atom(a))), Atom(a))) for a in sig]
    return Theory.of(formulas, sig)


def membership_via_gamma(m: HTInterpretation, theory, signature=None) -> bool:
    theory = as_theory(theory)
    sig = _signature_for(theory, signature)
    for phi in theory.formulas:
        g = gamma_phi(theory, phi, sig)
        if all(ht_sat(m, f) for f in g.formulas):
            return True
    return False


def dual_theory(theory, signature=None) -> Formula:
    """Disjunction over phi of the conjunction of Gamma_phi."""
    theory = as_theory(theory)
    sig = _signature_for(theory, signature)
    return disj(conj(gamma_phi(theory, phi, sig).formulas) for phi in theory.formulas)


def restrict(m: HTInterpretation, signature) -> HTInterpretation:
    sig = signature if isinstance(signature, Signature) else Signature(signature)
    if not set(sig) <= set(m.signature):
        raise ValueError("restriction target must be a subset of the signature")
    here = sig.mask(a for a in m.here_atoms if a in sig)
    there = sig.mask(a for a in m.there_atoms if a in sig)
    return HTInterpretation(here, there, sig)


def is_totality_preserving(m: HTInterpretation, signature) -> bool:
    if m.is_total:
        return True
    r = restrict(m, signature)
    return not r.is_total
