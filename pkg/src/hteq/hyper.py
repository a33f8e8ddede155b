"""Relativized hyperequivalence wrt. alphabets A+ (head) and A- (body)."""

from __future__ import annotations

import numpy as np

from . import kernels
from .equiv import Verdict, es_table, joint_signature
from .ht import (
    HTInterpretation, InterpretationSet, Tag, as_theory, model_table, subsets,
)
from .syntax import Alphabets, Signature


class HyperSet(InterpretationSet):
    """Hyperequivalence interpretations; here parts lie within A+ and A-."""

    def __init__(self, table, signature: Signature, alphabets: Alphabets):
        super().__init__(table, signature, Tag.E_HYPER)
        self.alphabets = alphabets


def _sig_and_es(theory, signature, ab: Alphabets, limit=None):
    theory = as_theory(theory)
    sig = signature or joint_signature(theory, extra=ab.atoms)
    missing = (theory.atoms() | ab.atoms) - set(sig)
    if missing:
        raise ValueError(f"atoms {sorted(missing)} not in signature")
    return sig, es_table(model_table(theory, sig, limit))


def _es_lookup(theory, signature, ab):
    sig, es = _sig_and_es(theory, signature, ab)
    flat = es.reshape(-1)
    n = len(sig)
    return sig, lambda x, y: bool(flat[kernels.encode(x, y, n)])


def is_aplus_total(y, theory, ab: Alphabets, signature=None) -> bool:
    """(X', Y) is an equivalence interpretation for all Y|A+ <= X' <= Y."""
    sig, in_es = _es_lookup(theory, signature, ab)
    ymask = y if isinstance(y, int) else sig.mask(y)
    base = ymask & sig.mask(ab.a_plus & set(sig))
    return all(in_es(base | x, ymask) for x in subsets(ymask & ~base))


def is_aplus_closed(m, theory, ab: Alphabets, signature=None) -> bool:
    """(X', Y) in E_s for every X' <= Y with X|A+ <= X'|A+ and X'|A- <= X|A-."""
    sig, in_es = _es_lookup(theory, signature, ab)
    if isinstance(m, HTInterpretation):
        x, y = sig.mask(m.here_atoms), sig.mask(m.there_atoms)
    else:
        x, y = sig.mask(m[0]), sig.mask(m[1])
    plus = sig.mask(ab.a_plus)
    minus = sig.mask(ab.a_minus)
    for xp in subsets(y):
        if (x & plus) & ~xp == 0 and (xp & minus) & ~x == 0:
            if not in_es(xp, y):
                return False
    return True


def _axis_modes(sig: Signature, ab: Alphabets) -> list[int]:
    modes = []
    for a in sig:
        p, m = a in ab.a_plus, a in ab.a_minus
        if p and m:
            modes.append(kernels.MODE_FIXED)
        elif p:
            modes.append(kernels.MODE_UP)
        elif m:
            modes.append(kernels.MODE_DOWN)
        else:
            modes.append(kernels.MODE_FREE)
    return modes


def hyper_table(es: np.ndarray, sig: Signature, ab: Alphabets) -> np.ndarray:
    n = len(sig)
    plus_axes = [i for i, a in enumerate(sig) if a in ab.a_plus]
    proj_axes = [i for i, a in enumerate(sig) if a in ab.atoms]
    closed = kernels.orthant_closure(es, [kernels.MODE_UP] * n)
    aplus_total = kernels.at_projected(closed, plus_axes)
    aplus_closed = kernels.orthant_closure(es, _axis_modes(sig, ab))
    return aplus_total & kernels.exists_projection(aplus_closed, proj_axes)


def hyper_interpretations(theory, signature=None, ab: Alphabets = Alphabets(),
                          limit=None) -> HyperSet:
    theory = as_theory(theory)
    sig = signature or joint_signature(theory, extra=ab.atoms)
    _, es = _sig_and_es(theory, sig, ab, limit)
    return HyperSet(hyper_table(es, sig, ab), sig, ab)


def decide_hyper(t1, t2, ab: Alphabets, extra_atoms=(), signature=None,
                 limit=None) -> Verdict:
    t1, t2 = as_theory(t1), as_theory(t2)
    sig = signature or joint_signature(t1, t2, extra=set(extra_atoms) | ab.atoms)
    h1 = hyper_interpretations(t1, sig, ab, limit)
    h2 = hyper_interpretations(t2, sig, ab, limit)
    sizes = (len(h1), len(h2))
    if h1 == h2:
        return Verdict(True, notion="hyper", signature=sig, sizes=sizes)
    witness = h1.symmetric_difference(h2).least()
    side = 1 if witness in h1 else 2
    return Verdict(False, witness, side, "hyper", sig, sizes)
