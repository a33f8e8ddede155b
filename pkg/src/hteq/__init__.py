"""Equivalence checking for propositional theories and disjunctive programs
under answer-set semantics, via the logic of here-and-there."""

from .equiv import (
    EquivNotion, Verdict, characteristic_set, decide_equivalence, dual_theory,
    equivalence_interpretations, gamma_phi, membership_via_gamma, tau_epsilon,
)
from .errors import BoundError, HteqError, ParseError
from .ht import (
    HTInterpretation, InterpretationSet, answer_sets_program, answer_sets_theory,
    classical_sat, countermodels, enumerate_ht, equilibrium_models, ht_models,
    ht_sat, reduct,
)
from .hyper import decide_hyper, hyper_interpretations
from .kernels import BACKEND
from .syntax import (
    Alphabets, Atom, Program, Rule, Signature, Theory, atom_polarities,
    format_formula, format_program, format_theory, is_apan_theory, is_factual,
    parse_formula, parse_program, parse_theory, rule_to_formula,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabets", "Atom", "BACKEND", "BoundError", "EquivNotion", "HTInterpretation",
    "HteqError", "InterpretationSet", "ParseError", "Program", "Rule", "Signature",
    "Theory", "Verdict", "answer_sets_program", "answer_sets_theory",
    "atom_polarities", "characteristic_set", "classical_sat", "countermodels",
    "decide_equivalence", "decide_hyper", "dual_theory", "enumerate_ht",
    "equilibrium_models", "equivalence_interpretations", "format_formula",
    "format_program", "format_theory", "gamma_phi", "ht_models", "ht_sat",
    "hyper_interpretations", "is_apan_theory", "is_factual", "membership_via_gamma",
    "parse_formula", "parse_program", "parse_theory", "reduct", "rule_to_formula",
    "tau_epsilon",
]
