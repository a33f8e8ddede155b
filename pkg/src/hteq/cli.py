"""Command-line interface.

Exit codes: 0 equivalent (or success), 1 not equivalent or validation
discrepancy, 2 usage or parse error, 3 a size bound was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, kernels
from .equiv import (
    EquivNotion, characteristic_set, decide_equivalence, dual_theory,
    gamma_phi, joint_signature, tau_epsilon,
)
from .errors import BoundError, HteqError, ParseError
from .ht import as_theory, countermodels, equilibrium_models, ht_models
from .hyper import decide_hyper, hyper_interpretations
from .syntax import (
    Alphabets, Signature, format_formula, format_theory, natural_key,
    parse_program, parse_theory,
)

EXIT_EQUIVALENT, EXIT_DIFFERENT, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
SCHEMA_VERSION = "hteq-report/1"
MODES = ("classical", "answer-set", "strong", "uniform", "hyper")
MODEL_SETS = ("models", "countermodels", "equilibrium", "Es", "Eu", "Ea", "Ec",
              "Cs", "Cu", "Ca", "Cc", "hyper")


class UsageError(HteqError):
    pass


# --------------------------------------------------------------------------
# Input handling

def _split_atoms(text) -> list[str]:
    if not text:
        return []
    return [a.strip() for a in text.split(",") if a.strip()]


def detect_kind(path: str, forced=None) -> str:
    if forced:
        return forced
    return "program" if Path(path).suffix == ".lp" else "theory"


def load(path: str, kind=None, extra_atoms=()):
    kind = detect_kind(path, kind)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        if kind == "program":
            return parse_program(text, extra_atoms), kind
        return parse_theory(text, extra_atoms), kind
    except ParseError as exc:
        raise ParseError(exc.message, exc.line, exc.column, path) from exc


def _alphabets(args, signature: Signature) -> Alphabets:
    def resolve(text):
        if text is None:
            return frozenset()
        if text.strip() == "@all":
            return frozenset(signature)
        return frozenset(_split_atoms(text))
    return Alphabets(resolve(args.aplus), resolve(args.aminus))


def _sorted(names) -> list[str]:
    return sorted(names, key=natural_key)


def _base_report(command: str, args) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool": {"name": "hteq", "version": __version__},
        "command": command,
    }


def _emit(report: dict, args, text_lines):
    if getattr(args, "timing", False):
        report["timing"] = {"seconds": round(time.perf_counter() - args._start, 6),
                            "backend": kernels.BACKEND}
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        for line in text_lines:
            print(line)
        if "timing" in report:
            print(f"time: {report['timing']['seconds']:.3f}s ({kernels.BACKEND})")


# --------------------------------------------------------------------------
# Commands

def cmd_check(args) -> int:
    if len(args.files) != 2:
        raise UsageError("check needs exactly two input files")
    extra = _split_atoms(args.extra_atoms)
    (t1, k1), (t2, k2) = (load(f, args.kind, extra) for f in args.files)
    if k1 != k2:
        raise UsageError("inputs must be of the same kind (theory or program)")
    th1, th2 = as_theory(t1), as_theory(t2)
    base = joint_signature(th1, th2, extra=extra)
    report = _base_report("check", args)
    report["mode"] = args.mode
    report["inputs"] = [{"path": f, "kind": k1} for f in args.files]
    if args.mode == "hyper":
        ab = _alphabets(args, base)
        sig = joint_signature(th1, th2, extra=set(extra) | ab.atoms)
        verdict = decide_hyper(th1, th2, ab, signature=sig, limit=args.max_atoms)
        report["aplus"] = _sorted(ab.a_plus)
        report["aminus"] = _sorted(ab.a_minus)
    else:
        ab = None
        sig = base
        verdict = decide_equivalence(th1, th2, args.mode, signature=sig, limit=args.max_atoms)
    report["signature"] = list(sig)
    report["verdict"] = "equivalent" if verdict.equivalent else "not equivalent"
    report["sizes"] = list(verdict.sizes)
    lines = [report["verdict"]]
    if not verdict.equivalent:
        report["witness"] = verdict.witness.to_json()
        report["witness_side"] = verdict.witness_side
        lines.append(f"witness: {verdict.witness} (in the characteristic set of input "
                     f"{verdict.witness_side})")
        context = _context_for(th1, th2, args, sig, ab)
        if context is not None:
            report["context"] = context.to_json()
            shown = ", ".join(format_formula(f) for f in context.context.formulas)
            answer = ",".join(_sorted(context.answer_set))
            lines.append(f"context: {{{shown}}} gives answer set {{{answer}}} "
                         f"only for input {context.side}")
    _emit(report, args, lines)
    return EXIT_EQUIVALENT if verdict.equivalent else EXIT_DIFFERENT


def _context_for(t1, t2, args, sig, ab):
    from .oracle import pool_for, search_counterexample
    if args.mode == "classical" or args.no_context:
        return None
    try:
        pool = pool_for(args.mode, sig, args.k_extra, args.budget, ab)
    except BoundError:
        return None
    return search_counterexample(t1, t2, pool)


def cmd_models(args) -> int:
    extra = _split_atoms(args.extra_atoms)
    obj, kind = load(args.file, args.kind, extra)
    theory = as_theory(obj)
    sig = theory.signature
    lim = args.max_atoms
    which = args.which
    if which == "models":
        result = ht_models(theory, sig, lim)
    elif which == "countermodels":
        result = countermodels(theory, sig, lim)
    elif which == "equilibrium":
        result = equilibrium_models(theory, sig, lim)
    elif which == "hyper":
        ab = _alphabets(args, sig)
        sig = joint_signature(theory, extra=set(extra) | ab.atoms)
        result = hyper_interpretations(theory, sig, ab, lim)
    else:
        family, code = which[0], which[1]
        result = characteristic_set(theory, sig, EquivNotion.parse(code), family, lim)
    members = list(result)
    report = _base_report("models", args)
    report.update({
        "inputs": [{"path": args.file, "kind": kind}],
        "set": which,
        "signature": list(sig),
        "members": [m.to_json() for m in members],
        "size": len(members),
    })
    _emit(report, args, [str(m) for m in members])
    return EXIT_EQUIVALENT


def cmd_transform(args) -> int:
    obj, kind = load(args.file, args.kind, _split_atoms(args.extra_atoms))
    theory = as_theory(obj)
    if args.to == "to-theory":
        text = format_theory(theory)
    elif args.to == "tau":
        text = format_theory(tau_epsilon(theory.signature))
    elif args.to == "dual":
        text = format_formula(dual_theory(theory, theory.signature)) + ".\n"
    else:
        if not theory.formulas:
            raise UsageError("gamma-phi needs a nonempty theory")
        if not 1 <= args.phi <= len(theory.formulas):
            raise UsageError(f"--phi must be between 1 and {len(theory.formulas)}")
        phi = theory.formulas[args.phi - 1]
        text = format_theory(gamma_phi(theory, phi, theory.signature))
    report = _base_report("transform", args)
    report.update({"inputs": [{"path": args.file, "kind": kind}],
                   "transform": args.to, "output": text})
    _emit(report, args, [text.rstrip("\n")])
    return EXIT_EQUIVALENT


def cmd_validate(args) -> int:
    from .oracle import NOTIONS, validate
    notions = _split_atoms(args.notions) if args.notions else list(NOTIONS)
    unknown = [n for n in notions if n not in NOTIONS]
    if unknown:
        raise UsageError(f"unknown notions: {', '.join(unknown)}")
    rep = validate(pairs=args.pairs, atoms=args.atoms, seed=args.seed, budget=args.budget,
                   k_extra=args.k_extra, notions=notions, mutate=args.mutate,
                   jobs=args.jobs)
    report = _base_report("validate", args)
    report["seed"] = args.seed
    report.update(rep.to_json())
    lines = []
    for notion, row in rep.summary().items():
        lines.append(f"{notion:>11}: {row['checked']} pairs, {row['equivalent']} equivalent, "
                     f"{row['not_equivalent']} not equivalent, "
                     f"{row['confirmed_by_context']} confirmed by a context, "
                     f"{row['discrepancies']} discrepancies")
    lines += rep.hstruct_problems
    lines.append("ok" if rep.ok else f"FAILED: {len(rep.discrepancies)} discrepancies")
    _emit(report, args, lines)
    return EXIT_EQUIVALENT if rep.ok else EXIT_DIFFERENT


def cmd_check_ng(args) -> int:
    from .nonground import decide_uniform_nonground, parse_ng_program
    if len(args.files) != 2:
        raise UsageError("check-ng needs exactly two input files")
    programs = []
    for f in args.files:
        try:
            text = Path(f).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {f}: {exc.strerror}") from exc
        try:
            programs.append(parse_ng_program(text))
        except ParseError as exc:
            raise ParseError(exc.message, exc.line, exc.column, f) from exc
    verdict = decide_uniform_nonground(*programs, k=args.extra_consts,
                                       limit=args.max_ground_atoms)
    report = _base_report("check-ng", args)
    report.update({
        "mode": args.mode,
        "inputs": [{"path": f, "kind": "nonground"} for f in args.files],
        "extra_consts": args.extra_consts,
        "universes": [list(u.constants) for u in verdict.searched],
        "verdict": "equivalent" if verdict.equivalent else "not equivalent",
        "note": "equivalence is established only for the searched universes",
    })
    lines = [report["verdict"],
             "searched universes: " + " ".join(str(u) for u in verdict.searched)]
    if not verdict.equivalent:
        report["universe"] = list(verdict.universe.constants)
        report["witness"] = verdict.witness.to_json()
        report["witness_side"] = verdict.witness_side
        lines.append(f"universe {verdict.universe}: {verdict.witness} is a total or maximal "
                     f"non-total model of input {verdict.witness_side} only")
    else:
        lines.append(report["note"])
    _emit(report, args, lines)
    return EXIT_EQUIVALENT if verdict.equivalent else EXIT_DIFFERENT


# --------------------------------------------------------------------------
# Argument parsing

def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hteq",
        description="Decide classical, answer-set, strong, uniform and relativized "
                    "hyperequivalence of propositional theories and programs.")
    parser.add_argument("--version", action="version", version=f"hteq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock time to the output (reports stop being byte-stable)")
    common.add_argument("--max-atoms", type=int, default=None,
                        help="signature size limit (default: $HTEQ_MAX_ATOMS or 16)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--kind", choices=("theory", "program"),
                        help="input kind (default: .lp files are programs, others theories)")
    inputs.add_argument("--extra-atoms", default="",
                        help="comma-separated atoms added to the signature")
    inputs.add_argument("--aplus", default=None,
                        help="A+ for hyperequivalence: comma list or @all")
    inputs.add_argument("--aminus", default=None,
                        help="A- for hyperequivalence: comma list or @all")

    pool = argparse.ArgumentParser(add_help=False)
    pool.add_argument("--budget", type=int, default=_env_int("HTEQ_BUDGET", 4),
                      help="max formulas per hyper context (default: $HTEQ_BUDGET or 4)")
    pool.add_argument("--k-extra", type=int, default=_env_int("HTEQ_K_EXTRA", 1),
                      help="fresh atoms in uniform contexts (default: $HTEQ_K_EXTRA or 1)")

    p = sub.add_parser("check", parents=[common, inputs, pool],
                       help="decide equivalence of two inputs")
    p.add_argument("files", nargs="+")
    p.add_argument("--mode", choices=MODES, default="strong")
    p.add_argument("--no-context", action="store_true",
                   help="skip the search for a distinguishing context")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("models", parents=[common, inputs],
                       help="list models or a characteristic set")
    p.add_argument("file")
    p.add_argument("--which", choices=MODEL_SETS, default="models")
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("transform", parents=[common, inputs],
                       help="print a derived theory or formula")
    p.add_argument("file")
    p.add_argument("--to", choices=("dual", "gamma-phi", "tau", "to-theory"), required=True)
    p.add_argument("--phi", type=int, default=1,
                   help="1-based index of the formula used by gamma-phi")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("validate", parents=[common, pool],
                       help="cross-check the decisions against the context oracle")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--atoms", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--notions", default="",
                   help="comma list from " + ",".join(MODES) + " (default: all)")
    p.add_argument("--mutate", action="store_true",
                   help="invert every decision (harness self-test)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check-ng", parents=[common],
                       help="uniform equivalence of non-ground programs")
    p.add_argument("files", nargs="+")
    p.add_argument("--mode", choices=("uniform",), default="uniform")
    p.add_argument("--extra-consts", type=int, default=_env_int("HTEQ_EXTRA_CONSTS", 2),
                   help="fresh constants added to the Herbrand universe (default 2)")
    p.add_argument("--max-ground-atoms", type=int, default=None,
                   help="ground atom base limit (default: $HTEQ_MAX_GROUND_ATOMS or 16)")
    p.set_defaults(func=cmd_check_ng)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._start = time.perf_counter()
    try:
        return args.func(args)
    except BoundError as exc:
        print(f"hteq: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ParseError, UsageError) as exc:
        print(f"hteq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"hteq: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
