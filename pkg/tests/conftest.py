import os

from hypothesis import HealthCheck, settings, strategies as st

from hteq.syntax import BOT, And, Atom, Impl, Or, Rule, Signature, Theory, neg

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def formulas(atoms=("a", "b", "c"), max_leaves=8):
    leaves = st.one_of(st.sampled_from([Atom(a) for a in atoms]), st.just(BOT))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Impl, sub, sub),
            st.builds(neg, sub),
        ),
        max_leaves=max_leaves,
    )


def factual_formulas(atoms=("a", "b", "c"), max_leaves=8):
    leaves = st.one_of(st.sampled_from([Atom(a) for a in atoms]), st.just(BOT))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(And, sub, sub), st.builds(Or, sub, sub),
                              st.builds(neg, sub)),
        max_leaves=max_leaves,
    )


def theories(atoms=("a", "b", "c"), min_size=0, max_size=3, max_leaves=6):
    sig = Signature(atoms)
    return st.lists(formulas(atoms, max_leaves), min_size=min_size, max_size=max_size).map(
        lambda fs: Theory.of(fs, sig))


def atom_sets(atoms):
    return st.frozensets(st.sampled_from(list(atoms)))


def rules(atoms=("a", "b", "c")):
    parts = [atom_sets(atoms) for _ in range(4)]
    return st.tuples(*parts).filter(any).map(lambda p: Rule(*p))


def interpretation_pairs(atoms):
    """(X, Y) as frozensets with X inside Y."""
    return atom_sets(atoms).flatmap(
        lambda y: st.tuples(st.frozensets(st.sampled_from(sorted(y))) if y else
                            st.just(frozenset()), st.just(y)))


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
