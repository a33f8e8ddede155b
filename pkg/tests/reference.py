"""Literal set-based reference implementations used as test oracles.

Everything here works on frozensets of atom names and follows the textbook
definitions directly, without masks, tables or kernels.
"""

from itertools import chain, combinations

from hteq.syntax import And, Atom, Bottom, Or


def powerset(atoms):
    atoms = sorted(atoms)
    return [frozenset(c) for c in chain.from_iterable(
        combinations(atoms, k) for k in range(len(atoms) + 1))]


def interpretations(atoms):
    out = []
    for y in powerset(atoms):
        for x in powerset(y):
            out.append((x, y))
    return out


def classical(f, y):
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return f.name in y
    if isinstance(f, And):
        return classical(f.left, y) and classical(f.right, y)
    if isinstance(f, Or):
        return classical(f.left, y) or classical(f.right, y)
    return (not classical(f.antecedent, y)) or classical(f.consequent, y)


def here_there(f, x, y):
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return f.name in x
    if isinstance(f, And):
        return here_there(f.left, x, y) and here_there(f.right, x, y)
    if isinstance(f, Or):
        return here_there(f.left, x, y) or here_there(f.right, x, y)
    here = (not here_there(f.antecedent, x, y)) or here_there(f.consequent, x, y)
    return here and classical(f, y)


def models(formulas, atoms):
    return {(x, y) for x, y in interpretations(atoms)
            if all(here_there(f, x, y) for f in formulas)}


def countermodels(formulas, atoms):
    return set(interpretations(atoms)) - models(formulas, atoms)


def equivalence_interpretations(formulas, atoms):
    ms = models(formulas, atoms)
    out = set()
    for x, y in interpretations(atoms):
        if x == y and (x, y) in ms:
            out.add((x, y))
        elif x != y and (y, y) in ms and (x, y) not in ms:
            out.add((x, y))
    return out


def total_closed(m, s):
    x, y = m
    return x == y and all((xp, y) in s for xp in powerset(y))


def closed(m, s):
    x, y = m
    return all((xp, y) in s for xp in powerset(y) if x <= xp)


def there_closed(m, s):
    x, y = m
    return (y, y) not in s and all((xp, y) in s for xp in powerset(y) if x <= xp and xp != y)


def characteristic(formulas, atoms, name):
    cs = countermodels(formulas, atoms)
    es = equivalence_interpretations(formulas, atoms)
    if name == "C_s":
        return cs
    if name == "C_c":
        return {m for m in cs if m[0] == m[1]}
    # a total (Y, Y) is there-closed in C_s exactly when it is a model
    if name == "C_u":
        return {m for m in interpretations(atoms) if there_closed(m, cs)}
    if name == "C_a":
        return {m for m in interpretations(atoms) if not m[0] and there_closed(m, cs)}
    if name == "E_s":
        return es
    if name == "E_c":
        return {m for m in es if m[0] == m[1]}
    if name == "E_u":
        return {m for m in es if closed(m, es)}
    if name == "E_a":
        return {m for m in es if total_closed(m, es)}
    raise KeyError(name)


def equilibrium(formulas, atoms):
    ms = models(formulas, atoms)
    return {y for x, y in ms if x == y
            and not any((xp, y) in ms for xp in powerset(y) if xp != y)}


def aplus_total(y, es, plus):
    base = y & plus
    return all((xp, y) in es for xp in powerset(y) if base <= xp)


def aplus_closed(m, es, plus, minus):
    x, y = m
    return all((xp, y) in es for xp in powerset(y)
               if (x & plus) <= (xp & plus) and (xp & minus) <= (x & minus))


def hyper(formulas, atoms, plus, minus):
    es = equivalence_interpretations(formulas, atoms)
    keep = plus | minus
    out = set()
    for y in powerset(atoms):
        if not aplus_total(y, es, plus):
            continue
        for xp in powerset(y):
            if aplus_closed((xp, y), es, plus, minus):
                out.add((xp & keep, y))
    return out


# programs -----------------------------------------------------------------

def rule_holds(rule, i):
    body = rule.body_pos <= i and not (rule.body_neg & i)
    head = bool(rule.head_pos & i) or not (rule.head_neg <= i)
    return not body or head


def program_answer_sets(rules, atoms):
    out = []
    for i in powerset(atoms):
        reduct = [(r.head_pos, r.body_pos) for r in rules
                  if r.head_neg <= i and not (r.body_neg & i)]

        def sat(j):
            return all(not b <= j or bool(h & j) for h, b in reduct)

        if sat(i) and not any(sat(j) for j in powerset(i) if j != i):
            out.append(i)
    return set(out)
