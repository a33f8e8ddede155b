"""Compare the compiled and numpy kernel backends (and the tree walker).

    python benchmarks/bench_kernels.py [--atoms 6 8 10 12] [--repeat 5]
"""

import argparse
import random
import timeit

import numpy as np

from hteq import kernels
from hteq.corpus import atom_names, random_theory
from hteq.ht import enumerate_ht, ht_sat_theory


def _best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--atoms", type=int, nargs="+", default=[6, 8, 10, 12])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--formulas", type=int, default=6)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--walker-max", type=int, default=8,
                        help="largest signature timed with the tree walker")
    args = parser.parse_args(argv)

    found = kernels.backends()
    names = sorted(found)
    print(f"backends: {', '.join(names)}")
    header = f"{'n':>3} {'kernel':<16}" + "".join(f"{b:>12}" for b in names) + f"{'walker':>12}"
    print(header)
    rng = random.Random(args.seed)
    for n in args.atoms:
        atoms = atom_names(n, "x")
        theory = random_theory(rng, atoms, size=args.formulas, depth=4)
        index = {a: i for i, a in enumerate(atoms)}
        code = kernels.compile_theory(theory.formulas, index)
        tables = {b: found[b].ht_table(code, n) for b in names}
        ref = tables[names[0]]
        assert all(np.array_equal(ref, t) for t in tables.values())

        row = [_best(lambda b=b: found[b].ht_table(code, n), args.repeat) for b in names]
        walker = ""
        if n <= args.walker_max:
            members = list(enumerate_ht(theory.signature, limit=n))
            t = _best(lambda: [ht_sat_theory(m, theory) for m in members], 1)
            walker = f"{t * 1e3:10.2f}ms"
        print(f"{n:>3} {'ht_table':<16}" + "".join(f"{t * 1e3:10.2f}ms" for t in row)
              + f"{walker:>12}")

        modes = np.array([rng.randrange(4) for _ in range(n)], dtype=np.int64)
        closures = [found[b].orthant_closure(ref.astype(np.uint8), n, modes) for b in names]
        assert all(np.array_equal(closures[0], c) for c in closures)
        row = [_best(lambda b=b: found[b].orthant_closure(ref.astype(np.uint8), n, modes),
                     args.repeat) for b in names]
        print(f"{n:>3} {'orthant_closure':<16}" + "".join(f"{t * 1e3:10.2f}ms" for t in row))


if __name__ == "__main__":
    main()
