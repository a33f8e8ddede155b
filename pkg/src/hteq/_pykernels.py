"""Pure numpy implementation of the table kernels.

Interpretation tables are boolean arrays of shape ``(3,) * n``; axis ``i``
holds the state of atom ``i``: 0 = false there, 1 = true there only,
2 = true here (and there).
"""

from functools import lru_cache

import numpy as np

OP_BOT, OP_ATOM, OP_AND, OP_OR, OP_IMPL = 0, 1, 2, 3, 4

MODE_FIXED, MODE_UP, MODE_DOWN, MODE_FREE = 0, 1, 2, 3


@lru_cache(maxsize=None)
def _atom_tables(i, n):
    shape = [1] * n
    shape[i] = 3
    st = np.arange(3, dtype=np.int8).reshape(shape)
    here, there = st == 2, st >= 1
    here.flags.writeable = False
    there.flags.writeable = False
    return here, there


def ht_table(code, n):
    """HT satisfaction of a postfix formula for every interpretation.

    ``code`` is an ``(m, 2)`` int array of (opcode, argument) pairs.
    Returns a flat uint8 array of length ``3**n`` in C order.
    """
    shape = (3,) * n
    here_stack = []
    there_stack = []
    false = np.zeros((1,) * n, dtype=bool)
    for op, arg in np.asarray(code).reshape(-1, 2).tolist():
        if op == OP_BOT:
            here_stack.append(false)
            there_stack.append(false)
        elif op == OP_ATOM:
            here, there = _atom_tables(arg, n)
            here_stack.append(here)
            there_stack.append(there)
        else:
            if len(here_stack) < 2:
                raise ValueError("malformed formula code")
            h2, t2 = here_stack.pop(), there_stack.pop()
            h1, t1 = here_stack.pop(), there_stack.pop()
            if op == OP_AND:
                here_stack.append(h1 & h2)
                there_stack.append(t1 & t2)
            elif op == OP_OR:
                here_stack.append(h1 | h2)
                there_stack.append(t1 | t2)
            elif op == OP_IMPL:
                t = ~t1 | t2
                there_stack.append(t)
                here_stack.append((~h1 | h2) & t)
            else:
                raise ValueError(f"bad opcode {op}")
    if len(here_stack) != 1:
        raise ValueError("malformed formula code")
    out = np.broadcast_to(here_stack[0], shape)
    return np.ascontiguousarray(out, dtype=np.uint8).reshape(-1)


def orthant_closure(table, n, modes):
    """For each (X, Y): AND of ``table`` over all X' reachable per axis mode.

    Mode per atom: fixed (X' agrees with X), up (X' may add the atom when it
    is in Y), down (X' may drop it), free (either).
    """
    g = np.array(table, dtype=bool).reshape((3,) * n)
    for a, mode in enumerate(modes):
        if mode == MODE_FIXED:
            continue
        s1 = (slice(None),) * a + (1,)
        s2 = (slice(None),) * a + (2,)
        if mode == MODE_UP:
            g[s1] &= g[s2]
        elif mode == MODE_DOWN:
            g[s2] &= g[s1]
        elif mode == MODE_FREE:
            both = g[s1] & g[s2]
            g[s1] = both
            g[s2] = both
        else:
            raise ValueError(f"bad mode {mode}")
    return g.reshape(-1).astype(np.uint8)
