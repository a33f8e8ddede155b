"""Interpretation-table kernels with backend selection.

The compiled extension ``hteq._ckernels`` is used when it was built and
``HTEQ_PURE_PYTHON`` is unset; otherwise the numpy fallback runs. Both
backends expose ``ht_table`` and ``orthant_closure`` with identical results.

Tables are flat uint8 arrays of length ``3**n`` in C order over the axes of
shape ``(3,) * n``; the digit of atom ``i`` is 0 (false), 1 (true there only)
or 2 (true here).
"""

import os

import numpy as np

from . import _pykernels
from .syntax import And, Atom, Bottom, Impl, Or, TOP

OP_BOT, OP_ATOM, OP_AND, OP_OR, OP_IMPL = 0, 1, 2, 3, 4
MODE_FIXED, MODE_UP, MODE_DOWN, MODE_FREE = 0, 1, 2, 3


def _load():
    if os.environ.get("HTEQ_PURE_PYTHON"):
        return _pykernels, "python"
    try:
        from . import _ckernels
    except ImportError:
        return _pykernels, "python"
    return _ckernels, "cython"


_impl, BACKEND = _load()


def backends():
    """Available backend modules keyed by name."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found


def compile_formula(f, index) -> np.ndarray:
    """Postfix (opcode, arg) code for ``f``; ``index`` maps atom name to axis."""
    code = []
    _postfix(f, index, code)
    return np.asarray(code, dtype=np.int64).reshape(-1, 2)


def _postfix(f, index, code):
    stack = [(f, False)]
    while stack:
        node, done = stack.pop()
        if isinstance(node, Bottom):
            code.append((OP_BOT, 0))
        elif isinstance(node, Atom):
            code.append((OP_ATOM, index[node.name]))
        elif done:
            code.append((_OPS[type(node)], 0))
        else:
            stack.append((node, True))
            if isinstance(node, Impl):
                stack.append((node.consequent, False))
                stack.append((node.antecedent, False))
            else:
                stack.append((node.right, False))
                stack.append((node.left, False))


_OPS = {And: OP_AND, Or: OP_OR, Impl: OP_IMPL}


def compile_theory(formulas, index) -> np.ndarray:
    formulas = list(formulas) or [TOP]
    code = []
    for f in formulas:
        _postfix(f, index, code)
    code += [(OP_AND, 0)] * (len(formulas) - 1)
    return np.asarray(code, dtype=np.int64).reshape(-1, 2)


def ht_table(code, n, backend=None):
    impl = _impl if backend is None else backends()[backend]
    return np.asarray(impl.ht_table(code, n), dtype=bool).reshape((3,) * n)


def orthant_closure(table, modes, backend=None):
    impl = _impl if backend is None else backends()[backend]
    n = table.ndim
    flat = np.ascontiguousarray(table, dtype=np.uint8).reshape(-1)
    out = impl.orthant_closure(flat, n, list(modes))
    return np.asarray(out, dtype=bool).reshape((3,) * n)


# --------------------------------------------------------------------------
# Cheap table transforms shared by both backends

def _slices(a):
    return (slice(None),) * a + (1,), (slice(None),) * a + (2,)


def at_total(table):
    """Value at (Y, Y) broadcast to every (X, Y)."""
    g = table.copy()
    for a in range(g.ndim):
        s1, s2 = _slices(a)
        g[s1] = g[s2]
    return g


def at_empty_here(table):
    """Value at (empty, Y) broadcast to every (X, Y)."""
    g = table.copy()
    for a in range(g.ndim):
        s1, s2 = _slices(a)
        g[s2] = g[s1]
    return g


def at_projected(table, keep_axes):
    """Value at (Y restricted to ``keep_axes``, Y) for every (X, Y)."""
    keep = set(keep_axes)
    g = table.copy()
    for a in range(g.ndim):
        s1, s2 = _slices(a)
        if a in keep:
            g[s1] = g[s2]
        else:
            g[s2] = g[s1]
    return g


def exists_projection(table, keep_axes):
    """(X, Y) marked iff some X' with X'|keep = X is marked.

    Entries whose here part uses an atom outside ``keep_axes`` are cleared.
    """
    keep = set(keep_axes)
    g = table.copy()
    for a in range(g.ndim):
        if a in keep:
            continue
        s1, s2 = _slices(a)
        g[s1] = g[s1] | g[s2]
        g[s2] = False
    return g


def total_mask(n):
    """(X, Y) with X = Y."""
    g = np.ones((3,) * n, dtype=bool)
    for a in range(n):
        g[_slices(a)[0]] = False
    return g


def empty_here_mask(n):
    """(X, Y) with X empty."""
    g = np.ones((3,) * n, dtype=bool)
    for a in range(n):
        g[_slices(a)[1]] = False
    return g


def decode(flat_indices, n):
    """Flat table indices to (here_mask, there_mask) integer arrays."""
    idx = np.asarray(flat_indices, dtype=np.int64)
    here = np.zeros(idx.shape, dtype=np.int64)
    there = np.zeros(idx.shape, dtype=np.int64)
    rest = idx.copy()
    for a in range(n - 1, -1, -1):
        d = rest % 3
        rest //= 3
        here |= (d == 2).astype(np.int64) << a
        there |= (d >= 1).astype(np.int64) << a
    return here, there


def encode(here, there, n):
    idx = 0
    for a in range(n):
        d = 2 if here >> a & 1 else (1 if there >> a & 1 else 0)
        idx = idx * 3 + d
    return idx
