# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels; same contract as ``hteq._pykernels``.

``ht_table`` is bit-sliced: the table is cut into blocks that span the last
``INNER`` axes. Inside a block the here/there bits of those atoms follow a
fixed pattern that is packed into 64-bit words once, while the leading
atoms are constant across the block. Each opcode then costs one pass over
a few words per block.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint64_t, int64_t

cnp.import_array()

cdef enum:
    MAX_ATOMS = 64
    INNER = 7

OP_BOT, OP_ATOM, OP_AND, OP_OR, OP_IMPL = 0, 1, 2, 3, 4
MODE_FIXED, MODE_UP, MODE_DOWN, MODE_FREE = 0, 1, 2, 3


def _max_depth(ops):
    depth = best = 0
    for op, _ in ops:
        if op <= 1:
            depth += 1
        else:
            depth -= 1
            if depth < 1:
                raise ValueError("malformed formula code")
        best = max(best, depth)
    if depth != 1:
        raise ValueError("malformed formula code")
    return best


def ht_table(code, int n):
    code_arr = np.ascontiguousarray(np.asarray(code, dtype=np.int64).reshape(-1, 2))
    cdef int64_t[:, ::1] ops = code_arr
    cdef Py_ssize_t m = ops.shape[0]
    if n > MAX_ATOMS:
        raise ValueError("too many atoms for the compiled kernel")
    cdef int depth = _max_depth(code_arr.tolist())
    cdef int inner = n if n < INNER else INNER
    cdef int outer_n = n - inner
    cdef Py_ssize_t block = 1, blocks = 1, total
    cdef int i
    for i in range(inner):
        block *= 3
    for i in range(outer_n):
        blocks *= 3
    total = block * blocks
    cdef Py_ssize_t words = (block + 63) // 64

    # packed here/there patterns of the inner atoms within one block
    pat_arr = np.zeros((2 * inner + 1, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] pat = pat_arr
    cdef Py_ssize_t j, w, k
    cdef Py_ssize_t stride
    cdef int digit
    for i in range(inner):
        stride = 1
        for k in range(inner - 1 - i):
            stride *= 3
        for j in range(block):
            digit = (j // stride) % 3
            if digit >= 1:
                pat[2 * i + 1, j >> 6] |= (<uint64_t>1) << (j & 63)
            if digit == 2:
                pat[2 * i, j >> 6] |= (<uint64_t>1) << (j & 63)

    hs_arr = np.zeros((depth, words), dtype=np.uint64)
    ts_arr = np.zeros((depth, words), dtype=np.uint64)
    cdef uint64_t[:, ::1] hs = hs_arr
    cdef uint64_t[:, ::1] ts = ts_arr
    out_arr = np.empty(total, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr

    cdef uint8_t digits[MAX_ATOMS]
    cdef uint64_t xm = 0, ym = 0, bit, hv, tv, h1, t1
    cdef Py_ssize_t b, base, lim
    cdef int sp, a, row
    cdef int64_t op
    for i in range(MAX_ATOMS):
        digits[i] = 0
    with nogil:
        for b in range(blocks):
            sp = 0
            for k in range(m):
                op = ops[k, 0]
                if op == 1:
                    a = <int>ops[k, 1]
                    if a >= outer_n:
                        row = 2 * (a - outer_n)
                        for w in range(words):
                            hs[sp, w] = pat[row, w]
                            ts[sp, w] = pat[row + 1, w]
                    else:
                        bit = (<uint64_t>1) << a
                        hv = <uint64_t>0 - ((xm & bit) != 0)
                        tv = <uint64_t>0 - ((ym & bit) != 0)
                        for w in range(words):
                            hs[sp, w] = hv
                            ts[sp, w] = tv
                    sp += 1
                elif op == 0:
                    for w in range(words):
                        hs[sp, w] = 0
                        ts[sp, w] = 0
                    sp += 1
                else:
                    sp -= 1
                    if op == 2:
                        for w in range(words):
                            hs[sp - 1, w] &= hs[sp, w]
                            ts[sp - 1, w] &= ts[sp, w]
                    elif op == 3:
                        for w in range(words):
                            hs[sp - 1, w] |= hs[sp, w]
                            ts[sp - 1, w] |= ts[sp, w]
                    else:
                        for w in range(words):
                            t1 = ~ts[sp - 1, w] | ts[sp, w]
                            h1 = (~hs[sp - 1, w] | hs[sp, w]) & t1
                            ts[sp - 1, w] = t1
                            hs[sp - 1, w] = h1
            base = b * block
            for w in range(words):
                hv = hs[0, w]
                lim = block - 64 * w
                if lim > 64:
                    lim = 64
                for j in range(lim):
                    out[base + 64 * w + j] = (hv >> j) & 1
            # advance the base-3 counter over the outer atoms
            a = outer_n - 1
            while a >= 0:
                bit = (<uint64_t>1) << a
                if digits[a] == 0:
                    digits[a] = 1
                    ym |= bit
                    break
                elif digits[a] == 1:
                    digits[a] = 2
                    xm |= bit
                    break
                else:
                    digits[a] = 0
                    xm &= ~bit
                    ym &= ~bit
                    a -= 1
    return out_arr


def orthant_closure(table, int n, modes):
    g_arr = np.array(table, dtype=np.uint8).reshape(-1)
    cdef uint8_t[::1] g = g_arr
    cdef Py_ssize_t total = g.shape[0]
    cdef Py_ssize_t stride, outer, inner, lo, hi
    cdef uint8_t v
    cdef int a, mode, j
    for a in range(n):
        mode = modes[a]
        if mode == 0:
            continue
        if mode < 0 or mode > 3:
            raise ValueError(f"bad mode {mode}")
        stride = 1
        for j in range(n - 1 - a):
            stride *= 3
        with nogil:
            outer = 0
            while outer < total:
                lo = outer + stride
                hi = outer + 2 * stride
                if mode == 1:
                    for inner in range(stride):
                        g[lo + inner] &= g[hi + inner]
                elif mode == 2:
                    for inner in range(stride):
                        g[hi + inner] &= g[lo + inner]
                else:
                    for inner in range(stride):
                        v = g[lo + inner] & g[hi + inner]
                        g[lo + inner] = v
                        g[hi + inner] = v
                outer += 3 * stride
    return g_arr
