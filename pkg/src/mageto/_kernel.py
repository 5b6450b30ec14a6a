"""Compiled inner loops.

Everything here works on uint64 words; 32-bit cells are kept in the low half
and every result is masked back to the cell width.
"""

import numpy as np
from numba import njit

U64 = np.uint64


@njit(cache=True)
def ct_greater(x, y, top):
    # x > y  <=>  borrow out of (y - x); Hacker's Delight 2-12, no branches.
    # `top` is the index of the most significant bit of the word width.
    lt = (~y & x) | ((~y | x) & (y - x))
    bit = (lt >> top) & U64(1)
    return U64(0) - bit


@njit(cache=True)
def advance(cells, carry, d, mask, top, pos, n, branchless,
            out_cells, out_carries, out_bits):
    """Run `n` serial cell updates starting at cell `pos`.

    Records the updated cell, the carry used to update it (before `+ d`) and
    the branch bit for every step. Returns the carry left for the next step.
    """
    a = cells.shape[0]
    i = pos
    for j in range(n):
        i1 = i + 1
        if i1 >= a:
            i1 -= a
        i2 = i1 + 1
        if i2 >= a:
            i2 -= a
        i3 = i2 + 1
        if i3 >= a:
            i3 -= a
        a1 = cells[i1]
        a2 = cells[i2]
        a3 = cells[i3]
        if branchless:
            gt = ct_greater(a2, a3, top) & mask
            v = a1
            w = ~a1 & mask
            carry ^= (v & gt) | (w & ~gt)
            bit = (~gt) & U64(1)
        else:
            if a2 > a3:
                carry ^= a1
                bit = U64(0)
            else:
                carry ^= ~a1 & mask
                bit = U64(1)
        new = cells[i] ^ carry
        cells[i] = new
        out_cells[j] = new
        out_carries[j] = carry
        out_bits[j] = np.uint8(bit)
        carry = (carry + d) & mask
        i += 1
        if i == a:
            i = 0
    return carry


@njit(cache=True)
def ct_greater_mismatches(bits):
    """Exhaustively compare ct_greater with `>` over all pairs of `bits`-bit words."""
    top = U64(bits - 1)
    mask = (U64(1) << U64(bits)) - U64(1)
    limit = 1 << bits
    bad = 0
    for xi in range(limit):
        x = U64(xi)
        for yi in range(limit):
            y = U64(yi)
            g = ct_greater(x, y, top) & mask
            if (g == mask) != (x > y) or (g != 0 and g != mask):
                bad += 1
    return bad


@njit(cache=True)
def random_update_mismatches(n, seed, mask, top, d):
    """Apply both update modes to `n` random neighbourhoods; count disagreements."""
    np.random.seed(seed)
    bad = 0
    cells_a = np.zeros(4, dtype=np.uint64)
    cells_b = np.zeros(4, dtype=np.uint64)
    oc = np.zeros(1, dtype=np.uint64)
    ok = np.zeros(1, dtype=np.uint64)
    ob = np.zeros(1, dtype=np.uint8)
    oc2 = np.zeros(1, dtype=np.uint64)
    ok2 = np.zeros(1, dtype=np.uint64)
    ob2 = np.zeros(1, dtype=np.uint8)
    for _ in range(n):
        for k in range(4):
            w = (U64(np.random.randint(0, 1 << 32)) << U64(32)) | U64(np.random.randint(0, 1 << 32))
            # bias towards ties and near-ties in the compared pair
            if k == 3 and np.random.randint(0, 4) == 0:
                w = cells_a[2] ^ U64(np.random.randint(0, 2))
            cells_a[k] = w & mask
            cells_b[k] = w & mask
        c = ((U64(np.random.randint(0, 1 << 32)) << U64(32)) | U64(np.random.randint(0, 1 << 32))) & mask
        r1 = advance(cells_a, c, d, mask, top, 0, 1, False, oc, ok, ob)
        r2 = advance(cells_b, c, d, mask, top, 0, 1, True, oc2, ok2, ob2)
        if r1 != r2 or oc[0] != oc2[0] or ok[0] != ok2[0] or ob[0] != ob2[0]:
            bad += 1
    return bad


@njit(cache=True)
def ct_greater_random_mismatches(n, bits, seed):
    """ct_greater against `>` on `n` random pairs of `bits`-bit words."""
    np.random.seed(seed)
    top = U64(bits - 1)
    mask = U64(0xFFFFFFFFFFFFFFFF) >> U64(64 - bits)
    bad = 0
    for k in range(n):
        x = ((U64(np.random.randint(0, 1 << 32)) << U64(32)) | U64(np.random.randint(0, 1 << 32))) & mask
        y = ((U64(np.random.randint(0, 1 << 32)) << U64(32)) | U64(np.random.randint(0, 1 << 32))) & mask
        if k % 3 == 0:
            # equal or nearly equal operands
            y = x ^ (U64(np.random.randint(0, 4)) & mask)
        g = ct_greater(x, y, top) & mask
        if (g == mask) != (x > y) or (g != 0 and g != mask):
            bad += 1
    return bad
