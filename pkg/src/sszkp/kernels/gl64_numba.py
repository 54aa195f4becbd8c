"""Numba kernels for the Goldilocks field (p = 2^64 - 2^32 + 1).

Element vectors are numpy uint64 arrays of canonical residues.  The 128-bit
products needed by multiplication are assembled from 32-bit limbs; reduction
uses 2^64 = 2^32 - 1 and 2^96 = -1 (mod p).  All kernels are nopython-jitted
with on-disk caching so repeat runs skip compilation.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

P = uint64((1 << 64) - (1 << 32) + 1)
MASK32 = uint64(0xFFFFFFFF)
EPS = uint64(0xFFFFFFFF)  # 2^64 mod p


@njit(cache=True, inline="always")
def _mulmod(a, b):
    a0 = a & MASK32
    a1 = a >> 32
    b0 = b & MASK32
    b1 = b >> 32
    lolo = a0 * b0
    hihi = a1 * b1
    m1 = a1 * b0
    m2 = a0 * b1
    mid = m1 + m2
    carry_mid = uint64(1) if mid < m1 else uint64(0)
    xlo = lolo + (mid << 32)
    carry1 = uint64(1) if xlo < lolo else uint64(0)
    xhi = hihi + (mid >> 32) + (carry_mid << 32) + carry1
    n2 = xhi >> 32
    n1 = xhi & MASK32
    if xlo < n2:
        t0 = xlo - n2 - EPS
    else:
        t0 = xlo - n2
    t1 = (n1 << 32) - n1
    s = t0 + t1
    if s < t0:
        s = s + EPS
    if s >= P:
        s = s - P
    return s


@njit(cache=True, inline="always")
def _addmod(a, b):
    s = a + b
    if s < a or s >= P:
        s = s - P
    return s


@njit(cache=True, inline="always")
def _submod(a, b):
    if a >= b:
        return a - b
    return a + (P - b)


@njit(cache=True, inline="always")
def _powmod(a, e):
    acc = uint64(1)
    base = a
    while e > 0:
        if e & uint64(1):
            acc = _mulmod(acc, base)
        base = _mulmod(base, base)
        e >>= 1
    return acc


@njit(cache=True)
def add(a, b):
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _addmod(a[i], b[i])
    return out


@njit(cache=True)
def sub(a, b):
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _submod(a[i], b[i])
    return out


@njit(cache=True)
def mul(a, b):
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _mulmod(a[i], b[i])
    return out


@njit(cache=True)
def neg(a):
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = uint64(0) if a[i] == uint64(0) else P - a[i]
    return out


@njit(cache=True)
def add_scalar(a, c):
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _addmod(a[i], c)
    return out


@njit(cache=True)
def mul_scalar(a, c):
    out = np.empty_like(a)
    for i in range(a.shape[0]):
        out[i] = _mulmod(a[i], c)
    return out


@njit(cache=True)
def powers(base, n, start):
    """[start, start*base, ..., start*base^(n-1)]."""
    out = np.empty(n, dtype=np.uint64)
    acc = start
    for i in range(n):
        out[i] = acc
        acc = _mulmod(acc, base)
    return out


@njit(cache=True)
def vsum(a):
    acc = uint64(0)
    for i in range(a.shape[0]):
        acc = _addmod(acc, a[i])
    return acc


@njit(cache=True)
def batch_inv(a):
    """Montgomery batch inversion; raises on zero entries."""
    n = a.shape[0]
    out = np.empty_like(a)
    if n == 0:
        return out
    pref = np.empty_like(a)
    acc = uint64(1)
    for i in range(n):
        if a[i] == uint64(0):
            raise ZeroDivisionError("batch_inv: zero element")
        acc = _mulmod(acc, a[i])
        pref[i] = acc
    inv = _powmod(acc, P - uint64(2))
    for i in range(n - 1, 0, -1):
        out[i] = _mulmod(inv, pref[i - 1])
        inv = _mulmod(inv, a[i])
    out[0] = inv
    return out


@njit(cache=True)
def prefix_prod(a, seed):
    """Exclusive running product: out[i] = seed * a[0] * ... * a[i-1].

    Returns (out, total) with total = seed * prod(a)."""
    n = a.shape[0]
    out = np.empty_like(a)
    acc = seed
    for i in range(n):
        out[i] = acc
        acc = _mulmod(acc, a[i])
    return out, acc


@njit(cache=True)
def horner_desc(a, x, carry):
    """Fold descending-degree coefficients: carry*x^n + sum a[i] x^(n-1-i)."""
    acc = carry
    for i in range(a.shape[0]):
        acc = _addmod(_mulmod(acc, x), a[i])
    return acc


@njit(cache=True)
def affine_scan_desc(a, x, carry):
    """q[i] = a[i] + x*q[i+1] scanning a (descending degrees) left to right.

    carry plays the role of q one past the left end on entry; returns the
    scanned vector and the new carry (the last q produced)."""
    n = a.shape[0]
    out = np.empty_like(a)
    acc = carry
    for i in range(n):
        acc = _addmod(a[i], _mulmod(x, acc))
        out[i] = acc
    return out, acc


@njit(cache=True)
def dif_fwd(a, w):
    """In-place DIF NTT stages on a power-of-two array, no reordering.

    w is a primitive root of order len(a); output is in bit-reversed order."""
    n = a.shape[0]
    length = n
    wl = w
    while length >= 2:
        half = length >> 1
        for start in range(0, n, length):
            tw = uint64(1)
            for j in range(half):
                u = a[start + j]
                v = a[start + j + half]
                a[start + j] = _addmod(u, v)
                a[start + j + half] = _mulmod(_submod(u, v), tw)
                tw = _mulmod(tw, wl)
        length = half
        wl = _mulmod(wl, wl)


@njit(cache=True)
def dif_fwd_groups(a, group_len, w):
    """Run dif_fwd independently on each group_len-sized group of a."""
    for s in range(0, a.shape[0], group_len):
        dif_fwd(a[s : s + group_len], w)


@njit(cache=True)
def butterfly_dif_chunk(u, v, w, tw_start):
    """Out-of-core DIF butterfly on paired chunks with twiddles tw_start*w^j."""
    tw = tw_start
    for j in range(u.shape[0]):
        x = u[j]
        y = v[j]
        u[j] = _addmod(x, y)
        v[j] = _mulmod(_submod(x, y), tw)
        tw = _mulmod(tw, w)
