"""Pure-numpy fallback kernels for the Goldilocks field.

Same contracts as :mod:`sszkp.kernels.gl64_numba` but with every operation
expressed as vectorized uint64 arithmetic (32-bit limb products, silent
wraparound is intentional).  Sequential recurrences (prefix products, scans)
fall back to log-doubling tricks or short python loops; they are correct but
slower, which is what the kernel benchmark is meant to show.
"""

from __future__ import annotations

import numpy as np

P = np.uint64((1 << 64) - (1 << 32) + 1)
P_INT = (1 << 64) - (1 << 32) + 1
MASK32 = np.uint64(0xFFFFFFFF)
EPS = np.uint64(0xFFFFFFFF)
_32 = np.uint64(32)


def mul(a, b):
    a0 = a & MASK32
    a1 = a >> _32
    b0 = b & MASK32
    b1 = b >> _32
    lolo = a0 * b0
    hihi = a1 * b1
    m1 = a1 * b0
    m2 = a0 * b1
    mid = m1 + m2
    carry_mid = (mid < m1).astype(np.uint64)
    xlo = lolo + (mid << _32)
    carry1 = (xlo < lolo).astype(np.uint64)
    xhi = hihi + (mid >> _32) + (carry_mid << _32) + carry1
    n2 = xhi >> _32
    n1 = xhi & MASK32
    borrow = xlo < n2
    t0 = xlo - n2
    t0 = np.where(borrow, t0 - EPS, t0)
    t1 = (n1 << _32) - n1
    s = t0 + t1
    s = np.where(s < t0, s + EPS, s)
    return np.where(s >= P, s - P, s)


def add(a, b):
    s = a + b
    return np.where((s < a) | (s >= P), s - P, s)


def sub(a, b):
    return np.where(a >= b, a - b, a + (P - b))


def neg(a):
    return np.where(a == np.uint64(0), np.uint64(0), P - a)


def add_scalar(a, c):
    return add(a, np.full_like(a, np.uint64(c)))


def mul_scalar(a, c):
    return mul(a, np.full_like(a, np.uint64(c)))


def powers(base, n, start):
    out = np.empty(n, dtype=np.uint64)
    if n == 0:
        return out
    out[0] = np.uint64(start)
    # log-doubling: extend the filled prefix by multiplying with base^len
    step = int(base)
    filled = 1
    while filled < n:
        m = min(filled, n - filled)
        out[filled : filled + m] = mul(out[:m], np.full(m, np.uint64(step)))
        step = step * step % P_INT
        filled *= 2
    return out


def vsum(a):
    lo = int(np.sum(a & MASK32, dtype=np.uint64))
    hi = int(np.sum(a >> _32, dtype=np.uint64))
    return np.uint64((lo + (hi << 32)) % P_INT)


def batch_inv(a):
    if np.any(a == np.uint64(0)):
        raise ZeroDivisionError("batch_inv: zero element")
    pref = _cumprod_incl(a)
    suff = _cumprod_incl(a[::-1])[::-1]
    total_inv = np.uint64(pow(int(pref[-1]), P_INT - 2, P_INT))
    out = np.full_like(a, total_inv)
    out[1:] = mul(out[1:], pref[:-1])
    out[:-1] = mul(out[:-1], suff[1:])
    return out


def _cumprod_incl(a):
    out = a.copy()
    shift = 1
    n = out.shape[0]
    while shift < n:
        out[shift:] = mul(out[shift:], out[:-shift])
        shift *= 2
    return out


def prefix_prod(a, seed):
    n = a.shape[0]
    out = np.empty_like(a)
    if n == 0:
        return out, np.uint64(seed)
    incl = _cumprod_incl(a)
    out[0] = np.uint64(seed)
    out[1:] = mul_scalar(incl[:-1], np.uint64(seed))
    total = np.uint64(int(incl[-1]) * int(seed) % P_INT)
    return out, total


def horner_desc(a, x, carry):
    n = a.shape[0]
    xi = int(x)
    acc = int(carry) * pow(xi, n, P_INT) % P_INT
    pw = powers(np.uint64(xi), n, 1)[::-1].copy()
    acc = (acc + int(vsum(mul(a, pw)))) % P_INT
    return np.uint64(acc)


def affine_scan_desc(a, x, carry):
    # sequential recurrence; plain loop over the chunk
    n = a.shape[0]
    out = np.empty_like(a)
    acc = int(carry)
    xi = int(x)
    av = a.tolist()
    for i in range(n):
        acc = (av[i] + xi * acc) % P_INT
        out[i] = acc
    return out, np.uint64(acc)


def dif_fwd(a, w):
    n = a.shape[0]
    length = n
    wl = int(w)
    while length >= 2:
        half = length >> 1
        m = a.reshape(-1, length)
        u = m[:, :half].copy()
        v = m[:, half:].copy()
        tw = powers(np.uint64(wl), half, 1)
        m[:, :half] = add(u, v)
        m[:, half:] = mul(sub(u, v), tw[None, :])
        length = half
        wl = wl * wl % P_INT
    return


def dif_fwd_groups(a, group_len, w):
    view = a.reshape(-1, group_len)
    length = group_len
    wl = int(w)
    while length >= 2:
        half = length >> 1
        m = view.reshape(-1, length)
        u = m[:, :half].copy()
        v = m[:, half:].copy()
        tw = powers(np.uint64(wl), half, 1)
        m[:, :half] = add(u, v)
        m[:, half:] = mul(sub(u, v), tw[None, :])
        length = half
        wl = wl * wl % P_INT


def butterfly_dif_chunk(u, v, w, tw_start):
    tw = mul_scalar(powers(np.uint64(w), u.shape[0], 1), np.uint64(tw_start))
    x = u.copy()
    y = v.copy()
    u[:] = add(x, y)
    v[:] = mul(sub(x, y), tw)
