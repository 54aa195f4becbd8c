"""Portable big-int kernels for arbitrary primes (the 255-bit field option).

Vectors are plain lists of python ints.  Everything is straightforward modular
arithmetic; this backend exists for correctness at realism-scale moduli, not
for speed, and is only selected for non-Goldilocks fields.
"""

from __future__ import annotations


class GenericKernels:
    def __init__(self, p: int):
        self.p = p

    def add(self, a, b):
        p = self.p
        return [(x + y) % p for x, y in zip(a, b)]

    def sub(self, a, b):
        p = self.p
        return [(x - y) % p for x, y in zip(a, b)]

    def mul(self, a, b):
        p = self.p
        return [x * y % p for x, y in zip(a, b)]

    def neg(self, a):
        p = self.p
        return [-x % p for x in a]

    def add_scalar(self, a, c):
        p = self.p
        return [(x + c) % p for x in a]

    def mul_scalar(self, a, c):
        p = self.p
        return [x * c % p for x in a]

    def powers(self, base, n, start):
        p = self.p
        out = []
        acc = start % p
        for _ in range(n):
            out.append(acc)
            acc = acc * base % p
        return out

    def vsum(self, a):
        return sum(a) % self.p

    def batch_inv(self, a):
        p = self.p
        n = len(a)
        pref = []
        acc = 1
        for x in a:
            if x == 0:
                raise ZeroDivisionError("batch_inv: zero element")
            acc = acc * x % p
            pref.append(acc)
        inv = pow(acc, p - 2, p)
        out = [0] * n
        for i in range(n - 1, 0, -1):
            out[i] = inv * pref[i - 1] % p
            inv = inv * a[i] % p
        if n:
            out[0] = inv
        return out

    def prefix_prod(self, a, seed):
        p = self.p
        out = []
        acc = seed % p
        for x in a:
            out.append(acc)
            acc = acc * x % p
        return out, acc

    def horner_desc(self, a, x, carry):
        p = self.p
        acc = carry % p
        for v in a:
            acc = (acc * x + v) % p
        return acc

    def affine_scan_desc(self, a, x, carry):
        p = self.p
        out = []
        acc = carry % p
        for v in a:
            acc = (v + x * acc) % p
            out.append(acc)
        return out, acc

    def dif_fwd(self, a, w):
        p = self.p
        n = len(a)
        length = n
        wl = w
        while length >= 2:
            half = length >> 1
            for start in range(0, n, length):
                tw = 1
                for j in range(half):
                    u = a[start + j]
                    v = a[start + j + half]
                    a[start + j] = (u + v) % p
                    a[start + j + half] = (u - v) * tw % p
                    tw = tw * wl % p
            length = half
            wl = wl * wl % p

    def dif_fwd_groups(self, a, group_len, w):
        for s in range(0, len(a), group_len):
            seg = a[s : s + group_len]
            self.dif_fwd(seg, w)
            a[s : s + group_len] = seg

    def butterfly_dif_chunk(self, u, v, w, tw_start):
        p = self.p
        tw = tw_start % p
        for j in range(len(u)):
            x, y = u[j], v[j]
            u[j] = (x + y) % p
            v[j] = (x - y) * tw % p
            tw = tw * w % p
