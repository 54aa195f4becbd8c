"""Prime-order commitment group and multi-scalar multiplication.

The group is the order-p subgroup of Z_q^* for a prime q = 2*m*p + 1, where p
is the ZK field prime, so the field is exactly the scalar field of the group
(the property KZG-style commitments need).  Written multiplicatively: the
group operation is modular multiplication, scalar multiplication is modular
exponentiation, and the identity is 1.  gmpy2 accelerates the inner loops
when present.

Elements serialize as the fixed-width little-endian residue; deserialization
checks subgroup membership.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Field, GOLDILOCKS, BLS255
from .meter import METER

try:
    from gmpy2 import mpz, powmod

    def _exp(b, e, q):
        return int(powmod(b, e, q))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int

    def _exp(b, e, q):
        return pow(int(b), int(e), int(q))


class SupportOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class CommitmentGroup:
    name: str
    q: int  # ambient prime modulus
    order: int  # subgroup order == field prime
    g: int  # subgroup generator
    h: int  # independent subgroup element (hiding base)
    elem_bytes: int

    @property
    def identity(self) -> int:
        return 1

    def op(self, a: int, b: int) -> int:
        return a * b % self.q

    def inv(self, a: int) -> int:
        return pow(a, self.q - 2, self.q)

    def exp(self, base: int, scalar: int) -> int:
        return _exp(base, scalar % self.order, self.q)

    def is_member(self, x: int) -> bool:
        return 0 < x < self.q and _exp(x, self.order, self.q) == 1

    def to_bytes(self, x: int) -> bytes:
        return int(x).to_bytes(self.elem_bytes, "little")

    def from_bytes(self, raw: bytes) -> int:
        if len(raw) != self.elem_bytes:
            raise ValueError("bad group element length")
        x = int.from_bytes(raw, "little")
        if not self.is_member(x):
            raise ValueError("not a subgroup element")
        return x

    def msm(self, bases, scalars) -> int:
        """Pippenger multi-scalar multiplication: prod bases[i]^scalars[i].

        Window size adapts to the input length so bucket workspace stays
        O(n / log n) for small inputs.  Bucket group elements are tracked as
        live workspace; the bases table is not (SRS exclusion).
        """
        n = len(scalars)
        if n == 0:
            return 1
        if len(bases) < n:
            raise SupportOutOfRange(f"{n} scalars but only {len(bases)} bases")
        q = self.q
        if n <= 8:
            acc = 1
            for i in range(n):
                s = int(scalars[i]) % self.order
                if s:
                    acc = acc * _exp(bases[i], s, q) % q
            return int(acc)
        bbits = self.order.bit_length()
        c = min(16, max(2, n.bit_length() - 3))
        nwin = (bbits + c - 1) // c
        mask = (1 << c) - 1
        use_np = bbits <= 64
        if use_np:
            sc = np.asarray([int(s) % self.order for s in scalars], dtype=np.uint64)
        else:
            sc = [int(s) % self.order for s in scalars]
        acc = mpz(1)
        with METER.groups(1 << c):
            for w in range(nwin - 1, -1, -1):
                if acc != 1:
                    for _ in range(c):
                        acc = acc * acc % q
                shift = w * c
                if use_np:
                    digits = ((sc >> np.uint64(shift)) & np.uint64(mask)).tolist()
                else:
                    digits = [(s >> shift) & mask for s in sc]
                buckets = [mpz(1)] * (1 << c)
                for i in range(n):
                    d = digits[i]
                    if d:
                        buckets[d] = buckets[d] * bases[i] % q
                running = mpz(1)
                window_sum = mpz(1)
                for d in range(mask, 0, -1):
                    running = running * buckets[d] % q
                    window_sum = window_sum * running % q
                acc = acc * window_sum % q
        return int(acc)


# Companion groups: q = 2*m*p + 1 with p the field prime; generators are
# a^((q-1)/p) for small a (5 and 17), fixed protocol constants.

GROUP_GL64 = CommitmentGroup(
    name="schnorr128-gl64",
    q=340282366841710301004450502050762981379,  # m = 2^63 + 1
    order=GOLDILOCKS.p,
    g=7322959055467710594792927298368657352,
    h=281297542493303995136540952550990273772,
    elem_bytes=16,
)

GROUP_BLS255 = CommitmentGroup(
    name="schnorr262-bls255",
    q=0x2B791EBF2F9B0EFB1335B103039CB101FF671D811FFF627F9FFFFFFFA000000061,  # m = 48
    order=BLS255.p,
    g=0x77D9D58B62CD8A5162E7F4A779F5080F1C46D01AE478B23BE1178E81,
    h=0x19E91A333EF871D24F1C79DB3AB6A752054D5A087E69F1CA5CA1B94B42927A2F4,
    elem_bytes=33,
)

GROUPS = {GOLDILOCKS.name: GROUP_GL64, BLS255.name: GROUP_BLS255}


def group_for_field(field: Field) -> CommitmentGroup:
    try:
        return GROUPS[field.name]
    except KeyError:
        raise KeyError(f"no commitment group configured for field {field.name}") from None
