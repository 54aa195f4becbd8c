"""Prime fields with a large power-of-two subgroup.

Two built-in configurations:

* ``goldilocks64`` (default): p = 2^64 - 2^32 + 1, 2-adicity 32.  Vectors are
  numpy ``uint64`` arrays served by the fast kernels in :mod:`sszkp.kernels`.
* ``bls255``: the 255-bit scalar field of BLS12-381, 2-adicity 32.  Vectors
  are plain python-int lists served by the generic kernel backend; intended
  for small-N realism tests, not for benchmarking.

Scalars are plain python ints in ``[0, p)`` everywhere; only bulk data lives
in backend-specific vector types.  Serialization of a field element is the
little-endian 32-byte residue, the width used throughout the proof format.
"""

from __future__ import annotations

from dataclasses import dataclass

FIELD_BYTES = 32


@dataclass(frozen=True)
class Field:
    """A prime field F_p with p - 1 divisible by 2^two_adicity."""

    name: str
    p: int
    generator: int  # multiplicative generator of F_p^*
    two_adicity: int

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def exp(self, a: int, e: int) -> int:
        return pow(a, e % (self.p - 1) if e < 0 else e, self.p)

    def root_of_unity(self, order: int) -> int:
        """Primitive root of unity of the given power-of-two order."""
        if order & (order - 1):
            raise ValueError(f"order {order} is not a power of two")
        if order > (1 << self.two_adicity):
            raise ValueError(f"no subgroup of order {order} in {self.name}")
        return pow(self.generator, (self.p - 1) // order, self.p)

    def to_bytes(self, a: int) -> bytes:
        return int(a).to_bytes(FIELD_BYTES, "little")

    def from_bytes(self, raw: bytes) -> int:
        v = int.from_bytes(raw, "little")
        if v >= self.p:
            raise ValueError("field element out of range")
        return v


GOLDILOCKS = Field(
    name="goldilocks64",
    p=(1 << 64) - (1 << 32) + 1,
    generator=7,
    two_adicity=32,
)

BLS255 = Field(
    name="bls255",
    p=0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001,
    generator=7,
    two_adicity=32,
)

FIELDS = {f.name: f for f in (GOLDILOCKS, BLS255)}


def get_field(name: str) -> Field:
    try:
        return FIELDS[name]
    except KeyError:
        raise KeyError(f"unknown field {name!r}; have {sorted(FIELDS)}") from None
