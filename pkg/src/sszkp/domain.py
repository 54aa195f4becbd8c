"""Evaluation domains: multiplicative subgroups and cosets of F_p^*.

A domain of size N is { shift * root^i : 0 <= i < N } with root a primitive
N-th root of unity and shift = 1 for the plain subgroup.  Its vanishing
polynomial is Z_H(X) = X^N - c with c = shift^N (c = 1 for subgroups).
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field


class UnsupportedSize(ValueError):
    pass


class PointInDomain(ValueError):
    pass


@dataclass(frozen=True)
class DomainDescriptor:
    field: Field
    n: int
    root: int  # primitive n-th root of unity
    shift: int  # coset shift, 1 for subgroup
    c: int  # vanishing constant, Z_H = X^N - c
    is_coset: bool

    @property
    def omega(self) -> int:
        """Coset-absorbed root: omega^N = c, and omega = root for subgroups."""
        return self.field.mul(self.shift, self.root)

    def point(self, i: int) -> int:
        return self.field.mul(self.shift, self.field.exp(self.root, i % self.n))

    def z_h_at(self, x: int) -> int:
        return self.field.sub(self.field.exp(x, self.n), self.c)

    def lagrange_at(self, i: int, x: int) -> int:
        """L_i(x) for x outside the domain, via Z_H(x) * w_i / (x - p_i).

        Uses Z_H'(p) = N p^(N-1), so w_i = p_i / (N c)."""
        f = self.field
        zh = self.z_h_at(x)
        if zh == 0:
            raise PointInDomain(f"x = {x} lies in the domain")
        p_i = self.point(i)
        num = f.mul(zh, p_i)
        den = f.mul(f.mul(self.n % f.p, self.c), f.sub(x, p_i))
        return f.mul(num, f.inv(den))


def make_domain(field: Field, n: int, coset: bool = False, shift: int | None = None) -> DomainDescriptor:
    """Build a size-n domain; n must divide the 2-adic part of p - 1."""
    if n <= 0 or (n & (n - 1)):
        raise UnsupportedSize(f"domain size {n} is not a power of two")
    if n > (1 << field.two_adicity):
        raise UnsupportedSize(
            f"domain size {n} exceeds the 2-adic subgroup of {field.name}"
        )
    root = field.root_of_unity(n) if n > 1 else 1
    if coset:
        s = field.generator if shift is None else shift
        c = field.exp(s, n)
        if c == 1:
            raise UnsupportedSize("coset shift lies in the subgroup")
        return DomainDescriptor(field, n, root, s, c, True)
    return DomainDescriptor(field, n, root, 1, 1, False)
