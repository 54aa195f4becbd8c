"""Kernel backend selection and the uniform vector-op facade.

The Goldilocks field gets numba-jitted kernels by default with a pure-numpy
fallback; set ``SSZKP_KERNELS=numpy`` (or ``numba``) to force a path.  Other
primes use the portable big-int backend.  Vectors are numpy uint64 arrays for
Goldilocks and python-int lists otherwise; callers treat them as opaque
values (read, transform, write) and never rely on view aliasing.
"""

from __future__ import annotations

import os

import numpy as np

from ..field import Field, GOLDILOCKS
from .generic import GenericKernels

try:
    from . import gl64_numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    gl64_numba = None
    HAS_NUMBA = False

from . import gl64_numpy


def _selected_gl64():
    mode = os.environ.get("SSZKP_KERNELS", "").strip().lower()
    if mode == "numpy":
        return gl64_numpy, "numpy"
    if mode == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("SSZKP_KERNELS=numba but numba is not importable")
        return gl64_numba, "numba"
    if HAS_NUMBA:
        return gl64_numba, "numba"
    return gl64_numpy, "numpy"


class VecOps:
    """Backend-independent vector operations for one field.

    Scalar arguments and returns are python ints; vectors are backend-native.
    """

    def __init__(self, field: Field):
        self.field = field
        if field.name == GOLDILOCKS.name:
            self._impl, self.backend = _selected_gl64()
            self._np = True
        else:
            self._impl, self.backend = GenericKernels(field.p), "generic"
            self._np = False

    # -- constructors / conversions ------------------------------------

    def zeros(self, n: int):
        return np.zeros(n, dtype=np.uint64) if self._np else [0] * n

    def full(self, n: int, c: int):
        return np.full(n, np.uint64(c)) if self._np else [c % self.field.p] * n

    def from_ints(self, seq):
        if self._np:
            return np.asarray(list(seq), dtype=np.uint64)
        p = self.field.p
        return [int(x) % p for x in seq]

    def to_ints(self, vec) -> list[int]:
        return [int(x) for x in vec]

    def copy(self, vec):
        return vec.copy() if self._np else list(vec)

    def concat(self, parts):
        if self._np:
            return np.concatenate(list(parts))
        out = []
        for x in parts:
            out.extend(x)
        return out

    def length(self, vec) -> int:
        return len(vec)

    # -- elementwise ----------------------------------------------------

    def add(self, a, b):
        return self._impl.add(a, b)

    def sub(self, a, b):
        return self._impl.sub(a, b)

    def mul(self, a, b):
        return self._impl.mul(a, b)

    def neg(self, a):
        return self._impl.neg(a)

    def add_scalar(self, a, c: int):
        return self._impl.add_scalar(a, self._c(c))

    def mul_scalar(self, a, c: int):
        return self._impl.mul_scalar(a, self._c(c))

    def powers(self, base: int, n: int, start: int = 1):
        return self._impl.powers(self._c(base), n, self._c(start))

    def batch_inv(self, a):
        return self._impl.batch_inv(a)

    # -- reductions / scans ----------------------------------------------

    def vsum(self, a) -> int:
        return int(self._impl.vsum(a))

    def prefix_prod(self, a, seed: int):
        vec, total = self._impl.prefix_prod(a, self._c(seed))
        return vec, int(total)

    def horner_desc(self, a, x: int, carry: int) -> int:
        return int(self._impl.horner_desc(a, self._c(x), self._c(carry)))

    def affine_scan_desc(self, a, x: int, carry: int):
        vec, new_carry = self._impl.affine_scan_desc(a, self._c(x), self._c(carry))
        return vec, int(new_carry)

    # -- NTT building blocks (in place) -----------------------------------

    def dif_fwd(self, a, w: int):
        self._impl.dif_fwd(a, self._c(w))

    def dif_fwd_groups(self, a, group_len: int, w: int):
        self._impl.dif_fwd_groups(a, group_len, self._c(w))

    def butterfly_dif_chunk(self, u, v, w: int, tw_start: int):
        self._impl.butterfly_dif_chunk(u, v, self._c(w), self._c(tw_start))

    def _c(self, x: int):
        return np.uint64(x) if self._np else x % self.field.p


_CACHE: dict[str, VecOps] = {}


def get_vec_ops(field: Field) -> VecOps:
    key = f"{field.name}:{os.environ.get('SSZKP_KERNELS', '')}"
    if key not in _CACHE:
        _CACHE[key] = VecOps(field)
    return _CACHE[key]
