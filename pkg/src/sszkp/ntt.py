"""NTTs over power-of-two domains: monolithic, blocked out-of-core, barycentric.

The blocked transforms run radix-2 DIF stages directly on a scratch stream:
stages with butterfly distance above the window size stream the scratch once
each; once groups fit the window a single windowed pass finishes all
remaining stages, and emission gathers bit-reversed positions block by
block.  Pass count over scratch is therefore max(0, log2(N) - log2(W)) + 2
with window W = max(2, b_blk); live field elements stay within 2W plus
O(log N) twiddle state.

Coset domains are handled by pre/post scaling with powers of the shift:
evaluations on {s w^i} of f correspond to the plain-subgroup transform of
f(sX), whose coefficients are a_j s^j.
"""

from __future__ import annotations

import numpy as np

from .domain import DomainDescriptor, PointInDomain
from .kernels import VecOps
from .meter import METER
from .streams import ScratchSpace, ScratchVec, chunk_ranges


class LengthMismatch(ValueError):
    pass


def _bitrev_indices(idx, logn: int):
    out = np.zeros_like(idx)
    for b in range(logn):
        out = (out << 1) | ((idx >> b) & 1)
    return out


# ----------------------------------------------------------------------
# monolithic transforms (baseline prover / test oracles)
# ----------------------------------------------------------------------


def ntt_vec(vf: VecOps, domain: DomainDescriptor, coeffs):
    """Evaluate a full coefficient vector on the domain (natural order)."""
    n = domain.n
    if vf.length(coeffs) != n:
        raise LengthMismatch(f"expected {n} coefficients")
    if n == 1:
        return vf.copy(coeffs)
    work = vf.copy(coeffs)
    if domain.is_coset:
        work = vf.mul(work, vf.powers(domain.shift, n))
    vf.dif_fwd(work, domain.root)
    return _gather_bitrev(vf, work, n)


def intt_vec(vf: VecOps, domain: DomainDescriptor, evals):
    """Interpolate evaluations (natural order) to coefficients."""
    n = domain.n
    if vf.length(evals) != n:
        raise LengthMismatch(f"expected {n} evaluations")
    if n == 1:
        return vf.copy(evals)
    f = domain.field
    work = vf.copy(evals)
    vf.dif_fwd(work, f.inv(domain.root))
    out = _gather_bitrev(vf, work, n)
    ninv = f.inv(n % f.p)
    if domain.is_coset:
        scale = vf.powers(f.inv(domain.shift), n, start=ninv)
        return vf.mul(out, scale)
    return vf.mul_scalar(out, ninv)


def _gather_bitrev(vf: VecOps, work, n: int):
    logn = n.bit_length() - 1
    idx = _bitrev_indices(np.arange(n, dtype=np.int64), logn)
    if vf.backend == "generic":
        return [work[int(i)] for i in idx]
    return work[idx]


# ----------------------------------------------------------------------
# blocked out-of-core transforms
# ----------------------------------------------------------------------


def ooc_dif_inplace(vf: VecOps, sv: ScratchVec, root: int, window: int):
    """Run all DIF stages on a scratch vector, leaving bit-reversed order."""
    n = sv.n
    f = vf.field
    length = n
    w_l = root
    while length > window:
        half = length >> 1
        chunk = max(1, window // 2)
        for gstart in range(0, n, length):
            for cstart, cstop in chunk_ranges(half, chunk):
                m = cstop - cstart
                with METER.fields(2 * m):
                    u = sv.read(gstart + cstart, gstart + cstop)
                    v = sv.read(gstart + half + cstart, gstart + half + cstop)
                    vf.butterfly_dif_chunk(u, v, w_l, f.exp(w_l, cstart))
                    sv.write(gstart + cstart, u)
                    sv.write(gstart + half + cstart, v)
        length = half
        w_l = f.mul(w_l, w_l)
    if length >= 2:
        group = length
        w_g = f.exp(root, n // group)
        for start, stop in chunk_ranges(n, max(window, group)):
            with METER.fields(stop - start):
                win = sv.read(start, stop)
                vf.dif_fwd_groups(win, group, w_g)
                sv.write(start, win)


def intt_blocked(
    vf: VecOps,
    domain: DomainDescriptor,
    sv: ScratchVec,
    b_blk: int,
    descending: bool = False,
):
    """Blocked inverse NTT of a scratch eval stream; yields (start, coeff block).

    Transforms the scratch in place (the input is consumed), then emits
    coefficient blocks in ascending or descending start order.  Workspace is
    O(b_blk) live elements plus O(log N) twiddle state.
    """
    n = domain.n
    if sv.n != n:
        raise LengthMismatch(f"scratch holds {sv.n} values, domain wants {n}")
    f = domain.field
    if n == 1:
        with METER.fields(1):
            yield 0, sv.read(0, 1)
        return
    window = max(2, min(b_blk, n))
    ooc_dif_inplace(vf, sv, f.inv(domain.root), window)
    logn = n.bit_length() - 1
    ninv = f.inv(n % f.p)
    sinv = f.inv(domain.shift) if domain.is_coset else 1
    starts = list(range(0, n, b_blk))
    if descending:
        starts.reverse()
    for start in starts:
        stop = min(start + b_blk, n)
        m = stop - start
        with METER.fields(m):
            idx = _bitrev_indices(np.arange(start, stop, dtype=np.int64), logn)
            block = sv.gather(idx)
            if domain.is_coset:
                scale = vf.powers(sinv, m, start=f.mul(ninv, f.exp(sinv, start)))
                block = vf.mul(block, scale)
            else:
                block = vf.mul_scalar(block, ninv)
            yield start, block


def ntt_blocked(
    vf: VecOps,
    domain: DomainDescriptor,
    coeff_blocks,
    b_blk: int,
):
    """Blocked forward NTT: coefficient blocks in, (start, eval block) out.

    ``coeff_blocks`` yields (start, block) pairs whose union is the (possibly
    zero-padded) coefficient vector; missing tail positions are treated as
    zero.  Needs its own scratch of N elements (external storage).
    """
    n = domain.n
    f = domain.field
    with ScratchSpace(vf) as space:
        work = space.vec(n, "ntt-work")
        for start, block in coeff_blocks:
            m = vf.length(block)
            if start + m > n:
                raise LengthMismatch("coefficient block exceeds domain size")
            with METER.fields(m):
                if domain.is_coset:
                    block = vf.mul(block, vf.powers(domain.shift, m, start=f.exp(domain.shift, start)))
                work.write(start, block)
        if n == 1:
            with METER.fields(1):
                yield 0, work.read(0, 1)
            return
        window = max(2, min(b_blk, n))
        ooc_dif_inplace(vf, work, domain.root, window)
        logn = n.bit_length() - 1
        for start, stop in chunk_ranges(n, b_blk):
            with METER.fields(stop - start):
                idx = _bitrev_indices(np.arange(start, stop, dtype=np.int64), logn)
                yield start, work.gather(idx)


def block_eval_contribution(vf: VecOps, domain: DomainDescriptor, start: int, coeffs):
    """Dense evaluations of one coefficient block on the whole domain.

    Direct O(N * b) vector Horner; the sum of contributions over all blocks
    of a polynomial equals its full NTT.  Test-oracle grade.
    """
    n = domain.n
    f = domain.field
    pts = vf.mul_scalar(vf.powers(domain.root, n), domain.shift) if domain.is_coset else vf.powers(domain.root, n)
    acc = vf.zeros(n)
    for j in range(vf.length(coeffs) - 1, -1, -1):
        acc = vf.mul(acc, pts)
        acc = vf.add_scalar(acc, int(coeffs[j]))
    if start == 0:
        return acc
    # x^start over the domain is itself geometric with ratio root^start
    xs = vf.powers(f.exp(domain.root, start), n, start=f.exp(domain.shift, start))
    return vf.mul(acc, xs)


# ----------------------------------------------------------------------
# barycentric evaluation
# ----------------------------------------------------------------------


class BarycentricAccumulator:
    """Single-pass evaluation of degree-<N interpolants at a fixed point.

    Feed evaluation chunks in domain order; O(1) running sums per target
    polynomial are maintained by the caller owning one accumulator each.
    """

    def __init__(self, vf: VecOps, domain: DomainDescriptor, zeta: int):
        if domain.z_h_at(zeta) == 0:
            raise PointInDomain(f"zeta = {zeta} lies in the evaluation domain")
        self.vf = vf
        self.domain = domain
        self.zeta = zeta
        f = domain.field
        self._inv_nc = f.inv(f.mul(domain.n % f.p, domain.c))
        self._num = 0
        self._den = 0
        self._fed = 0

    def feed(self, values):
        """Consume the next chunk of evaluations (domain order)."""
        vf = self.vf
        d = self.domain
        f = d.field
        m = vf.length(values)
        start_pt = f.mul(d.shift, f.exp(d.root, self._fed))
        pts = vf.powers(d.root, m, start=start_pt)
        dinv = vf.batch_inv(vf.sub(vf.full(m, self.zeta), pts))
        w = vf.mul_scalar(pts, self._inv_nc)
        wd = vf.mul(w, dinv)
        self._num = f.add(self._num, vf.vsum(vf.mul(wd, values)))
        self._den = f.add(self._den, vf.vsum(wd))
        self._fed += m

    def value(self) -> int:
        if self._fed != self.domain.n:
            raise LengthMismatch(f"fed {self._fed} of {self.domain.n} evaluations")
        return self.domain.field.mul(self._num, self.domain.field.inv(self._den))


def barycentric_eval_stream(vf: VecOps, domain: DomainDescriptor, chunks, zeta: int) -> int:
    """Evaluate the interpolant of a streamed evaluation vector at zeta."""
    acc = BarycentricAccumulator(vf, domain, zeta)
    for chunk in chunks:
        acc.feed(chunk)
    return acc.value()


def horner_eval_stream(vf: VecOps, desc_chunks, x: int) -> int:
    """Evaluate streamed descending-order coefficient chunks at x."""
    carry = 0
    for chunk in desc_chunks:
        carry = vf.horner_desc(chunk, x, carry)
    return carry
