"""Linear polynomial commitment scheme: commit, aggregate, split blinders, open.

Three setup modes:

* ``designated_verifier`` (default): KZG-style SRS g^(s^i) from a seeded
  trapdoor s; openings are checked against s by the verifier.
* ``non_hiding``: transparent Pedersen bases (seeded random subgroup
  elements); binding, opening checks unsupported (transcript-identity
  testing only).
* ``hiding``: Pedersen bases plus blinders on the hiding base.

The commit map is linear in both the message and the blinder in the fixed
basis, which is all the blockwise aggregation machinery relies on.  Two bases
coexist: evaluation basis over a registered domain (used for trace columns,
sparse block slices commit at their offset) and coefficient basis up to
max_len (used for quotient and opening witnesses).  In designated-verifier
mode a polynomial's commitment is g^(f(s)) in either basis.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field

from .domain import DomainDescriptor, PointInDomain
from .field import Field
from .group import CommitmentGroup, SupportOutOfRange, group_for_field
from .kernels import get_vec_ops

MODES = ("non_hiding", "hiding", "designated_verifier")


class NonHidingMode(RuntimeError):
    pass


class ModeUnsupported(RuntimeError):
    pass


def prf_field(field: Field, seed: bytes, label: str) -> int:
    """Deterministic field element from (seed, label); 512-bit reduction."""
    d1 = hashlib.sha256(seed + b"/0/" + label.encode()).digest()
    d2 = hashlib.sha256(seed + b"/1/" + label.encode()).digest()
    return int.from_bytes(d1 + d2, "little") % field.p


@dataclass
class OpeningProof:
    witness_com: int  # commitment to the division witness
    blinder_opening: int = 0  # aggregate blinder opening (0 when non-hiding)


@dataclass
class PcsParams:
    field: Field
    group: CommitmentGroup
    mode: str
    hiding: bool
    lambda_: int
    max_len: int
    seed: bytes
    trapdoor: int | None
    srs_coeff: list
    _eval_tables: dict = dc_field(default_factory=dict)

    @property
    def hiding_base(self) -> int | None:
        return self.group.h if self.hiding else None

    def eval_table(self, domain: DomainDescriptor) -> list:
        """Evaluation-basis SRS over a domain, built lazily and cached."""
        key = (domain.n, domain.shift)
        table = self._eval_tables.get(key)
        if table is None:
            table = _build_eval_table(self, domain)
            self._eval_tables[key] = table
        return table


_SRS_CACHE: dict = {}


def setup(
    field: Field,
    max_len: int,
    mode: str = "designated_verifier",
    seed: bytes = b"sszkp-srs",
    lambda_: int | None = None,
    hiding: bool | None = None,
) -> PcsParams:
    """Deterministic parameter generation from a recorded seed."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    group = group_for_field(field)
    if hiding is None:
        hiding = mode == "hiding"
    if lambda_ is None:
        lambda_ = field.p.bit_length() - 1
    if group.order < (1 << lambda_):
        raise ValueError(f"group order below 2^{lambda_}")
    trapdoor = None
    key = (field.name, mode, bytes(seed), max_len)
    cached = _SRS_CACHE.get(key)
    if cached is not None:
        trapdoor, srs_coeff = cached
    else:
        if mode == "designated_verifier":
            trapdoor = prf_field(field, bytes(seed), "srs/trapdoor")
            if trapdoor in (0, 1):
                trapdoor = 3
            srs_coeff = _powers_srs(group, trapdoor, max_len)
        else:
            srs_coeff = [
                group.exp(group.g, prf_field(field, bytes(seed), f"srs/coeff/{i}"))
                for i in range(max_len)
            ]
        _SRS_CACHE[key] = (trapdoor, srs_coeff)
    return PcsParams(
        field=field,
        group=group,
        mode=mode,
        hiding=hiding,
        lambda_=lambda_,
        max_len=max_len,
        seed=bytes(seed),
        trapdoor=trapdoor,
        srs_coeff=srs_coeff,
    )


def _powers_srs(group: CommitmentGroup, s: int, n: int) -> list:
    out = []
    acc = 1
    for _ in range(n):
        out.append(group.exp(group.g, acc))
        acc = acc * s % group.order
    return out


def _build_eval_table(pp: PcsParams, domain: DomainDescriptor) -> list:
    if domain.n > pp.max_len:
        raise SupportOutOfRange(f"domain size {domain.n} exceeds SRS length {pp.max_len}")
    if pp.mode == "designated_verifier":
        # g^{L_i(s)} with L_i(s) = Z_H(s) * w_i / (s - p_i), w_i = p_i / (N c)
        f = pp.field
        vf = get_vec_ops(f)
        s = pp.trapdoor
        n = domain.n
        pts = vf.powers(domain.root, n, start=domain.shift)
        dinv = vf.batch_inv(vf.sub(vf.full(n, s), pts))
        zh = domain.z_h_at(s)
        scale = f.mul(zh, f.inv(f.mul(n % f.p, domain.c)))
        lag = vf.mul(vf.mul_scalar(pts, scale), dinv)
        return [pp.group.exp(pp.group.g, int(x)) for x in vf.to_ints(lag)]
    key = f"{domain.n}/{domain.shift}"
    return [
        pp.group.exp(pp.group.g, prf_field(pp.field, pp.seed, f"srs/eval/{key}/{i}"))
        for i in range(domain.n)
    ]


# ----------------------------------------------------------------------
# commit / blinders
# ----------------------------------------------------------------------


def commit(
    pp: PcsParams,
    values,
    *,
    basis: str = "eval",
    domain: DomainDescriptor | None = None,
    offset: int = 0,
    blinder: int = 0,
) -> int:
    """Commit to a (possibly sparse) slice at the given support offset."""
    vals = [int(v) for v in values]
    if basis == "eval":
        if domain is None:
            raise ValueError("evaluation basis needs a domain")
        table = pp.eval_table(domain)
    elif basis == "coeff":
        table = pp.srs_coeff
    else:
        raise ValueError(f"unknown basis {basis!r}")
    if offset < 0 or offset + len(vals) > len(table):
        raise SupportOutOfRange(
            f"support [{offset}, {offset + len(vals)}) outside SRS of {len(table)}"
        )
    com = pp.group.msm(table[offset : offset + len(vals)], vals)
    if blinder:
        if not pp.hiding:
            raise NonHidingMode("blinder given but params are not hiding")
        com = pp.group.op(com, pp.group.exp(pp.group.h, blinder))
    return com


def split_blinder(pp: PcsParams, r_base: int, count: int, draw) -> list[int]:
    """Split one blinder into count shares summing to it.

    The first count-1 shares come from ``draw(i)`` (uniform, independent);
    the last is fixed as the difference.
    """
    if not pp.hiding:
        raise NonHidingMode("split_blinder requires hiding mode")
    if count < 1:
        raise ValueError("count must be positive")
    p = pp.field.p
    shares = [int(draw(i)) % p for i in range(count - 1)]
    shares.append((r_base - sum(shares)) % p)
    return shares


# ----------------------------------------------------------------------
# openings
# ----------------------------------------------------------------------


def open_stream(
    pp: PcsParams,
    chunks,
    zeta: int,
    y: int,
    *,
    basis: str = "eval",
    domain: DomainDescriptor | None = None,
    length: int | None = None,
) -> OpeningProof:
    """Opening proof for f(zeta) = y from a streamed polynomial.

    Evaluation basis: ``chunks`` yields evaluation chunks in domain order and
    the witness q(w^i) = (f(w^i) - y) / (p_i - zeta) is committed blockwise.
    Coefficient basis: ``chunks`` yields descending-order coefficient chunks
    (``length`` of them in total) and q comes from synthetic division by
    (X - zeta), committed high-to-low.  Either way the witness commitment is
    aggregated block by block with O(chunk) live state.
    """
    f = pp.field
    vf = get_vec_ops(f)
    group = pp.group
    com = group.identity
    if basis == "eval":
        if domain is None:
            raise ValueError("evaluation basis needs a domain")
        if domain.z_h_at(zeta) == 0:
            raise PointInDomain("opening point lies in the domain")
        pos = 0
        for chunk in chunks:
            m = vf.length(chunk)
            pts = vf.powers(domain.root, m, start=f.mul(domain.shift, f.exp(domain.root, pos)))
            dinv = vf.batch_inv(vf.sub(pts, vf.full(m, zeta)))
            qvals = vf.mul(vf.add_scalar(chunk, f.neg(y)), dinv)
            blk = commit(pp, vf.to_ints(qvals), basis="eval", domain=domain, offset=pos)
            com = group.op(com, blk)
            pos += m
        return OpeningProof(com)
    if basis != "coeff":
        raise ValueError(f"unknown basis {basis!r}")
    if length is None:
        raise ValueError("coefficient basis needs the total length")
    # synthetic division q_j = a_{j+1} + zeta*q_{j+1}; the last streamed
    # element (the constant term) only feeds the remainder check
    carry = 0
    held: int | None = None
    consumed = 0  # elements already fed to the scan
    for chunk in chunks:
        vals = vf.to_ints(chunk)
        if held is not None:
            vals = [held] + vals
        if not vals:
            continue
        held = vals[-1]
        head = vals[:-1]
        if head:
            qchunk, carry = vf.affine_scan_desc(vf.from_ints(head), zeta, carry)
            # feeding a_d yields q_{d-1}: degrees length-2-consumed downward
            lo = length - 1 - consumed - len(head)
            blk = commit(pp, vf.to_ints(qchunk)[::-1], basis="coeff", offset=lo)
            com = group.op(com, blk)
            consumed += len(head)
    if held is None:
        raise ValueError("empty coefficient stream")
    if consumed != length - 1:
        raise ValueError(f"stream had {consumed + 1} coefficients, expected {length}")
    if f.sub(f.add(f.mul(zeta, carry), held), y) != 0:
        raise ValueError("claimed evaluation does not match the stream")
    return OpeningProof(com)


def verify_open(pp: PcsParams, com: int, zeta: int, y: int, proof: OpeningProof) -> bool:
    """Designated-verifier opening check: f(s) - y == (s - zeta) * q(s)."""
    return verify_batched_open(pp, [com], 1, zeta, [y], proof)


def verify_batched_open(
    pp: PcsParams,
    coms: list[int],
    v: int,
    zeta: int,
    ys: list[int],
    proof: OpeningProof,
) -> bool:
    """Check prod com_i^(v^i) against one witness at zeta (trapdoor check).

    Accepts iff agg_com * g^(-y_agg) * h^(-delta) == W^(s - zeta) where
    y_agg = sum v^i y_i and delta is the aggregate blinder opening.
    """
    if pp.mode != "designated_verifier":
        raise ModeUnsupported(f"opening verification unavailable in {pp.mode} mode")
    f = pp.field
    group = pp.group
    agg = group.identity
    y_agg = 0
    vi = 1
    for com, y in zip(coms, ys):
        agg = group.op(agg, group.exp(com, vi))
        y_agg = f.add(y_agg, f.mul(vi, y))
        vi = f.mul(vi, v)
    lhs = group.op(agg, group.inv(group.exp(group.g, y_agg)))
    if proof.blinder_opening:
        lhs = group.op(lhs, group.inv(group.exp(group.h, proof.blinder_opening)))
    rhs = group.exp(proof.witness_com, f.sub(pp.trapdoor, zeta))
    return lhs == rhs
