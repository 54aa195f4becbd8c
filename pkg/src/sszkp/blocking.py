"""Block-respecting decomposition and the implicit computation-graph oracles.

Nodes of the computation graph are (m, t) with register m in 1..k and time
block t in 1..B (t = 0 rows are sources holding initial register contents).
A node descriptor is just the pair of ints, O(log T) space; predecessors come
from the AIR's declared read sets, never from a materialized graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .air import Air, InvalidNode


def next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


@dataclass(frozen=True)
class BlockingParams:
    t_rows: int  # trace length T
    b_blk: int  # block size
    n: int  # padded domain size (power of two, >= T)
    b_count: int  # number of blocks covering all n rows

    @classmethod
    def default(cls, t_rows: int, b_blk: int | None = None, n: int | None = None):
        if n is None:
            n = next_pow2(t_rows)
        if n < t_rows or (n & (n - 1)):
            raise ValueError("padded size must be a power of two >= T")
        if b_blk is None:
            b_blk = max(1, math.isqrt(t_rows))
        if not 1 <= b_blk <= n:
            raise ValueError(f"block size {b_blk} out of range for N={n}")
        # blocks tile the padded domain so slices cover rows 0..N-1
        return cls(t_rows, b_blk, n, (n + b_blk - 1) // b_blk)

    def block_bounds(self, t: int) -> tuple[int, int]:
        if not 1 <= t <= self.b_count:
            raise InvalidNode(f"block index {t} out of 1..{self.b_count}")
        lo = (t - 1) * self.b_blk
        return lo, min(lo + self.b_blk, self.n)


def children(air: Air, node: tuple[int, int]) -> list[tuple[int, int]]:
    """Predecessors of node (m, t): same register then cross-register reads.

    Registers are 1-indexed in node descriptors.  Source nodes (m, 0) have no
    children.
    """
    m, t = node
    if not (1 <= m <= air.k) or t < 0:
        raise InvalidNode(f"bad node {node}")
    if t == 0:
        return []
    out = [(m, t - 1)]
    for m2 in sorted(air.reads[m - 1]):
        if m2 + 1 != m:
            out.append((m2 + 1, t - 1))
    return out


def layered_schedule(air: Air, blocking: BlockingParams):
    """All computation nodes, layer by layer, each exactly once.

    Retention contract: a node's aux state may be discarded once every
    consumer in layer t+1 (at most k of them) has read it, so at most two
    layers of aux are ever live.
    """
    for t in range(1, blocking.b_count + 1):
        for m in range(1, air.k + 1):
            yield (m, t)
