"""AIR definitions, witness execution, and the built-in demo systems.

An AIR is k registers advancing row by row under fixed transition maps, with
polynomial transition constraints over (previous row, next row), boundary
constraints, and optional permutation / lookup arguments.  Built-ins:

* ``fib``: k=2 Fibonacci, no accumulator columns;
* ``copy``: k=3 shift-chain with a nontrivial wiring permutation sigma
  (copy constraints duplicated by the transition maps, Plonk-style);
* ``range``: k=2 counter plus a looked-up column whose values must appear in
  a fixed table, driving one lookup accumulator.

Padding rows T..N-1 repeat the last state; the transition selector is zero
from row T-1 on, so padded rows satisfy every gated constraint vacuously.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import Field
from .kernels import VecOps
from .meter import METER


class ConstraintUnsatisfiable(RuntimeError):
    pass


class InvalidNode(ValueError):
    pass


@dataclass
class BlockOutput:
    """One block of executed trace rows plus the row-local check fields."""

    t: int
    lo: int
    hi: int
    reg_vals: list  # k vectors of length hi - lo
    boundary_in: tuple
    boundary_out: tuple

    def release(self):
        k = len(self.reg_vals)
        METER.release_field(k * (self.hi - self.lo))
        self.reg_vals = []


class Air:
    """Base class; subclasses fix k, reads, constraints and witness maps."""

    name: str = "?"
    k: int = 0
    reads: tuple = ()  # per target register: previous-row registers read
    ext_factor: int = 2  # power-of-two quotient-domain blowup >= max term degree / N
    has_perm: bool = False
    has_lookup: bool = False
    lookup_reg: int = -1
    num_transitions: int = 0

    def __init__(self, field: Field):
        self.field = field

    def prepare(self, t_rows: int) -> None:
        """Bind the trace length before witness generation (no-op default)."""

    # -- witness generation -------------------------------------------------

    def initial_state(self, publics: list[int]) -> tuple:
        raise NotImplementedError

    def step(self, state: tuple, i: int) -> tuple:
        """Row i from row i-1 (1 <= i < T)."""
        raise NotImplementedError

    def example_publics(self, t_rows: int) -> list[int]:
        raise NotImplementedError

    # -- constraints ---------------------------------------------------------

    def boundary_constraints(self, publics: list[int], t_rows: int) -> list[tuple]:
        """(row, register, value) triples."""
        raise NotImplementedError

    def transition_residuals(self, vf: VecOps, prev: list, nxt: list) -> list:
        """Vectorized constraint values; gated by the transition selector."""
        raise NotImplementedError

    # -- permutation / lookup -------------------------------------------------

    def sigma(self, c: int, i: int, t_rows: int) -> tuple[int, int]:
        """Wiring permutation on (register, row) positions; identity default."""
        return (c, i)

    def table(self, i: int, t_rows: int) -> int:
        raise NotImplementedError

    @property
    def r_reg(self) -> int:
        return max(len(set(rd) - {m}) for m, rd in enumerate(self.reads))


class FibonacciAir(Air):
    name = "fib"
    k = 2
    reads = (frozenset({1}), frozenset({0, 1}))
    ext_factor = 2
    num_transitions = 2

    def initial_state(self, publics):
        return (publics[0] % self.field.p, publics[1] % self.field.p)

    def step(self, state, i):
        a, b = state
        return (b, self.field.add(a, b))

    def example_publics(self, t_rows):
        a, b = 1, 1
        for _ in range(t_rows - 1):
            a, b = b, self.field.add(a, b)
        return [1, 1, b]

    def boundary_constraints(self, publics, t_rows):
        return [(0, 0, publics[0]), (0, 1, publics[1]), (t_rows - 1, 1, publics[2])]

    def transition_residuals(self, vf, prev, nxt):
        return [
            vf.sub(nxt[0], prev[1]),
            vf.sub(nxt[1], vf.add(prev[0], prev[1])),
        ]


class CopyChainAir(Air):
    """Shift chain x' = y, y' = z, z' = x + y with sigma tying x(i+1) to y(i)."""

    name = "copy"
    k = 3
    reads = (frozenset({1}), frozenset({2}), frozenset({0, 1}))
    ext_factor = 4
    has_perm = True
    num_transitions = 3

    def initial_state(self, publics):
        p = self.field.p
        return (publics[0] % p, publics[1] % p, publics[2] % p)

    def step(self, state, i):
        x, y, z = state
        return (y, z, self.field.add(x, y))

    def example_publics(self, t_rows):
        st = (2, 3, 5)
        for i in range(1, t_rows):
            st = self.step(st, i)
        return [2, 3, 5, st[2]]

    def boundary_constraints(self, publics, t_rows):
        return [
            (0, 0, publics[0]),
            (0, 1, publics[1]),
            (0, 2, publics[2]),
            (t_rows - 1, 2, publics[3]),
        ]

    def transition_residuals(self, vf, prev, nxt):
        return [
            vf.sub(nxt[0], prev[1]),
            vf.sub(nxt[1], prev[2]),
            vf.sub(nxt[2], vf.add(prev[0], prev[1])),
        ]

    def sigma(self, c, i, t_rows):
        # 2-cycles (0, i+1) <-> (1, i) for 0 <= i < t_rows - 1
        if c == 0 and 1 <= i <= t_rows - 1:
            return (1, i - 1)
        if c == 1 and i <= t_rows - 2:
            return (0, i + 1)
        return (c, i)


class RangeLookupAir(Air):
    """Counter plus a column of table values visited in shuffled order."""

    name = "range"
    k = 2
    reads = (frozenset({0}), frozenset({0}))
    ext_factor = 4
    has_lookup = True
    lookup_reg = 1
    num_transitions = 1
    table_size = 256

    def prepare(self, t_rows):
        # the witness map needs the trace length to stay a permutation
        self._t_rows = t_rows

    def table(self, i, t_rows):
        return i % self.table_size

    def _shuffled(self, i):
        # odd-multiplier affine permutation of [0, t_rows) composed with the table
        t_rows = self._t_rows
        return self.table((5 * i + 3) % t_rows, t_rows)

    def initial_state(self, publics):
        return (0, self._shuffled(0))

    def step(self, state, i):
        return (self.field.add(state[0], 1), self._shuffled(i))

    def example_publics(self, t_rows):
        self.prepare(t_rows)
        return [self._shuffled(0), (t_rows - 1) % self.field.p]

    def boundary_constraints(self, publics, t_rows):
        return [(0, 0, 0), (0, 1, publics[0]), (t_rows - 1, 0, publics[1])]

    def transition_residuals(self, vf, prev, nxt):
        return [vf.sub(nxt[0], vf.add_scalar(prev[0], 1))]


def make_air(name: str, field: Field) -> Air:
    airs = {"fib": FibonacciAir, "copy": CopyChainAir, "range": RangeLookupAir}
    try:
        return airs[name](field)
    except KeyError:
        raise KeyError(f"unknown AIR {name!r}; have {sorted(airs)}") from None


AIR_NAMES = ("fib", "copy", "range")


class TamperedAir:
    """Wrap an AIR, corrupting one register at one row of the witness.

    Constraints and fixed columns pass through, so both provers generate the
    same (invalid) trace; used by the soundness smoke harness.
    """

    def __init__(self, inner: Air, row: int, reg: int, delta: int = 1):
        self._inner = inner
        self.row = row
        self.reg = reg
        self.delta = delta

    def __getattr__(self, item):
        return getattr(self._inner, item)

    def initial_state(self, publics):
        st = self._inner.initial_state(publics)
        return self._corrupt(st, 0)

    def step(self, state, i):
        return self._corrupt(self._inner.step(state, i), i)

    def _corrupt(self, st, i):
        if i != self.row:
            return st
        st = list(st)
        st[self.reg] = self._inner.field.add(st[self.reg], self.delta)
        return tuple(st)


# ----------------------------------------------------------------------
# execution
# ----------------------------------------------------------------------


def eval_block(air, vf: VecOps, blocking, t: int, boundary_in: tuple, publics: list[int]) -> BlockOutput:
    """Execute one time block from the previous block's boundary.

    Rows advance one at a time; padding rows repeat the last state.  Live
    memory is the k block buffers (tracked until ``release``).
    """
    lo, hi = blocking.block_bounds(t)
    t_rows = blocking.t_rows
    cols = [[0] * (hi - lo) for _ in range(air.k)]
    if t == 1:
        state = air.initial_state(publics)
        rows = range(lo + 1, hi)
        for c in range(air.k):
            cols[c][0] = state[c]
        fill_from = 1
    else:
        state = boundary_in
        rows = range(lo, hi)
        fill_from = 0
    j = fill_from
    for i in rows:
        if i < t_rows:
            state = air.step(state, i)
            if state is None:
                raise ConstraintUnsatisfiable(f"no valid row {i}")
        for c in range(air.k):
            cols[c][j] = state[c]
        j += 1
    METER.track_field(air.k * (hi - lo))
    return BlockOutput(
        t=t,
        lo=lo,
        hi=hi,
        reg_vals=[vf.from_ints(col) for col in cols],
        boundary_in=tuple(boundary_in) if t > 1 else air.initial_state(publics),
        boundary_out=tuple(state),
    )


def run_trace(air, vf: VecOps, t_rows: int, n: int, publics: list[int]) -> list:
    """Monolithic row-by-row executor (linear-space oracle): k columns of n."""
    cols = [[0] * n for _ in range(air.k)]
    state = air.initial_state(publics)
    for c in range(air.k):
        cols[c][0] = state[c]
    for i in range(1, n):
        if i < t_rows:
            state = air.step(state, i)
        for c in range(air.k):
            cols[c][i] = state[c]
    METER.track_field(air.k * n)
    return [vf.from_ints(col) for col in cols]


def stream_blocks(air, vf: VecOps, blocking, publics: list[int]):
    """One full witness pass: yields BlockOutput per block, chaining boundaries.

    Callers must ``release()`` each block when done with it.  Counts one
    witness-stream pass on the meter.
    """
    METER.count_witness_pass()
    boundary = air.initial_state(publics)
    for t in range(1, blocking.b_count + 1):
        out = eval_block(air, vf, blocking, t, boundary, publics)
        boundary = out.boundary_out
        yield out


def audit_reads(air, trials: int = 8, seed: int = 0) -> None:
    """Static access audit: perturbing undeclared registers must not change
    a target register's next value.  Raises AssertionError on violation."""
    rng = random.Random(seed)
    p = air.field.p
    for _ in range(trials):
        state = tuple(rng.randrange(p) for _ in range(air.k))
        i = rng.randrange(1, 1 << 16)
        base = air.step(state, i)
        for j in range(air.k):
            for m in range(air.k):
                if j in air.reads[m]:
                    continue
                perturbed = list(state)
                perturbed[j] = rng.randrange(p)
                got = air.step(tuple(perturbed), i)
                assert got[m] == base[m], (
                    f"register {m} of {air.name} reads undeclared register {j}"
                )
