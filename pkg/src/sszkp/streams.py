"""Rewindable scratch streams backing the out-of-core transforms.

Scratch vectors model external sequential/random-access storage (disk): they
are tempfile-backed numpy memmaps for the Goldilocks backend and in-RAM lists
for the big-int backend (which only runs at toy sizes).  Scratch contents are
*not* live workspace; the meter tracks only the O(b_blk) windows that callers
read into RAM.  ``read`` always returns a fresh RAM copy, never a view.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

from .kernels import VecOps


class ScratchVec:
    def __init__(self, vf: VecOps, n: int, path: str | None):
        self.vf = vf
        self.n = n
        self._path = path
        if path is not None:
            self._mm = np.memmap(path, dtype=np.uint64, mode="w+", shape=(n,))
        else:
            self._data = [0] * n

    def read(self, start: int, stop: int):
        stop = min(stop, self.n)
        if self._path is not None:
            return np.array(self._mm[start:stop])
        return list(self._data[start:stop])

    def write(self, start: int, vec):
        if self._path is not None:
            self._mm[start : start + len(vec)] = vec
        else:
            self._data[start : start + len(vec)] = vec

    def gather(self, indices):
        if self._path is not None:
            return np.array(self._mm[np.asarray(indices, dtype=np.int64)])
        return [self._data[int(i)] for i in indices]

    def close(self):
        if self._path is not None:
            del self._mm
            try:
                os.unlink(self._path)
            except OSError:
                pass
            self._path = None
        else:
            self._data = []


class ScratchSpace:
    """Owns a temp directory of scratch vectors for one prover run."""

    def __init__(self, vf: VecOps, dir: str | None = None):
        self.vf = vf
        self._tmp = tempfile.TemporaryDirectory(
            prefix="sszkp-scratch-", dir=dir or os.environ.get("SSZKP_SCRATCH_DIR")
        )
        self._count = 0
        self._vecs: list[ScratchVec] = []

    def vec(self, n: int, name: str = "v") -> ScratchVec:
        if self.vf.backend == "generic":
            sv = ScratchVec(self.vf, n, None)
        else:
            self._count += 1
            path = os.path.join(self._tmp.name, f"{self._count:03d}-{name}.bin")
            sv = ScratchVec(self.vf, n, path)
        self._vecs.append(sv)
        return sv

    def drop(self, sv: ScratchVec):
        sv.close()
        if sv in self._vecs:
            self._vecs.remove(sv)

    def close(self):
        for sv in self._vecs:
            sv.close()
        self._vecs.clear()
        self._tmp.cleanup()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def chunk_ranges(n: int, chunk: int):
    """Yield (start, stop) covering [0, n) in chunk-sized pieces."""
    start = 0
    while start < n:
        stop = min(start + chunk, n)
        yield start, stop
        start = stop
