"""Workspace accounting: live field/group element counters with peak tracking.

The meter counts *algorithmic* live state (declared element containers), not
allocator RSS.  Conventions:

* field elements are reported at 32 bytes each and group elements at 48
  bytes, independent of their in-memory representation (configurable);
* SRS tables and the witness generator's O(1) internal state are excluded;
* disk-backed scratch streams are external storage, not live workspace; the
  O(b_blk) windows read from them are tracked;
* O(1) scalar locals inside a function frame are below the meter's
  granularity and are not tracked.

A hard cap (``SSZKP_WORKSPACE_CAP`` bytes, or ``cap_bytes`` on ``reset``)
turns budget violations into ``WorkspaceExceeded`` for test builds.  The
meter also carries the witness-stream pass counter and a live-AuxState
counter used by the schedule tests.
"""

from __future__ import annotations

import os
import threading
from contextlib import contextmanager

FIELD_WIDTH = 32
GROUP_WIDTH = 48


class WorkspaceExceeded(RuntimeError):
    pass


class WorkspaceMeter:
    def __init__(self, field_width: int = FIELD_WIDTH, group_width: int = GROUP_WIDTH):
        self.field_width = field_width
        self.group_width = group_width
        self._lock = threading.Lock()
        self.reset()

    def reset(self, cap_bytes: int | None = None):
        with self._lock:
            self.live_field = 0
            self.live_group = 0
            self.live_aux = 0
            self.peak_field = 0
            self.peak_group = 0
            self.peak_aux = 0
            self.peak_bytes = 0
            self.witness_passes = 0
            env_cap = os.environ.get("SSZKP_WORKSPACE_CAP", "")
            self.cap_bytes = cap_bytes if cap_bytes is not None else (
                int(env_cap) if env_cap else None
            )

    # -- counters ---------------------------------------------------------

    def track_field(self, n: int):
        self._bump("live_field", "peak_field", n)

    def release_field(self, n: int):
        self._bump("live_field", "peak_field", -n)

    def track_group(self, n: int):
        self._bump("live_group", "peak_group", n)

    def release_group(self, n: int):
        self._bump("live_group", "peak_group", -n)

    def track_aux(self, n: int = 1):
        with self._lock:
            self.live_aux += n
            self.peak_aux = max(self.peak_aux, self.live_aux)

    def release_aux(self, n: int = 1):
        with self._lock:
            self.live_aux -= n

    def count_witness_pass(self):
        with self._lock:
            self.witness_passes += 1

    def _bump(self, live_attr: str, peak_attr: str, delta: int):
        with self._lock:
            live = getattr(self, live_attr) + delta
            setattr(self, live_attr, live)
            setattr(self, peak_attr, max(getattr(self, peak_attr), live))
            total = self.live_field * self.field_width + self.live_group * self.group_width
            if total > self.peak_bytes:
                self.peak_bytes = total
            cap = self.cap_bytes
        if cap is not None and total > cap:
            raise WorkspaceExceeded(f"live workspace {total} B exceeds cap {cap} B")

    # -- scoped helpers ----------------------------------------------------

    @contextmanager
    def fields(self, n: int):
        self.track_field(n)
        try:
            yield
        finally:
            self.release_field(n)

    @contextmanager
    def groups(self, n: int):
        self.track_group(n)
        try:
            yield
        finally:
            self.release_group(n)

    @contextmanager
    def aux(self, n: int = 1):
        self.track_aux(n)
        try:
            yield
        finally:
            self.release_aux(n)

    # -- reporting ---------------------------------------------------------

    def live_bytes(self) -> int:
        return self.live_field * self.field_width + self.live_group * self.group_width

    def peak_field_bytes(self) -> int:
        return self.peak_field * self.field_width

    def peak_group_bytes(self) -> int:
        return self.peak_group * self.group_width

    def snapshot(self) -> dict:
        return {
            "live_field": self.live_field,
            "live_group": self.live_group,
            "peak_field": self.peak_field,
            "peak_group": self.peak_group,
            "peak_bytes": self.peak_bytes,
            "peak_field_bytes": self.peak_field_bytes(),
            "peak_group_bytes": self.peak_group_bytes(),
            "witness_passes": self.witness_passes,
        }


METER = WorkspaceMeter()
