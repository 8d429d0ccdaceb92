"""Sliding-window duplicate detection over a record stream."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .dedup import (
    BlockScheme,
    DetectionStats,
    Record,
    SignatureIndex,
    Threshold,
    as_threshold,
    delta_pruned,
    effective_scheme,
)
from .errors import IdCollisionError, ZeroWindowError
from .multimetric import ABS, ImbalanceFunction
from .multireal import MultiReal


@dataclass
class StreamVerdict:
    id: str
    matches: list[tuple[str, MultiReal]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "duplicate" if self.matches else "distinct"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "matches": [{"id": i, "delta_mult": d.mult} for i, d in self.matches],
        }


class WindowState:
    """The most recent ``capacity`` records plus an index mirroring them.

    Eviction is FIFO by arrival. Records flagged as duplicates are still
    inserted unless ``drop_duplicates`` is set.
    """

    def __init__(
        self,
        capacity: int,
        eps: Threshold | MultiReal,
        f: ImbalanceFunction = ABS,
        scheme: BlockScheme = BlockScheme(),
        drop_duplicates: bool = False,
    ):
        if capacity < 1:
            raise ZeroWindowError(f"window capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.eps = as_threshold(eps)
        self.f = f
        self.scheme = effective_scheme(scheme, f)
        self.drop_duplicates = drop_duplicates
        self.resident: deque[Record] = deque()
        self.index = SignatureIndex(self.scheme)
        self.stats = DetectionStats()

    def __len__(self):
        return len(self.resident)

    def process(self, T: Record) -> StreamVerdict:
        if T.id in self.index:
            raise IdCollisionError(f"id {T.id!r} is already in the window")
        verdict = StreamVerdict(T.id)
        for other in self.index.candidates(T, self.eps):
            self.stats.comparisons += 1
            delta = delta_pruned(T, other, self.eps, self.f, self.stats)
            if delta is not None:
                verdict.matches.append((other.id, delta))
        self.stats.records += 1
        self.stats.pairs += len(verdict.matches)
        if not (self.drop_duplicates and verdict.matches):
            if len(self.resident) == self.capacity:
                self.index.remove(self.resident.popleft().id)
            self.resident.append(T)
            self.index.insert(T)
        return verdict


def stream_init(
    W: int,
    eps: Threshold | MultiReal,
    f: ImbalanceFunction = ABS,
    scheme: BlockScheme = BlockScheme(),
) -> WindowState:
    return WindowState(W, eps, f, scheme)


def stream_process(state: WindowState, T_new: Record) -> tuple[StreamVerdict, WindowState]:
    return state.process(T_new), state
