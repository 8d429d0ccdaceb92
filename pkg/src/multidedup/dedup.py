"""Batch duplicate detection over mset-valued records.

``detect_exhaustive`` compares every unordered pair. ``detect_blocked``
restricts comparisons to index candidates and stops each distance
evaluation as soon as the partial sum reaches the threshold.

Cardinality banding is lossless for the ``abs`` imbalance because the L1
distance between count vectors is at least the difference of their sums.
Support hashing is lossy: duplicates whose supports differ are missed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    AttributeOutsideUniverseError,
    EpsilonMustBePositiveError,
    IdCollisionError,
    ParseError,
)
from .multimetric import ABS, ImbalanceFunction, record_delta
from .multireal import ZERO, MultiReal, parse_number
from .multiset import Multiset

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Record:
    id: str
    attrs: Multiset

    def to_json(self) -> str:
        return json.dumps({"id": self.id, "attrs": dict(self.attrs.items())}, ensure_ascii=False)


@dataclass(frozen=True)
class Signature:
    counts: tuple[int, ...]
    cardinality: int


def infer_universe(records: Iterable[Record]) -> tuple:
    universe: set = set()
    for r in records:
        universe |= r.attrs.support
    return tuple(sorted(universe))


def signature(T: Record, universe: Sequence) -> Signature:
    outside = T.attrs.support - set(universe)
    if outside:
        raise AttributeOutsideUniverseError(f"record {T.id}: {sorted(outside)} not in universe")
    counts = tuple(T.attrs[x] for x in universe)
    return Signature(counts, sum(counts))


@dataclass(frozen=True)
class Threshold:
    epsilon: MultiReal

    def __post_init__(self):
        if not ZERO < self.epsilon:
            raise EpsilonMustBePositiveError(f"epsilon must exceed R0^0, got {self.epsilon}")

    @classmethod
    def parse(cls, text: str) -> Threshold:
        """``"<value>:<mult>"`` or a bare multiplicity (value 0)."""
        value, _, mult = text.rpartition(":")
        try:
            k = int(mult)
        except ValueError:
            raise ParseError(f"bad epsilon {text!r}") from None
        return cls(MultiReal(parse_number(value) if value else 0, k))

    @property
    def mult_limit(self) -> float:
        """Smallest partial multiplicity (at value 0) that is not below epsilon."""
        return math.inf if self.epsilon.value > 0 else self.epsilon.mult

    def __str__(self):
        return str(self.epsilon)


def as_threshold(eps: Threshold | MultiReal) -> Threshold:
    return eps if isinstance(eps, Threshold) else Threshold(eps)


@dataclass(frozen=True, order=True)
class DuplicatePair:
    left: str
    right: str
    delta: MultiReal = field(compare=False)

    @classmethod
    def of(cls, a: str, b: str, delta: MultiReal) -> DuplicatePair:
        return cls(a, b, delta) if a < b else cls(b, a, delta)

    def to_dict(self) -> dict:
        return {
            "left": self.left,
            "right": self.right,
            "delta_value": self.delta.value,
            "delta_mult": self.delta.mult,
        }


@dataclass(frozen=True)
class BlockScheme:
    kind: str = "card_band"
    width: int = 1

    def __post_init__(self):
        if self.kind not in ("card_band", "support_hash", "none"):
            raise ValueError(f"unknown block scheme {self.kind!r}")
        if self.width < 1:
            raise ValueError("card_band width must be >= 1")

    @classmethod
    def parse(cls, text: str) -> BlockScheme:
        if text == "none":
            return cls("none")
        if text == "support":
            return cls("support_hash")
        if text.startswith("card:"):
            try:
                return cls("card_band", int(text[5:]))
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        raise ParseError(f"unknown block scheme {text!r}")

    @property
    def lossy(self) -> bool:
        return self.kind == "support_hash"


NO_BLOCKING = BlockScheme("none")


def effective_scheme(scheme: BlockScheme, f: ImbalanceFunction) -> BlockScheme:
    """Cardinality banding is only safe under ``abs``; otherwise compare everything."""
    if scheme.kind == "card_band" and not f.is_abs:
        log.warning("card_band blocking is unsafe for imbalance %s; using no blocking", f.name)
        return NO_BLOCKING
    return scheme


def support_key(attrs: Multiset) -> str:
    joined = "\x1f".join(str(x) for x in sorted(attrs.support))
    return hashlib.blake2b(joined.encode("utf-8"), digest_size=12).hexdigest()


def block_key(T: Record, scheme: BlockScheme):
    if scheme.kind == "support_hash":
        return support_key(T.attrs)
    if scheme.kind == "card_band":
        return T.attrs.cardinality // scheme.width
    return None


@dataclass
class DetectionStats:
    records: int = 0
    blocks: int = 0
    comparisons: int = 0
    pruned: int = 0
    terms: int = 0
    pairs: int = 0

    def summary(self) -> str:
        return (
            f"records={self.records} blocks={self.blocks} comparisons={self.comparisons} "
            f"pruned={self.pruned} pairs={self.pairs}"
        )


class SignatureIndex:
    """Blocked index over records supporting insert, remove and candidate queries.

    Single writer. Candidates come back in insertion order.
    """

    def __init__(self, scheme: BlockScheme = BlockScheme(), universe: Sequence | None = None):
        self.scheme = scheme
        self.universe = tuple(universe) if universe is not None else None
        self._entries: dict[str, tuple[int, Record, int]] = {}  # id -> (seq, record, card)
        self._blocks: dict = {}
        self._seq = 0

    def __len__(self):
        return len(self._entries)

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._entries

    @property
    def block_count(self) -> int:
        return len(self._blocks)

    def insert(self, T: Record) -> None:
        if T.id in self._entries:
            raise IdCollisionError(f"id {T.id!r} already indexed")
        if self.universe is not None:
            card = signature(T, self.universe).cardinality
        else:
            card = T.attrs.cardinality
        self._entries[T.id] = (self._seq, T, card)
        self._seq += 1
        self._blocks.setdefault(block_key(T, self.scheme), {})[T.id] = None

    def remove(self, record_id: str) -> Record:
        _, T, _ = self._entries.pop(record_id)
        key = block_key(T, self.scheme)
        block = self._blocks[key]
        del block[record_id]
        if not block:
            del self._blocks[key]
        return T

    def records(self) -> list[Record]:
        return [T for _, T, _ in self._entries.values()]

    def candidates(self, T: Record, eps: Threshold | MultiReal) -> list[Record]:
        eps = as_threshold(eps)
        kind = self.scheme.kind
        if kind == "none" or (kind == "card_band" and eps.epsilon.value > 0):
            return self.records()
        if kind == "support_hash":
            ids = self._blocks.get(support_key(T.attrs), {})
            return [self._entries[i][1] for i in ids]
        card = T.attrs.cardinality
        reach = eps.epsilon.mult - 1
        lo, hi = max(card - reach, 0), card + reach
        w = self.scheme.width
        found = []
        for band in range(lo // w, hi // w + 1):
            for i in self._blocks.get(band, ()):
                seq, other, c = self._entries[i]
                if abs(c - card) <= reach:
                    found.append((seq, other))
        found.sort(key=lambda pair: pair[0])
        return [other for _, other in found]


def candidates(index: SignatureIndex, T: Record, eps: Threshold | MultiReal) -> list[Record]:
    return index.candidates(T, eps)


def delta_pruned(
    Ti: Record,
    Tj: Record,
    eps: Threshold | MultiReal,
    f: ImbalanceFunction = ABS,
    stats: DetectionStats | None = None,
) -> MultiReal | None:
    """Exact delta if it is below ``eps``, else None.

    Terms are accumulated in sorted attribute order and evaluation stops as
    soon as the partial sum reaches ``eps``; every term is >= R0^0, so the
    partial sum never decreases and the early exit cannot change the
    decision.
    """
    limit = as_threshold(eps).mult_limit
    a, b = Ti.attrs, Tj.attrs
    total = terms = 0
    for x in sorted(a.support | b.support):
        total += f(a[x], b[x])
        terms += 1
        if total >= limit:
            if stats is not None:
                stats.terms += terms
                stats.pruned += 1
            return None
    if stats is not None:
        stats.terms += terms
    return MultiReal(0, total)


def check_unique_ids(records: Sequence[Record]) -> None:
    seen: set[str] = set()
    for r in records:
        if r.id in seen:
            raise IdCollisionError(f"duplicate record id {r.id!r}")
        seen.add(r.id)


def detect_exhaustive(
    records: Sequence[Record],
    eps: Threshold | MultiReal,
    f: ImbalanceFunction = ABS,
    stats: DetectionStats | None = None,
) -> list[DuplicatePair]:
    """Compare all n(n-1)/2 pairs without pruning. Output sorted by (left, right)."""
    eps = as_threshold(eps).epsilon
    check_unique_ids(records)
    stats = stats if stats is not None else DetectionStats()
    stats.records = len(records)
    stats.blocks = 1 if records else 0
    pairs = []
    for i, Ti in enumerate(records):
        for Tj in records[i + 1:]:
            stats.comparisons += 1
            delta = record_delta(Ti.attrs, Tj.attrs, f)
            if delta < eps:
                pairs.append(DuplicatePair.of(Ti.id, Tj.id, delta))
    pairs.sort()
    stats.pairs = len(pairs)
    return pairs


def detect_blocked(
    records: Sequence[Record],
    eps: Threshold | MultiReal,
    f: ImbalanceFunction = ABS,
    scheme: BlockScheme = BlockScheme(),
    stats: DetectionStats | None = None,
    universe: Sequence | None = None,
) -> list[DuplicatePair]:
    """Compare each record only with previously indexed candidates, with pruning."""
    eps = as_threshold(eps)
    check_unique_ids(records)
    scheme = effective_scheme(scheme, f)
    stats = stats if stats is not None else DetectionStats()
    stats.records = len(records)
    index = SignatureIndex(scheme, universe)
    pairs = []
    for T in records:
        for other in index.candidates(T, eps):
            stats.comparisons += 1
            delta = delta_pruned(T, other, eps, f, stats)
            if delta is not None:
                pairs.append(DuplicatePair.of(T.id, other.id, delta))
        index.insert(T)
    stats.blocks = index.block_count
    pairs.sort()
    stats.pairs = len(pairs)
    return pairs
