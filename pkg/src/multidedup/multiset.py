"""Finite multisets (msets), bounded mset spaces and multi points."""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping

from .errors import InvalidCountError, OutOfSpaceError, ParseError


class Multiset:
    """Immutable mset: attribute -> positive count.

    Zero counts are dropped on construction, so two msets compare equal
    exactly when their count functions agree everywhere. Attributes iterate
    in sorted order (code point order for text, which matches UTF-8 byte
    order).
    """

    __slots__ = ("_counts", "_hash", "_card")

    def __init__(self, counts: Mapping[Hashable, int] | Iterable[tuple[Hashable, int]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        merged: dict = {}
        for x, k in items:
            if isinstance(k, bool) or not isinstance(k, int) or k < 0:
                raise InvalidCountError(f"count for {x!r} must be a nonnegative int, got {k!r}")
            if k:
                merged[x] = merged.get(x, 0) + k
        self._counts = {x: merged[x] for x in sorted(merged)}
        self._card = sum(self._counts.values())
        self._hash = None

    @classmethod
    def from_tokens(cls, tokens: Iterable[Hashable]) -> Multiset:
        return cls(Counter(tokens))

    def __getitem__(self, x) -> int:
        return self._counts.get(x, 0)

    count = __getitem__

    def __iter__(self) -> Iterator:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def items(self):
        return self._counts.items()

    @property
    def support(self) -> frozenset:
        return frozenset(self._counts)

    @property
    def cardinality(self) -> int:
        return self._card

    def __eq__(self, other):
        if not isinstance(other, Multiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._counts.items()))
        return self._hash

    def __le__(self, other: Multiset) -> bool:
        return all(k <= other[x] for x, k in self.items())

    def __or__(self, other: Multiset) -> Multiset:
        return combine("union", self, other)

    def __and__(self, other: Multiset) -> Multiset:
        return combine("intersection", self, other)

    def __add__(self, other: Multiset) -> Multiset:
        return combine("sum", self, other)

    def __sub__(self, other: Multiset) -> Multiset:
        return combine("difference", self, other)

    def __str__(self):
        return "{" + ", ".join(f"{k}/{x}" for x, k in self.items()) + "}"

    def __repr__(self):
        return f"Multiset({str(self)})"


EMPTY = Multiset()

_ENTRY = re.compile(r"^\s*(\d+)\s*/\s*(.+?)\s*$")


def parse_multiset(text: str) -> Multiset:
    """Parse the canonical ``{k1/x1, k2/x2}`` form. Tokens must not contain ``,``."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"not an mset: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return EMPTY
    pairs = []
    for part in body.split(","):
        m = _ENTRY.match(part)
        if not m:
            raise ParseError(f"bad mset entry {part!r}")
        pairs.append((m[2], int(m[1])))
    return Multiset(pairs)


def count(M: Multiset, x) -> int:
    return M[x]


def combine(kind: str, P: Multiset, Q: Multiset) -> Multiset:
    """Pointwise union (max), intersection (min), sum, or difference ``P - Q`` truncated at 0."""
    keys = P.support | Q.support
    if kind == "union":
        return Multiset((x, max(P[x], Q[x])) for x in keys)
    if kind == "intersection":
        return Multiset((x, min(P[x], Q[x])) for x in keys)
    if kind == "sum":
        return Multiset((x, P[x] + Q[x]) for x in keys)
    if kind == "difference":
        return Multiset((x, max(P[x] - Q[x], 0)) for x in keys)
    raise ValueError(f"unknown combine kind {kind!r}")


def fold(kind: str, msets: Iterable[Multiset]) -> Multiset:
    """Union or intersection over a finite nonempty family."""
    it = iter(msets)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("fold over an empty family") from None
    for M in it:
        acc = combine(kind, acc, M)
    return acc


def relate(kind: str, P: Multiset, Q: Multiset) -> bool:
    if kind == "equal":
        return P == Q
    if kind == "submset":
        return P <= Q
    raise ValueError(f"unknown relation {kind!r}")


def describe(M: Multiset) -> tuple[frozenset, int]:
    return M.support, M.cardinality


@dataclass(frozen=True)
class BoundedSpace:
    """All msets over ``universe`` with every count at most ``w``."""

    universe: tuple
    w: int

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(sorted(set(self.universe))))
        if not self.universe:
            raise ValueError("universe must be nonempty")
        if self.w < 1:
            raise ValueError("w must be >= 1")

    def __contains__(self, M: Multiset) -> bool:
        return all(x in self.universe and k <= self.w for x, k in M.items())

    def members(self) -> Iterator[Multiset]:
        for counts in itertools.product(range(self.w + 1), repeat=len(self.universe)):
            yield Multiset(zip(self.universe, counts))


def complement(M: Multiset, S: BoundedSpace) -> Multiset:
    if M not in S:
        raise OutOfSpaceError(f"{M} is not in [{S.universe}]^{S.w}")
    return Multiset((x, S.w - M[x]) for x in S.universe)


def submultisets(M: Multiset) -> Iterator[Multiset]:
    """Every P with P <= M, in lexicographic count order."""
    keys = list(M)
    for counts in itertools.product(*(range(M[x] + 1) for x in keys)):
        yield Multiset(zip(keys, counts))


@dataclass(frozen=True, order=True)
class MultiPoint:
    base: Hashable
    mult: int

    def __post_init__(self):
        if self.mult < 1:
            raise ValueError(f"multi point multiplicity must be >= 1, got {self.mult}")

    def __str__(self):
        return f"P{self.base}^{self.mult}"


def multi_points(M: Multiset) -> Iterator[MultiPoint]:
    """Lazily yield every P_x^k with x in the support and 1 <= k <= C_M(x)."""
    for x, k in M.items():
        for i in range(1, k + 1):
            yield MultiPoint(x, i)
