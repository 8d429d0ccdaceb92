"""Multi-metrics on multi points, the record distance, open balls and open sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .errors import CenterNotInSpaceError, NotASubmsetError, ParseError, SpaceTooLargeError
from .multireal import ZERO, MultiReal
from .multiset import Multiset, MultiPoint, multi_points, submultisets

MultiMetric = Callable[[MultiPoint, MultiPoint], MultiReal]


def discrete_distance(p: MultiPoint, q: MultiPoint) -> MultiReal:
    if p == q:
        return ZERO
    return MultiReal(1, abs(p.mult - q.mult) + 1)


def lifted_distance(p: MultiPoint, q: MultiPoint) -> MultiReal:
    """Lift ``|x - y|`` on real bases, carrying ``|i - j|`` as the multiplicity."""
    return MultiReal(abs(p.base - q.base), abs(p.mult - q.mult))


METRICS: dict[str, MultiMetric] = {
    "discrete": discrete_distance,
    "lifted": lifted_distance,
}


# ---------------------------------------------------------------------------
# imbalance functions


@dataclass(frozen=True)
class ImbalanceFunction:
    name: str
    fn: Callable[[int, int], int]

    def __call__(self, k: int, l: int) -> int:
        return self.fn(k, l)

    @property
    def is_abs(self) -> bool:
        return self.name == "abs"


def _abs_diff(k: int, l: int) -> int:
    return abs(k - l)


ABS = ImbalanceFunction("abs", _abs_diff)


def check_imbalance(f: Callable[[int, int], int], bound: int = 12) -> str | None:
    """Exhaustively check zero diagonal, symmetry and subadditivity on ``0..bound``.

    Returns a description of the first violation, or None.
    """
    rng = range(bound + 1)
    for k in rng:
        if f(k, k) != 0:
            return f"f({k},{k}) = {f(k, k)} != 0"
    for k, l in itertools.product(rng, rng):
        if f(k, l) < 0:
            return f"f({k},{l}) < 0"
        if f(k, l) != f(l, k):
            return f"f({k},{l}) != f({l},{k})"
    for k, l, m in itertools.product(rng, rng, rng):
        if f(k, m) > f(k, l) + f(l, m):
            return f"f({k},{m}) > f({k},{l}) + f({l},{m})"
    return None


def capped(c: int, bound: int = 12) -> ImbalanceFunction:
    if c < 1:
        raise ValueError("cap must be >= 1")

    def fn(k: int, l: int) -> int:
        return min(abs(k - l), c)

    problem = check_imbalance(fn, bound)
    if problem:
        raise ValueError(f"capped:{c} is not a valid imbalance function: {problem}")
    return ImbalanceFunction(f"capped:{c}", fn)


def parse_imbalance(text: str) -> ImbalanceFunction:
    if text == "abs":
        return ABS
    if text.startswith("capped:"):
        try:
            return capped(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown imbalance function {text!r}")


# ---------------------------------------------------------------------------
# record distance


def count_distance(k: int, l: int, f: ImbalanceFunction = ABS) -> MultiReal:
    return MultiReal(0, f(k, l))


def record_delta(Ti: Multiset, Tj: Multiset, f: ImbalanceFunction = ABS) -> MultiReal:
    """⊕-sum of ``count_distance`` over the union of both supports.

    Every term has value 0, so the sum is accumulated on multiplicities
    alone; the result is identical to folding ``mr_add``.
    """
    total = 0
    if f is ABS:
        for x, k in Ti.items():
            total += abs(k - Tj[x])
        for x, l in Tj.items():
            if not Ti[x]:
                total += l
    else:
        for x in Ti.support | Tj.support:
            total += f(Ti[x], Tj[x])
    return MultiReal(0, total)


# ---------------------------------------------------------------------------
# balls and open sets


def open_ball(M: Multiset, d: MultiMetric, center: MultiPoint, radius: MultiReal) -> set[MultiPoint]:
    if M[center.base] < center.mult:
        raise CenterNotInSpaceError(f"{center} is not a multi point of {M}")
    return {q for q in multi_points(M) if d(center, q) < radius}


def candidate_radii(M: Multiset, d: MultiMetric, center: MultiPoint) -> list[MultiReal]:
    # balls only change at realized distances; R_0^0 is excluded because the
    # resulting empty ball would make every subset open
    radii = {d(center, q) for q in multi_points(M)}
    radii.add(MultiReal(0, 1))
    radii.discard(ZERO)
    return sorted(radii)


def is_open(U: Multiset, M: Multiset, d: MultiMetric) -> bool:
    if not U <= M:
        raise NotASubmsetError(f"{U} is not a submset of {M}")
    points = list(multi_points(M))
    for p in multi_points(U):
        dist = {q: d(p, q) for q in points}
        for r in candidate_radii(M, d, p):
            if all(U[q.base] >= q.mult for q, dq in dist.items() if dq < r):
                break
        else:
            return False
    return True


@dataclass
class TopologyReport:
    submsets: int
    open_count: int
    axioms_hold: bool
    counterexample: str | None = None

    def __str__(self):
        status = "axioms hold" if self.axioms_hold else f"FAILED: {self.counterexample}"
        return f"{self.open_count}/{self.submsets} submsets open; {status}"


def verify_topology(M: Multiset, d: MultiMetric, limit: int = 4096) -> TopologyReport:
    """Enumerate all submsets of M and check the three topology axioms.

    Unions and intersections are checked pairwise, which suffices for a
    finite family.
    """
    size = 1
    for _, k in M.items():
        size *= k + 1
    if size > limit:
        raise SpaceTooLargeError(f"{size} submsets exceeds limit {limit}")

    openness = {U: is_open(U, M, d) for U in submultisets(M)}
    opens = [U for U, flag in openness.items() if flag]
    report = TopologyReport(submsets=len(openness), open_count=len(opens), axioms_hold=True)

    def fail(msg: str) -> TopologyReport:
        report.axioms_hold = False
        report.counterexample = msg
        return report

    if not openness[Multiset()]:
        return fail("empty mset is not open")
    if not openness[M]:
        return fail(f"{M} is not open")
    for U, V in itertools.combinations_with_replacement(opens, 2):
        if not openness[U | V]:
            return fail(f"union of open {U} and {V} is not open")
        if not openness[U & V]:
            return fail(f"intersection of open {U} and {V} is not open")
    return report
