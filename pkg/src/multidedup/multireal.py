"""Multi-real numbers: a real value paired with a nonnegative multiplicity.

``MultiReal(a, k)`` is written ``R_a^k``. Addition and multiplication act
componentwise and the order is lexicographic (value first, then
multiplicity), which makes the set a commutative semiring with a total
order. Python integers never wrap, so multiplicities cannot overflow.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from numbers import Real
from typing import Iterable

from .errors import EmptySequenceError, ParseError

LESS, EQUAL, GREATER = -1, 0, 1


@total_ordering
@dataclass(frozen=True, eq=False)
class MultiReal:
    value: Real
    mult: int

    def __post_init__(self):
        if isinstance(self.mult, bool) or not isinstance(self.mult, int):
            raise TypeError(f"multiplicity must be an int, got {self.mult!r}")
        if self.mult < 0:
            raise ValueError(f"multiplicity must be >= 0, got {self.mult}")

    def key(self) -> tuple:
        return (self.value, self.mult)

    def __eq__(self, other):
        if not isinstance(other, MultiReal):
            return NotImplemented
        return self.value == other.value and self.mult == other.mult

    def __lt__(self, other):
        if not isinstance(other, MultiReal):
            return NotImplemented
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __add__(self, other: MultiReal) -> MultiReal:
        return MultiReal(self.value + other.value, self.mult + other.mult)

    def __mul__(self, other: MultiReal) -> MultiReal:
        return MultiReal(self.value * other.value, self.mult * other.mult)

    @property
    def nonnegative(self) -> bool:
        return self.value >= 0

    def __str__(self):
        return f"R{format_value(self.value)}^{self.mult}"

    def __repr__(self):
        return f"MultiReal({self.value!r}, {self.mult})"


ZERO = MultiReal(0, 0)
ONE = MultiReal(1, 1)


def format_value(value: Real) -> str:
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    return repr(value) if isinstance(value, float) else str(value)


_TEXT = re.compile(r"^R(?P<value>[^\^\s]+)\^(?P<mult>\d+)$")


def parse(text: str) -> MultiReal:
    """Parse the ``R<value>^<mult>`` form, e.g. ``R0^4`` or ``R1.5^2``."""
    m = _TEXT.match(text.strip())
    if not m:
        raise ParseError(f"not a multi-real: {text!r}")
    return MultiReal(parse_number(m["value"]), int(m["mult"]))


def parse_number(text: str) -> Real:
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}") from None


def mr_add(a: MultiReal, b: MultiReal) -> MultiReal:
    return a + b


def mr_mul(a: MultiReal, b: MultiReal) -> MultiReal:
    return a * b


def mr_cmp(a: MultiReal, b: MultiReal) -> int:
    """Return ``LESS``, ``EQUAL`` or ``GREATER`` under the lexicographic order."""
    ka, kb = a.key(), b.key()
    if ka < kb:
        return LESS
    if ka == kb:
        return EQUAL
    return GREATER


def mr_min(xs: Iterable[MultiReal]) -> MultiReal:
    xs = list(xs)
    if not xs:
        raise EmptySequenceError()
    return min(xs, key=MultiReal.key)


def mr_sum(xs: Iterable[MultiReal]) -> MultiReal:
    total = ZERO
    for x in xs:
        total = total + x
    return total


# ---------------------------------------------------------------------------
# Law suite (used by ``multidedup verify-algebra``)


@dataclass
class LawReport:
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_multireal(rng: random.Random, nonneg: bool = False) -> MultiReal:
    # exact rationals so that associativity/distributivity hold bit for bit
    lo = 0 if nonneg else -20
    value = Fraction(rng.randint(lo * 4, 80), 4)
    return MultiReal(value, rng.randint(0, 12))


def check_laws(a: MultiReal, b: MultiReal, c: MultiReal) -> list[str]:
    """Return the names of semiring/order laws violated by the triple."""
    bad = []
    if (a + b) + c != a + (b + c):
        bad.append("add-associative")
    if (a * b) * c != a * (b * c):
        bad.append("mul-associative")
    if a + b != b + a:
        bad.append("add-commutative")
    if a * b != b * a:
        bad.append("mul-commutative")
    if a + ZERO != a or a * ONE != a:
        bad.append("identity")
    if a * (b + c) != (a * b) + (a * c):
        bad.append("distributive")
    outcomes = (a < b, a == b, b < a)
    if sum(outcomes) != 1:
        bad.append("total")
    if a <= b and b <= c and not a <= c:
        bad.append("transitive")
    if a <= b and b <= a and a != b:
        bad.append("antisymmetric")
    if a <= b and not (a + c) <= (b + c):
        bad.append("add-monotone")
    # multiplicative compatibility needs a strictly positive value factor:
    # R_1^5 <= R_2^0 but R_1^5 * R_0^1 = R_0^5 > R_0^0 = R_2^0 * R_0^1
    if c.value > 0 and a <= b and not (a * c) <= (b * c):
        bad.append("mul-monotone")
    if c.value >= 0 and not a <= a + c:
        bad.append("accumulation")
    return bad


def run_law_suite(n: int = 10_000, seed: int = 0) -> LawReport:
    rng = random.Random(seed)
    report = LawReport()
    for _ in range(n):
        a, b, c = (random_multireal(rng) for _ in range(3))
        for law in check_laws(a, b, c):
            report.failures.append(f"{law}: a={a} b={b} c={c}")
        report.checked += 1
    return report
