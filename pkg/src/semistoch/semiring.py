"""Commutative semirings with exact arithmetic.

Every weight in this library lives in a commutative semiring chosen at
runtime.  Instances bundle the carrier checks, the two monoid operations,
decidable equality, and a partial exact division used when conditionals
are constructible.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional

from .errors import CapabilityError, ShapeError

Value = Any

# Conditional synthesis strategies.
DIVISION = "division"
ORDERED_IDEMPOTENT = "ordered-idempotent"
NONE = "none"


class Semiring:
    """Base class: a commutative semiring with decidable equality.

    Subclasses fix the carrier and operations.  ``try_div`` is the partial
    exact division: it returns a value ``q`` with ``mul(q, b) == a`` when one
    exists (the least such value when several do), else ``None``.
    """

    name: str = "?"
    is_entire: bool = False
    supports_conditionals: bool = False
    conditional_strategy: str = NONE
    zero: Value = None
    one: Value = None

    def check(self, value: Value) -> Value:
        """Validate and canonicalize a carrier value; raise ShapeError otherwise."""
        raise NotImplementedError

    def add(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def mul(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def eq(self, a: Value, b: Value) -> bool:
        return self.check(a) == self.check(b)

    def is_zero(self, a: Value) -> bool:
        return self.eq(a, self.zero)

    def sum(self, values: Iterable[Value]) -> Value:
        total = self.zero
        for value in values:
            total = self.add(total, value)
        return total

    def try_div(self, a: Value, b: Value) -> Optional[Value]:
        raise NotImplementedError

    def parse(self, text: str) -> Value:
        raise NotImplementedError

    def format(self, value: Value) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<semiring {self.name}>"


class RationalSemiring(Semiring):
    """Nonnegative rationals under + and *.

    The carrier is Fraction values >= 0 (a semiring, not a ring: no
    subtraction).  Entire, and division by nonzero elements is total, so
    conditionals are built by exact division.
    """

    name = "rational"
    is_entire = True
    supports_conditionals = True
    conditional_strategy = DIVISION
    zero = Fraction(0)
    one = Fraction(1)

    def check(self, value):
        if isinstance(value, int):
            value = Fraction(value)
        if not isinstance(value, Fraction):
            raise ShapeError(f"expected a nonnegative rational, got {value!r}")
        if value < 0:
            raise ShapeError(f"negative weight {value} outside the carrier")
        return value

    def add(self, a, b):
        return self.check(a) + self.check(b)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def try_div(self, a, b):
        a, b = self.check(a), self.check(b)
        if b == 0:
            return None
        return a / b

    def parse(self, text):
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ShapeError(f"bad rational literal {text!r}") from exc
        return self.check(value)

    def format(self, value):
        return str(self.check(value))


@dataclass(frozen=True, order=True)
class Tri:
    """One of the three truth levels 0 < eps < 1."""

    level: int

    def __post_init__(self) -> None:
        if self.level not in (0, 1, 2):
            raise ShapeError(f"no truth level {self.level!r}")

    def __repr__(self) -> str:
        return ("0", "eps", "1")[self.level]


TRI_ZERO = Tri(0)
TRI_EPS = Tri(1)
TRI_ONE = Tri(2)
_TRI_ALL = (TRI_ZERO, TRI_EPS, TRI_ONE)
_TRI_NAMES = {"0": TRI_ZERO, "eps": TRI_EPS, "ε": TRI_EPS, "1": TRI_ONE}


class TrilatticeSemiring(Semiring):
    """Totally ordered idempotent semiring on {0, eps, 1}.

    Addition is max and multiplication is min, so 1 + 1 = 1 and
    eps * eps = eps.  Entire, idempotent, and ordered, which is enough to
    build conditionals without division.
    """

    name = "trilattice"
    is_entire = True
    supports_conditionals = True
    conditional_strategy = ORDERED_IDEMPOTENT
    zero = TRI_ZERO
    one = TRI_ONE

    def check(self, value):
        if not isinstance(value, Tri):
            raise ShapeError(f"expected a trilattice level, got {value!r}")
        return value

    def add(self, a, b):
        return max(self.check(a), self.check(b))

    def mul(self, a, b):
        return min(self.check(a), self.check(b))

    def try_div(self, a, b):
        a, b = self.check(a), self.check(b)
        for q in _TRI_ALL:  # ascending, so the first hit is the least quotient
            if min(q, b) == a:
                return q
        return None

    def parse(self, text):
        try:
            return _TRI_NAMES[text]
        except KeyError as exc:
            raise ShapeError(f"bad trilattice literal {text!r}") from exc

    def format(self, value):
        return repr(self.check(value))


class PairSemiring(Semiring):
    """Componentwise product of a semiring with itself.

    Not entire even when the base is: (one, zero) * (zero, one) = zero.
    There is no conditional strategy for it; operations that need
    conditionals refuse to run.
    """

    is_entire = False
    supports_conditionals = False
    conditional_strategy = NONE

    def __init__(self, base: Semiring, name: str):
        self.base = base
        self.name = name
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.one)

    def check(self, value):
        if not (isinstance(value, tuple) and len(value) == 2):
            raise ShapeError(f"expected a pair value, got {value!r}")
        return (self.base.check(value[0]), self.base.check(value[1]))

    def add(self, a, b):
        a, b = self.check(a), self.check(b)
        return (self.base.add(a[0], b[0]), self.base.add(a[1], b[1]))

    def mul(self, a, b):
        a, b = self.check(a), self.check(b)
        return (self.base.mul(a[0], b[0]), self.base.mul(a[1], b[1]))

    def try_div(self, a, b):
        a, b = self.check(a), self.check(b)
        parts = []
        for x, y in zip(a, b):
            if self.base.is_zero(y):
                if not self.base.is_zero(x):
                    return None
                parts.append(self.base.zero)  # unconstrained component: least witness
            else:
                q = self.base.try_div(x, y)
                if q is None:
                    return None
                parts.append(q)
        return tuple(parts)

    def parse(self, text):
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ShapeError(f"bad pair literal {text!r}")
        parts = body[1:-1].split(",")
        if len(parts) != 2:
            raise ShapeError(f"bad pair literal {text!r}")
        return (self.base.parse(parts[0].strip()), self.base.parse(parts[1].strip()))

    def format(self, value):
        value = self.check(value)
        return f"({self.base.format(value[0])},{self.base.format(value[1])})"


RATIONAL = RationalSemiring()
TRILATTICE = TrilatticeSemiring()
PAIR_RATIONAL = PairSemiring(RATIONAL, "pair-rational")

SEMIRINGS = {sr.name: sr for sr in (RATIONAL, TRILATTICE, PAIR_RATIONAL)}


def semiring_by_name(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError as exc:
        raise CapabilityError(f"unknown semiring {name!r}") from exc


def same_semiring(a: Semiring, b: Semiring) -> None:
    if a.name != b.name:
        raise ShapeError(f"mixed semirings: {a.name} vs {b.name}")
