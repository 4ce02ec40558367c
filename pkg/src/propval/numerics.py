"""Complex scalar arithmetic with explicit primitive-operation counting.

Every algorithm in this package charges one unit per complex
multiplication, division, addition/subtraction, or comparison.  Counts
accumulate in an :class:`OpCounter` passed around as an explicit
argument; there is no process-global counting state, so concurrent runs
with independent counters never interfere.  Passing ``None`` as the
counter disables counting without changing any numeric result.

Equality of scalars is decided by a single :class:`TolerancePolicy`
shared across the package, since the values flowing through the
pipelines involve irrational entries evaluated in double precision.
"""

from __future__ import annotations

from dataclasses import dataclass

#: Scalar type flowing through the counted pipelines.  Plain ``complex``
#: is used directly; counting lives in the ``counted_*`` helpers below.
CountedComplex = complex


class PropvalError(Exception):
    """Base class for every validation error raised by this package."""


@dataclass
class OpCounter:
    """Tally of primitive operations.

    One complex multiply, divide, add/subtract, or comparison counts as
    exactly one unit.  Total work is the sum of the four tallies.
    """

    mul: int = 0
    div: int = 0
    add_sub: int = 0
    cmp: int = 0

    @property
    def total(self) -> int:
        return self.mul + self.div + self.add_sub + self.cmp

    def snapshot(self) -> "OpCounter":
        return OpCounter(self.mul, self.div, self.add_sub, self.cmp)

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.mul + other.mul,
            self.div + other.div,
            self.add_sub + other.add_sub,
            self.cmp + other.cmp,
        )

    def __sub__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.mul - other.mul,
            self.div - other.div,
            self.add_sub - other.add_sub,
            self.cmp - other.cmp,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "mul": self.mul,
            "div": self.div,
            "add_sub": self.add_sub,
            "cmp": self.cmp,
            "total": self.total,
        }


@dataclass(frozen=True)
class TolerancePolicy:
    """Symmetric approximate equality: |a-b| <= abs_eps + rel_eps*max(|a|,|b|)."""

    abs_eps: float = 1e-9
    rel_eps: float = 1e-9

    def equal(self, a: complex, b: complex) -> bool:
        return abs(a - b) <= self.abs_eps + self.rel_eps * max(abs(a), abs(b))

    def is_zero(self, a: complex) -> bool:
        return abs(a) <= self.abs_eps


DEFAULT_TOLERANCE = TolerancePolicy()


def counted_mul(a: complex, b: complex, ctx: OpCounter | None) -> complex:
    """Product a*b; charges one multiplication to ctx."""
    if ctx is not None:
        ctx.mul += 1
    return a * b


def counted_div(a: complex, b: complex, ctx: OpCounter | None) -> complex:
    """Quotient a/b; charges one division to ctx."""
    if ctx is not None:
        ctx.div += 1
    return a / b


def counted_add(a: complex, b: complex, ctx: OpCounter | None) -> complex:
    if ctx is not None:
        ctx.add_sub += 1
    return a + b


def counted_sub(a: complex, b: complex, ctx: OpCounter | None) -> complex:
    if ctx is not None:
        ctx.add_sub += 1
    return a - b


def counted_eq(
    a: complex, b: complex, tol: TolerancePolicy, ctx: OpCounter | None
) -> bool:
    """Tolerance equality of two scalars; charges one comparison to ctx."""
    if ctx is not None:
        ctx.cmp += 1
    return tol.equal(a, b)
