"""GF(4) arithmetic and the trace-Hermitian / symplectic forms.

An element of GF(4) is the bit pair (a, b) standing for a + w*b, packed into
the integer ``a | (b << 1)``: 0 -> 0, 1 -> 1, 2 -> w, 3 -> w^2 = 1 + w.
Vectors keep the two parts as separate bit masks, coordinate ``j`` (1-based)
living in bit ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

ZERO, ONE, W, WBAR = 0, 1, 2, 3
SYMBOLS = {ZERO: "0", ONE: "1", W: "w", WBAR: "W"}
_FROM_SYMBOL = {v: k for k, v in SYMBOLS.items()}


def gf4_add(x: int, y: int) -> int:
    return x ^ y


def gf4_mul(x: int, y: int) -> int:
    """Field product with w^2 = w + 1."""
    xa, xb = x & 1, x >> 1
    ya, yb = y & 1, y >> 1
    # (xa + xb w)(ya + yb w) = xa ya + (xa yb + xb ya) w + xb yb (w + 1)
    a = (xa & ya) ^ (xb & yb)
    b = (xa & yb) ^ (xb & ya) ^ (xb & yb)
    return a | (b << 1)


def gf4_square(x: int) -> int:
    return gf4_mul(x, x)


@dataclass(frozen=True)
class F4Vector:
    """A vector over GF(4) as two bit masks: a (coefficient of 1), b (of w)."""

    length: int
    a: int = 0
    b: int = 0

    def __post_init__(self):
        top = 1 << self.length
        if self.a < 0 or self.b < 0 or self.a >= top or self.b >= top:
            raise ValueError("bit mask exceeds vector length")

    @classmethod
    def from_symbols(cls, entries: Sequence[int]) -> F4Vector:
        a = b = 0
        for j, x in enumerate(entries):
            if x & 1:
                a |= 1 << j
            if x & 2:
                b |= 1 << j
        return cls(len(entries), a, b)

    @classmethod
    def parse(cls, text: str) -> F4Vector:
        return cls.from_symbols([_FROM_SYMBOL[c] for c in text.strip()])

    def entry(self, j: int) -> int:
        """Coordinate ``j`` (1-based) as a packed GF(4) element."""
        if not 1 <= j <= self.length:
            raise IndexError(j)
        return ((self.a >> (j - 1)) & 1) | (((self.b >> (j - 1)) & 1) << 1)

    def symbols(self) -> list[int]:
        return [self.entry(j) for j in range(1, self.length + 1)]

    def __str__(self) -> str:
        return "".join(SYMBOLS[x] for x in self.symbols())

    def __add__(self, other: F4Vector) -> F4Vector:
        _check_lengths(self, other)
        return F4Vector(self.length, self.a ^ other.a, self.b ^ other.b)

    @property
    def weight(self) -> int:
        return (self.a | self.b).bit_count()


def _check_lengths(x: F4Vector, y: F4Vector) -> None:
    if x.length != y.length:
        raise ValueError(f"length mismatch: {x.length} != {y.length}")


def trace_hermitian(x: F4Vector, y: F4Vector) -> int:
    """sum_j x_j y_j^2 + x_j^2 y_j, evaluated entrywise in GF(4)."""
    _check_lengths(x, y)
    total = ZERO
    for xj, yj in zip(x.symbols(), y.symbols()):
        total ^= gf4_mul(xj, gf4_square(yj)) ^ gf4_mul(gf4_square(xj), yj)
    if total not in (ZERO, ONE):
        raise ArithmeticError("trace form left GF(2)")
    return total


def symplectic_form(x: F4Vector, y: F4Vector) -> int:
    """Parity of |x.a & y.b| + |x.b & y.a|; agrees with trace_hermitian."""
    _check_lengths(x, y)
    return ((x.a & y.b).bit_count() ^ (x.b & y.a).bit_count()) & 1
