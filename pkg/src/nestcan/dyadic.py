"""Exact dyadic rationals p / 2**q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True, init=False)
class DyadicRational:
    """A non-negative rational ``numerator / 2**log2_denominator`` in lowest terms."""

    numerator: int
    log2_denominator: int

    def __init__(self, numerator: int, log2_denominator: int = 0):
        if numerator < 0 or log2_denominator < 0:
            raise ValueError("dyadic rationals here are non-negative with q >= 0")
        if numerator == 0:
            log2_denominator = 0
        else:
            shift = min((numerator & -numerator).bit_length() - 1, log2_denominator)
            numerator >>= shift
            log2_denominator -= shift
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "log2_denominator", log2_denominator)

    @classmethod
    def from_fraction(cls, value: Fraction) -> DyadicRational:
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not dyadic")
        return cls(value.numerator, den.bit_length() - 1)

    @property
    def denominator(self) -> int:
        return 1 << self.log2_denominator

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def _align(self, other: DyadicRational) -> tuple[int, int, int]:
        q = max(self.log2_denominator, other.log2_denominator)
        return (self.numerator << (q - self.log2_denominator),
                other.numerator << (q - other.log2_denominator), q)

    def __add__(self, other):
        if isinstance(other, int):
            other = DyadicRational(other)
        if not isinstance(other, DyadicRational):
            return NotImplemented
        a, b, q = self._align(other)
        return DyadicRational(a + b, q)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, int):
            return DyadicRational(self.numerator * other, self.log2_denominator)
        if isinstance(other, DyadicRational):
            return DyadicRational(self.numerator * other.numerator,
                                  self.log2_denominator + other.log2_denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, DyadicRational):
            return (self.numerator, self.log2_denominator) == (
                other.numerator, other.log2_denominator)
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, DyadicRational):
            a, b, _ = self._align(other)
            return a < b
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __float__(self) -> float:
        return self.numerator / self.denominator

    def __str__(self) -> str:
        if self.log2_denominator == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"DyadicRational({self.numerator}, {self.log2_denominator})"

    def decimal(self, digits: int = 6) -> str:
        """Round-half-up decimal rendering with a fixed number of digits."""
        scaled = (self.numerator * 10**digits * 2 + self.denominator) // (2 * self.denominator)
        whole, frac = divmod(scaled, 10**digits)
        return f"{whole}.{frac:0{digits}d}" if digits else str(whole)

    def to_json(self) -> dict:
        return {"num": self.numerator, "log2_den": self.log2_denominator,
                "decimal": self.decimal()}

    @classmethod
    def from_json(cls, obj: dict) -> DyadicRational:
        return cls(int(obj["num"]), int(obj["log2_den"]))


ZERO = DyadicRational(0)
