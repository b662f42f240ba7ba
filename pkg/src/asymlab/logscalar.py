"""Sign + natural-log magnitude scalars.

All displayed bound formulas are evaluated in this domain so that values like
n^(5n^2/8) at n in the hundreds never leave the representable range. Magnitudes
are mpmath floats carried at 128 bits of working precision (well above the
64 fractional bits the bound comparisons require).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

PRECISION_BITS = 128

_NEG_INF = mpmath.mpf("-inf")


def _work():
    return mpmath.workprec(PRECISION_BITS)


def ln_factorial(n: int) -> mpmath.mpf:
    """ln(n!) at working precision via the log-gamma function."""
    with _work():
        return mpmath.loggamma(n + 1)


def ln_int(n: int) -> mpmath.mpf:
    if n <= 0:
        raise ValueError(f"ln of non-positive integer {n}")
    with _work():
        return mpmath.log(n)


@dataclass(frozen=True, order=False)
class LogScalar:
    """A real number x stored as (sign, ln|x|); sign 0 encodes exact zero."""

    sign: int
    log_mag: mpmath.mpf

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign == 0:
            object.__setattr__(self, "log_mag", _NEG_INF)

    # --- constructors ---

    @classmethod
    def zero(cls) -> "LogScalar":
        return cls(0, _NEG_INF)

    @classmethod
    def from_ln(cls, log_mag, sign: int = 1) -> "LogScalar":
        with _work():
            return cls(sign, mpmath.mpf(log_mag))

    @classmethod
    def from_int(cls, value: int) -> "LogScalar":
        if value == 0:
            return cls.zero()
        with _work():
            return cls(1 if value > 0 else -1, mpmath.log(abs(mpmath.mpf(value))))

    @classmethod
    def from_fraction(cls, value: Fraction) -> "LogScalar":
        if value == 0:
            return cls.zero()
        with _work():
            mag = mpmath.log(abs(value.numerator)) - mpmath.log(value.denominator)
        return cls(1 if value > 0 else -1, mag)

    # --- arithmetic ---

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        if self.sign == 0 or other.sign == 0:
            return LogScalar.zero()
        with _work():
            return LogScalar(self.sign * other.sign, self.log_mag + other.log_mag)

    def __neg__(self) -> "LogScalar":
        return LogScalar(-self.sign, self.log_mag)

    def __add__(self, other: "LogScalar") -> "LogScalar":
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        with _work():
            hi, lo = self, other
            if lo.log_mag > hi.log_mag:
                hi, lo = lo, hi
            delta = mpmath.exp(lo.log_mag - hi.log_mag)
            if hi.sign == lo.sign:
                return LogScalar(hi.sign, hi.log_mag + mpmath.log1p(delta))
            if delta == 1:
                return LogScalar.zero()
            return LogScalar(hi.sign, hi.log_mag + mpmath.log1p(-delta))

    def __sub__(self, other: "LogScalar") -> "LogScalar":
        return self + (-other)

    # --- comparisons (total order on the represented reals) ---

    def _key(self):
        return (self.sign, self.sign * self.log_mag)

    def __lt__(self, other: "LogScalar") -> bool:
        if self.sign != other.sign:
            return self.sign < other.sign
        return self.sign * self.log_mag < other.sign * other.log_mag

    def __le__(self, other: "LogScalar") -> bool:
        return not other < self

    def __gt__(self, other: "LogScalar") -> bool:
        return other < self

    def __ge__(self, other: "LogScalar") -> bool:
        return not self < other

    # --- conversions ---

    def ln(self) -> mpmath.mpf:
        """Natural log of the value; requires a positive value."""
        if self.sign <= 0:
            raise ValueError("ln of a non-positive LogScalar")
        return self.log_mag

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * float(mpmath.exp(self.log_mag))

    def ln_float(self) -> float:
        return float(self.log_mag) if self.sign != 0 else -math.inf

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogScalar(0)"
        s = "-" if self.sign < 0 else ""
        return f"LogScalar({s}exp({mpmath.nstr(self.log_mag, 12)}))"
