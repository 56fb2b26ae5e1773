"""Overflow-free scalar arithmetic and combinatorial building blocks.

Quantities such as ``(2k-1)!!``, ``C(n+k, n-k)`` or ultraspherical values
``P_m^(lambda)(1)`` leave the double range long before the ratios built from
them do.  Everything here works with natural logarithms of magnitudes and
keeps the sign separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, LogOverflowError

__all__ = [
    "LogScaled",
    "LOG_MAX_FLOAT",
    "log_double_factorial",
    "log_pochhammer",
    "log_binomial",
    "log_binomial_real",
    "log_step2_product",
]

LOG_MAX_FLOAT = math.log(1.7976931348623157e308)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG2 = math.log(2.0)

# Double factorials at or below this index are formed as exact integers.
_DFACT_LOOP_MAX = 64
# Pochhammer symbols up to this length are summed factor by factor.
_POCH_LOOP_MAX = 4096
_COMB_EXACT_MAX = 4096


@dataclass(frozen=True)
class LogScaled:
    """A real number stored as ``sign * exp(logmag)``.

    ``sign == 0`` encodes an exact zero; ``logmag`` is then ignored (and
    normalised to ``-inf``).
    """

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.sign == 0 and self.logmag != -math.inf:
            object.__setattr__(self, "logmag", -math.inf)
        elif self.sign != 0 and math.isnan(self.logmag):
            raise DomainError("logmag is NaN")

    @classmethod
    def from_float(cls, x: float) -> "LogScaled":
        if x == 0.0:
            return cls(0, -math.inf)
        if not math.isfinite(x):
            raise DomainError(f"cannot log-scale non-finite value {x!r}")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, logmag: float, sign: int = 1) -> "LogScaled":
        return cls(sign, logmag)

    @classmethod
    def zero(cls) -> "LogScaled":
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> "LogScaled":
        return cls(1, 0.0)

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def to_float(self) -> float:
        """Convert back to a float; refuses values beyond the double range."""
        if self.sign == 0:
            return 0.0
        if self.logmag > LOG_MAX_FLOAT:
            raise LogOverflowError(
                f"exp({self.logmag:.6g}) exceeds the largest finite double"
            )
        return self.sign * math.exp(self.logmag)

    __float__ = to_float

    def log10(self) -> float:
        return self.logmag / math.log(10.0)

    def __neg__(self) -> "LogScaled":
        return LogScaled(-self.sign, self.logmag)

    def __abs__(self) -> "LogScaled":
        return LogScaled(abs(self.sign), self.logmag)

    def __mul__(self, other) -> "LogScaled":
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.logmag + other.logmag)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogScaled":
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("division of LogScaled by zero")
        if self.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.logmag - other.logmag)

    def __rtruediv__(self, other) -> "LogScaled":
        return _coerce(other) / self

    def __pow__(self, p) -> "LogScaled":
        if self.sign == 0:
            if p > 0:
                return LogScaled.zero()
            raise ZeroDivisionError("zero raised to a non-positive power")
        if isinstance(p, int):
            sign = self.sign if p % 2 else 1
            return LogScaled(sign, p * self.logmag)
        if self.sign < 0:
            raise DomainError("non-integer power of a negative value")
        return LogScaled(1, p * self.logmag)

    def sqrt(self) -> "LogScaled":
        return self ** 0.5

    def __add__(self, other) -> "LogScaled":
        other = _coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.logmag >= other.logmag else (other, self)
        ratio = math.exp(small.logmag - big.logmag)
        if big.sign == small.sign:
            return LogScaled(big.sign, big.logmag + math.log1p(ratio))
        if ratio == 1.0:
            return LogScaled.zero()
        return LogScaled(big.sign, big.logmag + math.log1p(-ratio))

    __radd__ = __add__

    def __sub__(self, other) -> "LogScaled":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LogScaled":
        return _coerce(other) - self


def _coerce(x) -> LogScaled:
    if isinstance(x, LogScaled):
        return x
    return LogScaled.from_float(float(x))


def log_double_factorial(m: int, parity: str) -> float:
    """``ln((2m-1)!!)`` for ``parity='odd'``, ``ln((2m)!!)`` for ``'even'``.

    Empty products give 0, so ``(-1)!! = 0!! = 1``.
    """
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    if parity not in ("odd", "even"):
        raise DomainError(f"parity must be 'odd' or 'even', got {parity!r}")
    if m <= _DFACT_LOOP_MAX:
        start = 1 if parity == "odd" else 2
        return math.log(math.prod(range(start, 2 * m + 1, 2)))
    if parity == "even":
        return m * _LOG2 + math.lgamma(m + 1)
    # (2m-1)!! = 2^m Gamma(m + 1/2) / Gamma(1/2)
    return m * _LOG2 + math.lgamma(m + 0.5) - 0.5 * math.log(math.pi)


def log_pochhammer(a: float, j: int) -> LogScaled:
    """Rising factorial ``(a)_j = a (a+1) ... (a+j-1)`` in log-scaled form."""
    if j < 0:
        raise DomainError(f"j must be non-negative, got {j}")
    if j == 0:
        return LogScaled.one()
    a = float(a)
    if a <= 0 and a == math.floor(a) and -a < j:
        return LogScaled.zero()
    n_negative = 0 if a > 0 else min(j, math.floor(-a) + 1)
    sign = -1 if n_negative % 2 else 1
    if j <= _POCH_LOOP_MAX:
        logmag = math.fsum(math.log(abs(a + i)) for i in range(j))
    else:
        logmag = math.lgamma(a + j) - math.lgamma(a)
    return LogScaled(sign, logmag)


def _stirling_remainder(x: float) -> float:
    """``lgamma(x+1) - [(x+1/2) ln x - x + ln(2 pi)/2]`` for ``x > 0``."""
    if x < 15.0:
        return math.lgamma(x + 1.0) - ((x + 0.5) * math.log(x) - x + _HALF_LOG_2PI)
    r = 1.0 / x
    r2 = r * r
    return r * (1 / 12 - r2 * (1 / 360 - r2 * (1 / 1260 - r2 * (1 / 1680 - r2 / 1188))))


def log_binomial_real(p: float, q: float) -> float:
    """``ln C(p, q) = ln Gamma(p+1) - ln Gamma(q+1) - ln Gamma(p-q+1)`` for real
    ``0 <= q <= p``.

    The three log-Gamma values are expanded by Stirling's formula so that the
    large linear parts cancel analytically instead of in floating point; what
    is left is a sum of terms of moderate size.
    """
    r = p - q
    if q < 0 or r < 0:
        raise DomainError(f"binomial needs 0 <= q <= p, got p={p}, q={q}")
    if q == 0 or r == 0:
        return 0.0
    main = q * math.log1p(r / q) + r * math.log1p(q / r)
    half = 0.5 * (math.log(p) - math.log(q) - math.log(r))
    rem = _stirling_remainder(p) - _stirling_remainder(q) - _stirling_remainder(r)
    return main + half - _HALF_LOG_2PI + rem


def log_binomial(p: int, q: int) -> float:
    """``ln C(p, q)`` for integers ``0 <= q <= p``.

    Exact big-integer binomial below ``_COMB_EXACT_MAX`` (``math.log`` of an
    int is correctly rounded), Stirling route above.
    """
    if p < 0 or q < 0 or q > p:
        raise DomainError(f"binomial needs 0 <= q <= p, got p={p}, q={q}")
    if p <= _COMB_EXACT_MAX:
        return math.log(math.comb(p, q))
    return log_binomial_real(p, q)


def log_step2_product(top: float, count: int) -> float:
    """``ln(top (top-2) (top-4) ... )`` with ``count`` factors, all positive.

    The empty product (``count == 0``) is 1.
    """
    if count < 0:
        raise DomainError(f"count must be non-negative, got {count}")
    if count == 0:
        return 0.0
    if top - 2 * (count - 1) <= 0:
        raise DomainError("descending product reaches a non-positive factor")
    return math.fsum(math.log(top - 2 * i) for i in range(count))
