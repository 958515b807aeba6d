"""Exact coefficient arithmetic over F_p (p prime) or Q (characteristic 0).

Raw coefficients are plain Python values: ints in ``[0, p)`` when ``p > 0``
and :class:`fractions.Fraction` when ``p == 0``.  :class:`Scalar` wraps one
value together with its characteristic for callers that want a typed object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import CharacteristicMismatch

MAX_PRIME = 2**31


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


def check_characteristic(p: int) -> int:
    if not isinstance(p, int) or p < 0:
        raise ValueError(f"characteristic must be a non-negative integer, got {p!r}")
    if p != 0 and not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if p >= MAX_PRIME:
        raise ValueError(f"characteristic {p} exceeds 2^31")
    return p


def normalize(p: int, value) -> int | Fraction:
    """Bring ``value`` (int, Fraction or Scalar) into canonical form for characteristic p."""
    if isinstance(value, Scalar):
        if value.characteristic != p:
            raise CharacteristicMismatch(value.characteristic, p)
        return value.value
    if p == 0:
        return Fraction(value)
    if isinstance(value, Fraction):
        if value.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {value.denominator} vanishes mod {p}")
        return value.numerator * pow(value.denominator, -1, p) % p
    return int(value) % p


def inverse(p: int, value):
    if not value:
        raise ZeroDivisionError("inverse of zero")
    if p == 0:
        return 1 / value
    return pow(value, -1, p)


def to_text(p: int, value) -> str:
    if p == 0 and value.denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    if p == 0:
        return str(value.numerator)
    return str(value)


@dataclass(frozen=True)
class Scalar:
    """An element of F_p or Q with canonical representation."""

    characteristic: int
    value: int | Fraction

    @classmethod
    def of(cls, p: int, value) -> "Scalar":
        check_characteristic(p)
        return cls(p, normalize(p, value))

    def _coerce(self, other) -> int | Fraction:
        if isinstance(other, Scalar):
            if other.characteristic != self.characteristic:
                raise CharacteristicMismatch(self.characteristic, other.characteristic)
            return other.value
        return normalize(self.characteristic, other)

    def _wrap(self, v) -> "Scalar":
        return Scalar(self.characteristic, normalize(self.characteristic, v))

    def __add__(self, other):
        return self._wrap(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.characteristic, inverse(self.characteristic, self.value))

    def __truediv__(self, other):
        return self * Scalar(self.characteristic, self._coerce(other)).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if self.characteristic:
            return Scalar(self.characteristic, pow(self.value, e, self.characteristic))
        return Scalar(0, self.value**e)

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return to_text(self.characteristic, self.value)
