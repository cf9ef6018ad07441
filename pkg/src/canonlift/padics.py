"""Truncated p-adic integers Z/p^N with explicit precision.

Every value carries its own precision; binary operations between values of
different precision truncate to the smaller one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

DEFAULT_PREC = 16


class NotDivisibleError(ValueError):
    """Raised when an exact division by a power of p is impossible."""


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def int_valuation(v: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return k


def centered(residue: int, modulus: int) -> int:
    """Representative of ``residue`` in (-modulus/2, modulus/2]."""
    r = residue % modulus
    return r - modulus if r > modulus // 2 else r


@dataclass(frozen=True)
class PAdicInt:
    prime: int
    prec: int
    residue: int

    def __post_init__(self):
        check_prime(self.prime)
        if self.prec < 1:
            raise ValueError(f"precision must be >= 1, got {self.prec}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime ** self.prec

    def _coerce(self, other) -> PAdicInt:
        if isinstance(other, PAdicInt):
            if other.prime != self.prime:
                raise ValueError(f"prime mismatch: {self.prime} vs {other.prime}")
            return other
        if isinstance(other, int):
            return PAdicInt(self.prime, self.prec, other)
        return NotImplemented

    def _binary(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        return PAdicInt(self.prime, prec, op(self.residue, other.residue))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PAdicInt(self.prime, self.prec, -self.residue)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PAdicInt(self.prime, self.prec, pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec, other.prec)
        return (self.residue - other.residue) % self.prime ** prec == 0

    def __hash__(self):
        # equality is only transitive at a fixed precision
        return hash((self.prime, self.prec, self.residue))

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.prime != 0

    def valuation(self):
        """Exact valuation, or ``math.inf`` when the residue is zero.

        A zero residue only says the valuation is at least ``prec``.
        """
        if self.residue == 0:
            return math.inf
        return int_valuation(self.residue, self.prime)

    def inverse(self) -> PAdicInt:
        if not self.is_unit():
            raise ZeroDivisionError(
                f"{self} is not a unit (valuation {self.valuation()})")
        return PAdicInt(self.prime, self.prec, pow(self.residue, -1, self.modulus))

    def div_exact(self, k: int) -> PAdicInt:
        """Divide by p^k; the result is known to ``prec - k`` digits."""
        if k < 0:
            raise ValueError("k must be non-negative")
        if k == 0:
            return self
        if self.valuation() < k:
            raise NotDivisibleError(
                f"{self} is not divisible by {self.prime}^{k}")
        if k >= self.prec:
            raise NotDivisibleError(
                f"dividing {self} by {self.prime}^{k} leaves no known digits")
        return PAdicInt(self.prime, self.prec - k, self.residue // self.prime ** k)

    def reduce(self, prec: int) -> PAdicInt:
        return PAdicInt(self.prime, min(prec, self.prec), self.residue)

    def lift(self) -> int:
        """Centered integer lift."""
        return centered(self.residue, self.modulus)

    def to_json(self) -> dict:
        return {"p": self.prime, "prec": self.prec, "residue": self.residue}

    @classmethod
    def from_json(cls, data: dict) -> PAdicInt:
        return cls(data["p"], data["prec"], data["residue"])

    def __str__(self):
        return f"{self.residue} + O({self.prime}^{self.prec})"

    def __repr__(self):
        return f"PAdicInt({self.prime}, {self.prec}, {self.residue})"


def padic(p: int, v: int, prec: int = DEFAULT_PREC) -> PAdicInt:
    return PAdicInt(p, prec, v)
