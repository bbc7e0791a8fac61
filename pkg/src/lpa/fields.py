"""Exact coefficient fields: rationals (default) and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class Rationals:
    """Arbitrary-precision rational field, backed by fractions.Fraction."""

    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(n) -> Fraction:
        return Fraction(n)

    @staticmethod
    def parse(text: str) -> Fraction:
        return Fraction(text)

    @staticmethod
    def render(x: Fraction) -> str:
        return str(x)

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")


QQ = Rationals()


@dataclass(frozen=True)
class ModInt:
    value: int
    p: int

    def _check(self, other):
        if not isinstance(other, ModInt):
            raise TypeError(f"cannot mix ModInt with {type(other).__name__}")
        if other.p != self.p:
            raise ValueError("mixed moduli")

    def __add__(self, other):
        self._check(other)
        return ModInt((self.value + other.value) % self.p, self.p)

    def __sub__(self, other):
        self._check(other)
        return ModInt((self.value - other.value) % self.p, self.p)

    def __neg__(self):
        return ModInt(-self.value % self.p, self.p)

    def __mul__(self, other):
        self._check(other)
        return ModInt(self.value * other.value % self.p, self.p)

    def __truediv__(self, other):
        self._check(other)
        if other.value % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return self * ModInt(pow(other.value, -1, self.p), self.p)

    def __bool__(self):
        return self.value % self.p != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Integers modulo a prime p."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)

    def coerce(self, n) -> ModInt:
        if isinstance(n, ModInt):
            if n.p != self.p:
                raise ValueError("mixed moduli")
            return n
        return ModInt(int(n) % self.p, self.p)

    def parse(self, text: str) -> ModInt:
        return self.coerce(int(text))

    def render(self, x: ModInt) -> str:
        return str(x.value)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))
