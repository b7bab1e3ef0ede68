"""Exact coefficient fields: prime fields GF(p) and the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """Base class; concrete fields are :class:`PrimeField` and :class:`Rationals`."""

    characteristic: int

    def __call__(self, value):
        return self.convert(value)

    def convert(self, value):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.convert(a * self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def root_of_unity(self, n: int):
        """Return a primitive ``n``-th root of unity, or raise ``ValueError``."""
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError


class PrimeField(Field):
    __slots__ = ("p", "characteristic")

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p) or p >= 2**31:
            raise ValueError(f"field characteristic must be a prime < 2^31, got {p}")
        self.p = p
        self.characteristic = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def convert(self, value):
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def signed(self, a: int) -> int:
        """Representative in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    @cached_property
    def generator(self) -> int:
        """Smallest primitive root modulo p."""
        if self.p == 2:
            return 1
        factors = _prime_factors(self.p - 1)
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // q, self.p) != 1 for q in factors):
                return g
        raise AssertionError("no primitive root found")  # pragma: no cover

    def root_of_unity(self, n: int) -> int:
        if n < 1 or (self.p - 1) % n:
            raise ValueError(f"GF({self.p}) has no primitive {n}-th root of unity (need p = 1 mod {n})")
        return pow(self.generator, (self.p - 1) // n, self.p)

    def elements(self):
        return range(self.p)


class Rationals(Field):
    __slots__ = ("characteristic",)

    def __init__(self):
        self.characteristic = 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def convert(self, value):
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return self.convert(Fraction(1) / a)

    def div(self, a, b):
        return self.convert(Fraction(a) / b)

    def root_of_unity(self, n: int):
        if n == 1:
            return 1
        if n == 2:
            return -1
        raise ValueError(f"QQ has no primitive {n}-th root of unity")

    def elements(self):
        raise ValueError("QQ is infinite")


QQ = Rationals()


def field_from_spec(spec) -> Field:
    """Build a field from ``"Q"``/``"QQ"`` or a prime (int or digit string)."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.upper() in ("Q", "QQ"):
            return QQ
        if not s.isdigit():
            raise ValueError(f"unknown field {spec!r}")
        spec = int(s)
    return PrimeField(spec)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
