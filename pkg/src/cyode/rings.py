"""Coefficient rings.

Every series/polynomial routine in the package works over a *ring object*
that knows how to coerce values and exposes ``zero``/``one``.  Elements
themselves support the usual Python operators, so algorithms are written
once with ``+``, ``*`` and ``/`` and run unchanged over

* ``QQ`` -- exact rationals (elements are :class:`fractions.Fraction`),
* ``IntegersMod(p, s)`` -- residues modulo ``p**s`` (``s = 1`` is a field).

Dividing by a non-unit in ``Z/p^s`` raises :class:`NotAUnit`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational


class NotAUnit(ZeroDivisionError):
    """Division by a residue that is not invertible."""


class NotIntegral(ValueError):
    """A rational number cannot be reduced modulo ``p`` (``p`` divides its denominator)."""

    def __init__(self, value, p):
        super().__init__(f"{value} has denominator divisible by {p}")
        self.value = value
        self.p = p


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, ModInt):
            raise TypeError("cannot lift a residue to QQ")
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (RationalField, ())


QQ = RationalField()


class IntegersMod:
    """The ring Z/p^s for a prime ``p``."""

    def __init__(self, p: int, s: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if s < 1:
            raise ValueError("exponent must be >= 1")
        self.p = p
        self.s = s
        self.modulus = p**s
        self.characteristic = self.modulus
        self.is_field = s == 1
        self.zero = ModInt(0, self)
        self.one = ModInt(1, self)

    def __call__(self, x) -> "ModInt":
        if isinstance(x, ModInt):
            if x.ring.p != self.p or x.ring.s < self.s:
                raise TypeError(f"cannot coerce {x!r} into {self!r}")
            return ModInt(x.value % self.modulus, self)
        if isinstance(x, int):
            return ModInt(x % self.modulus, self)
        if isinstance(x, Rational):
            num, den = x.numerator, x.denominator
            if den % self.p == 0:
                raise NotIntegral(x, self.p)
            return ModInt(num * pow(den, -1, self.modulus) % self.modulus, self)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def __repr__(self):
        return f"IntegersMod({self.p}, {self.s})" if self.s > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and (self.p, self.s) == (other.p, other.s)

    def __hash__(self):
        return hash((self.p, self.s))

    def __reduce__(self):
        return (_integers_mod, (self.p, self.s))

    def elements(self):
        return [ModInt(v, self) for v in range(self.modulus)]


@lru_cache(maxsize=None)
def _integers_mod(p, s):
    return IntegersMod(p, s)


def GF(p: int) -> IntegersMod:
    return _integers_mod(p, 1)


def Zmod(p: int, s: int) -> IntegersMod:
    return _integers_mod(p, s)


class ModInt:
    """A residue in ``IntegersMod(p, s)``; immutable."""

    __slots__ = ("value", "ring")

    def __init__(self, value: int, ring: IntegersMod):
        self.value = value
        self.ring = ring

    def _other(self, other):
        if isinstance(other, ModInt):
            if other.ring is not self.ring and other.ring != self.ring:
                raise TypeError(f"mixed rings {self.ring!r} and {other.ring!r}")
            return other.value
        return self.ring(other).value

    def __add__(self, other):
        return ModInt((self.value + self._other(other)) % self.ring.modulus, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        return ModInt((self.value - self._other(other)) % self.ring.modulus, self.ring)

    def __rsub__(self, other):
        return ModInt((self._other(other) - self.value) % self.ring.modulus, self.ring)

    def __mul__(self, other):
        return ModInt(self.value * self._other(other) % self.ring.modulus, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value % self.ring.modulus, self.ring)

    def __pos__(self):
        return self

    def is_unit(self) -> bool:
        return self.value % self.ring.p != 0

    def inverse(self) -> "ModInt":
        if not self.is_unit():
            raise NotAUnit(f"{self.value} is not a unit modulo {self.ring.modulus}")
        return ModInt(pow(self.value, -1, self.ring.modulus), self.ring)

    def __truediv__(self, other):
        if not isinstance(other, ModInt):
            other = self.ring(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ring(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return ModInt(pow(self.value, e, self.ring.modulus), self.ring)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.ring(other).value
            except NotIntegral:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ring.modulus))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def lift(self, centered: bool = False) -> int:
        if centered and self.value > self.ring.modulus // 2:
            return self.value - self.ring.modulus
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ring.modulus})"

    def __str__(self):
        return str(self.value)


def ring_of(x):
    """The ring a scalar lives in (plain ints count as rationals)."""
    if isinstance(x, ModInt):
        return x.ring
    return QQ


def format_scalar(x) -> str:
    """Exact string form: ``a/b`` for rationals, the residue for ``ModInt``."""
    if isinstance(x, ModInt):
        return str(x.value)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
