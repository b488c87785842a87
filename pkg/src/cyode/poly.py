"""Dense univariate polynomials and rational functions.

Polynomials work over any ring from :mod:`cyode.rings`; division, gcd and
rational functions need a field (``QQ`` or ``GF(p)``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .rings import QQ, ModInt, format_scalar, ring_of


class Poly:
    """Polynomial with coefficients ``coeffs[k]`` of ``t**k``; trailing zeros stripped."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs=(), ring=None):
        coeffs = list(coeffs)
        if ring is None:
            ring = ring_of(coeffs[0]) if coeffs else QQ
        cs = [ring(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.ring = ring

    @classmethod
    def constant(cls, c, ring=QQ):
        return cls([c], ring)

    @classmethod
    def monomial(cls, k, c=1, ring=QQ):
        return cls([0] * k + [c], ring)

    @classmethod
    def variable(cls, ring=QQ):
        return cls([0, 1], ring)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.zero

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly([other], self.ring)

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        if not isinstance(other, Poly):
            c = self.ring(other)
            return Poly([a * c for a in self.coeffs], self.ring)
        if not self.coeffs or not other.coeffs:
            return Poly([], self.ring)
        out = [self.ring.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.ring)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self == self._coerce(other)

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = self.ring.zero if not isinstance(x, Poly) else Poly([], self.ring)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv = self.ring.one / other.lc()
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly([], self.ring), self
        quot = [self.ring.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quot, self.ring), Poly(rem[: other.degree], self.ring)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (self.ring.one / self.lc())

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.ring)

    def theta(self) -> "Poly":
        """``t * d/dt``."""
        return Poly([k * c for k, c in enumerate(self.coeffs)], self.ring)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero if both are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self) -> bool:
        if self.degree <= 0:
            return True
        return self.gcd(self.derivative()).degree == 0

    def squarefree_decomposition(self):
        """Yun's algorithm (characteristic 0): list of ``(factor, multiplicity)``.

        Factors are monic, pairwise coprime and squarefree; the leading
        coefficient is dropped.
        """
        if self.ring.characteristic != 0:
            raise ValueError("squarefree decomposition implemented in characteristic 0 only")
        f = self.monic()
        if f.degree <= 0:
            return []
        out = []
        fp = f.derivative()
        a = f.gcd(fp)
        b = f // a
        c = fp // a
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            a = b.gcd(d)
            if a.degree > 0:
                out.append((a, i))
            b = b // a
            c = d // a
            d = c - b.derivative()
            i += 1
        return out

    def change_ring(self, ring) -> "Poly":
        return Poly(self.coeffs, ring)

    def to_string(self, var="t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if isinstance(c, ModInt):
                mag, neg = str(c.value), False
            else:
                mag, neg = format_scalar(abs(c)), c < 0
            if k == 0:
                body = mag
            else:
                mon = var if k == 1 else f"{var}^{k}"
                body = mon if mag == "1" else f"{mag}*{mon}"
            terms.append((neg, body))
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Poly({self.to_string()})"

    __str__ = to_string


class RationalFunction:
    """Reduced quotient ``num/den`` with ``den`` monic; equality is representational."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced=False):
        if not isinstance(num, Poly):
            num = Poly([num])
        ring = num.ring
        if den is None:
            den = Poly([1], ring)
        elif not isinstance(den, Poly):
            den = Poly([den], ring)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly([1], ring)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lc = den.lc()
                if lc != ring.one:
                    inv = ring.one / lc
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    @classmethod
    def constant(cls, c, ring=QQ):
        return cls(Poly([c], ring))

    @classmethod
    def variable(cls, ring=QQ):
        return cls(Poly([0, 1], ring))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        return RationalFunction(Poly([other], self.ring))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RationalFunction, Poly)):
            c = self.ring(other)
            if not c:
                return RationalFunction(Poly([], self.ring))
            return RationalFunction(self.num * c, self.den, _reduced=True)
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num**e, self.den**e, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        try:
            return self == self._coerce(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def theta(self) -> "RationalFunction":
        """``t * d/dt``."""
        n, d = self.num, self.den
        return RationalFunction(n.theta() * d - n * d.theta(), d * d)

    def __call__(self, x):
        dv = self.den(x)
        if not dv:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / dv

    def has_pole_at_zero(self) -> bool:
        return not self.den[0]

    def value_at_zero(self):
        if self.has_pole_at_zero():
            raise ZeroDivisionError("pole at t = 0")
        return self.num[0] / self.den[0]

    def series(self, order: int):
        """Expansion at ``t = 0`` to the given truncation order."""
        from .series import Series

        if self.has_pole_at_zero():
            raise ZeroDivisionError("rational function has a pole at t = 0")
        return Series.from_poly(self.num, order) / Series.from_poly(self.den, order)

    def change_ring(self, ring) -> "RationalFunction":
        """Reduction into another field (e.g. GF(p)).

        Over QQ the denominator is first rescaled to a primitive integer
        polynomial, so only genuine p-adic poles of the coefficients fail.
        """
        num, den = self.num, self.den
        if self.ring is QQ and ring.characteristic:
            d = lcm(*(Fraction(c).denominator for c in den.coeffs))
            g = gcd(*(int(c * d) for c in den.coeffs))
            num, den = num * Fraction(d, g), den * Fraction(d, g)
        return RationalFunction(num.change_ring(ring), den.change_ring(ring))

    def content_denominator(self) -> int:
        """Denominator of the content once the denominator is primitive integral."""
        d = lcm(*(Fraction(c).denominator for c in self.den.coeffs))
        g = gcd(*(int(c * d) for c in self.den.coeffs))
        num = self.num * Fraction(d, g)
        return lcm(*(Fraction(c).denominator for c in num.coeffs)) if num.coeffs else 1

    def to_string(self, var="t") -> str:
        if self.den.degree == 0:
            return self.num.to_string(var)
        num = self.num.to_string(var)
        if len([c for c in self.num.coeffs if c]) > 1:
            num = f"({num})"
        return f"{num}/({self.den.to_string(var)})"

    def __repr__(self):
        return f"RationalFunction({self.to_string()})"

    __str__ = to_string
