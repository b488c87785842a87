"""Truncated power series and log-extended series.

A :class:`Series` of order ``N`` knows the coefficients of ``t**0 .. t**(N-1)``
and nothing beyond; binary operations return the smaller of the two orders.
``theta`` is ``t * d/dt`` throughout.
"""

from __future__ import annotations

from math import comb, factorial

from .rings import QQ, format_scalar, ring_of

DEFAULT_ORDER = 64


class Series:
    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, order=None, ring=None):
        coeffs = list(coeffs)
        if ring is None:
            ring = ring_of(coeffs[0]) if coeffs else QQ
        if order is not None:
            coeffs = coeffs[:order] + [0] * (order - len(coeffs))
        self.coeffs = tuple(ring(c) for c in coeffs)
        self.ring = ring

    @classmethod
    def _raw(cls, coeffs, ring):
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.ring = ring
        return s

    @classmethod
    def constant(cls, c, order, ring=QQ):
        return cls([c], order, ring)

    @classmethod
    def one(cls, order, ring=QQ):
        return cls([1], order, ring)

    @classmethod
    def variable(cls, order, ring=QQ):
        return cls([0, 1], order, ring)

    @classmethod
    def from_poly(cls, poly, order):
        return cls(poly.coeffs, order, poly.ring)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if isinstance(k, slice):
            return self.coeffs[k]
        if k >= len(self.coeffs):
            raise IndexError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError(f"cannot raise truncation order {self.order} to {order}")
        return Series._raw(self.coeffs[:order], self.ring)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _scalar(self, c):
        if not self.order:
            return self
        return Series._raw([self.ring(c)] + [self.ring.zero] * (self.order - 1), self.ring)

    def __add__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, LogSeries):
                return NotImplemented
            other = self._scalar(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return Series._raw([a[k] + b[k] for k in range(n)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        if isinstance(other, LogSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Series":
        c = self.ring(c)
        return Series._raw([a * c for a in self.coeffs], self.ring)

    def __mul__(self, other):
        if not isinstance(other, Series):
            if isinstance(other, LogSeries):
                return NotImplemented
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        zero = self.ring.zero
        out = [zero] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return Series._raw(out, self.ring)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        """Multiplicative inverse of a series with invertible constant term."""
        a = self.coeffs
        n = self.order
        if n == 0:
            return self
        inv0 = self.ring.one / a[0]
        out = [inv0]
        for k in range(1, n):
            acc = self.ring.zero
            for j in range(1, k + 1):
                if a[j]:
                    acc += a[j] * out[k - j]
            out.append(-acc * inv0)
        return Series._raw(out, self.ring)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self.scale(self.ring.one / self.ring(other))

    def __rtruediv__(self, other):
        return self.inverse().scale(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Series.one(self.order, self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def agrees_with(self, other: "Series", order=None) -> bool:
        """Coefficientwise agreement up to ``order`` (default: common order)."""
        n = min(self.order, other.order) if order is None else order
        if n > self.order or n > other.order:
            raise ValueError("comparison order exceeds available coefficients")
        return self.coeffs[:n] == other.coeffs[:n]

    def theta(self) -> "Series":
        return Series._raw([k * c for k, c in enumerate(self.coeffs)], self.ring)

    def log_integrate(self) -> "Series":
        """The series ``g`` with ``theta g = self`` and ``g(0) = 0``."""
        if self.coeffs and self.coeffs[0]:
            raise ValueError("constant term must vanish (the integral would contain log t)")
        out = [self.ring.zero] + [c / k for k, c in enumerate(self.coeffs) if k > 0]
        return Series._raw(out, self.ring)

    def exp(self) -> "Series":
        """``exp`` of a series with zero constant term."""
        a = self.coeffs
        if a and a[0]:
            raise ValueError("exp requires zero constant term")
        n = self.order
        ta = [k * c for k, c in enumerate(a)]
        out = [self.ring.one] + [self.ring.zero] * (n - 1)
        for k in range(1, n):
            acc = self.ring.zero
            for j in range(1, k + 1):
                if ta[j]:
                    acc += ta[j] * out[k - j]
            out[k] = acc / k
        return Series._raw(out[:n], self.ring)

    def log(self) -> "Series":
        """``log`` of a series with constant term 1."""
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("log requires constant term 1")
        return (self.theta() / self).log_integrate()

    def compose(self, inner: "Series") -> "Series":
        """``self(inner(t))``; ``inner`` must have zero constant term."""
        if inner.coeffs and inner.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        acc = Series.constant(self.coeffs[n - 1] if n else 0, n, self.ring)
        for c in reversed(self.coeffs[: n - 1]):
            acc = acc * inner + c
        return acc

    def reverse(self) -> "Series":
        """Compositional inverse of ``t + O(t^2)`` via Lagrange inversion."""
        a = self.coeffs
        n = self.order
        if n < 2 or a[0] or a[1] != 1:
            raise ValueError("series reversion requires f = t + O(t^2)")
        # h = t / f(t), then [q^k] g = [t^(k-1)] h^k / k
        h = Series._raw(a[1:], self.ring).inverse()
        out = [self.ring.zero, self.ring.one]
        power = h
        for k in range(2, n):
            power = power * h
            out.append(power.coeffs[k - 1] / k)
        return Series._raw(out[:n], self.ring)

    def spread(self, p: int, order=None) -> "Series":
        """Substitute ``t -> t**p`` (order becomes ``p*N``, capped at ``order``)."""
        n = p * self.order if order is None else order
        if order is not None and order > p * self.order:
            raise ValueError("not enough coefficients to spread to that order")
        out = [self.ring.zero] * n
        for k, c in enumerate(self.coeffs):
            if k * p < n:
                out[k * p] = c
        return Series._raw(out, self.ring)

    def hadamard(self, other: "Series") -> "Series":
        n = min(self.order, other.order)
        return Series._raw([self.coeffs[k] * other.coeffs[k] for k in range(n)], self.ring)

    def change_ring(self, ring) -> "Series":
        return Series(self.coeffs, ring=ring)

    def polynomial(self, degree_bound=None):
        """The coefficients below ``degree_bound`` as a :class:`Poly`."""
        from .poly import Poly

        m = self.order if degree_bound is None else degree_bound
        if m > self.order:
            raise ValueError(f"need {m} coefficients, have {self.order}")
        return Poly(self.coeffs[:m], self.ring)

    def to_string(self, var="t", terms=None) -> str:
        shown = self.coeffs if terms is None else self.coeffs[:terms]
        parts = []
        for k, c in enumerate(shown):
            if not c:
                continue
            s = format_scalar(c)
            mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mon:
                parts.append(s)
            elif s == "1":
                parts.append(mon)
            elif s == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"{s}*{mon}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{body} + O({var}^{self.order})"

    def __repr__(self):
        return f"Series({self.to_string(terms=8)})"

    __str__ = to_string


def series_exp(f: Series) -> Series:
    return f.exp()


def series_log(u: Series) -> Series:
    return u.log()


def series_reverse(f: Series) -> Series:
    return f.reverse()


def theta_derive(f: Series) -> Series:
    return f.theta()


def log_integrate(f: Series) -> Series:
    return f.log_integrate()


class LogSeries:
    """``sum_j g_j(t) * L**j / j!`` with ``L = log t``.

    Components are stored with the divided-power normalisation, so
    ``theta(g L^j/j!) = (theta g) L^j/j! + g L^(j-1)/(j-1)!``.
    """

    __slots__ = ("components",)

    def __init__(self, components):
        comps = list(components)
        if not comps:
            raise ValueError("LogSeries needs at least one component")
        while len(comps) > 1 and comps[-1].is_zero():
            comps.pop()
        self.components = tuple(comps)

    @classmethod
    def from_series(cls, f: Series) -> "LogSeries":
        return cls([f])

    @classmethod
    def log_power(cls, j: int, order: int, ring=QQ) -> "LogSeries":
        """``L**j / j!``."""
        z = Series.constant(0, order, ring)
        return cls([z] * j + [Series.one(order, ring)])

    @property
    def order(self) -> int:
        return min(c.order for c in self.components)

    @property
    def ring(self):
        return self.components[0].ring

    @property
    def log_degree(self) -> int:
        return len(self.components) - 1

    def is_log_free(self) -> bool:
        return all(c.is_zero() for c in self.components[1:])

    def log_free_part(self) -> Series:
        """The series itself, after checking that no log terms survive."""
        if not self.is_log_free():
            raise ValueError(f"log terms up to L^{self.log_degree} do not cancel")
        return self.components[0]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _coerce(self, other):
        if isinstance(other, LogSeries):
            return other
        if isinstance(other, Series):
            return LogSeries([other])
        return LogSeries([Series.constant(other, self.order, self.ring)])

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.components, other.components
        n = max(len(a), len(b))
        zero = Series.constant(0, min(self.order, other.order), self.ring)
        return LogSeries([(a[j] if j < len(a) else zero) + (b[j] if j < len(b) else zero) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return LogSeries([-c for c in self.components])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (LogSeries, Series)):
            return LogSeries([c.scale(other) for c in self.components])
        other = self._coerce(other)
        a, b = self.components, other.components
        out = [None] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if bj.is_zero():
                    continue
                term = ai * bj
                c = comb(i + j, i)
                if c != 1:
                    term = term.scale(c)
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        n = min(self.order, other.order)
        zero = Series.constant(0, n, self.ring)
        return LogSeries([zero if c is None else c for c in out])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LogSeries):
            other = other.log_free_part()
        if isinstance(other, Series):
            inv = other.inverse()
            return LogSeries([c * inv for c in self.components])
        return LogSeries([c / other for c in self.components])

    def theta(self) -> "LogSeries":
        comps = self.components
        out = []
        for j in range(len(comps)):
            term = comps[j].theta()
            if j + 1 < len(comps):
                term = term + comps[j + 1]
            out.append(term)
        return LogSeries(out)

    def truncate(self, order: int) -> "LogSeries":
        return LogSeries([c.truncate(order) for c in self.components])

    def __eq__(self, other):
        if isinstance(other, LogSeries):
            return self.components == other.components
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def to_string(self, var="t", terms=6) -> str:
        parts = []
        for j, c in enumerate(self.components):
            if c.is_zero():
                continue
            body = c.to_string(var, terms)
            if j == 0:
                parts.append(f"({body})")
            else:
                logpart = "log(t)" if j == 1 else f"log(t)^{j}/{factorial(j)}"
                parts.append(f"({body})*{logpart}")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"LogSeries({self.to_string()})"


def determinant(matrix):
    """Division-free determinant of a small square matrix over a commutative ring.

    Cofactor expansion memoised over row subsets (``2**m`` minors), so it is
    usable for :class:`Series` and :class:`LogSeries` entries.
    """
    m = len(matrix)
    if m == 0:
        raise ValueError("empty matrix")
    minors = {0: None}
    # minors[mask] = det of rows in mask against the first popcount(mask) columns
    for r in range(m):
        minors[1 << r] = matrix[r][0]
    for size in range(2, m + 1):
        col = size - 1
        for mask in range(1 << m):
            if bin(mask).count("1") != size:
                continue
            rows = [r for r in range(m) if mask >> r & 1]
            acc = None
            for pos, r in enumerate(rows):
                sub = minors[mask & ~(1 << r)]
                # sign of moving row r (position pos) to the bottom of the block
                term = matrix[r][col] * sub
                if (size - 1 - pos) % 2:
                    term = -term
                acc = term if acc is None else acc + term
            minors[mask] = acc
    return minors[(1 << m) - 1]

