"""Differential operators in ``theta = t d/dt`` with rational-function coefficients.

:class:`DiffOp` is a general element ``sum_i c_i(t) theta^i`` of ``K(t)[theta]``
(coefficients on the left).  :class:`ThetaOperator` is the monic normal form
``theta^n + a_{n-1} theta^{n-1} + ... + a_0`` with ``n >= 1`` used everywhere
else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .pade import pade_reconstruct
from .poly import Poly, RationalFunction
from .rings import QQ, GF
from .series import DEFAULT_ORDER, LogSeries, Series


class OperatorError(ValueError):
    pass


class PoleAtOrigin(OperatorError):
    """A coefficient is not regular at ``t = 0``."""


class ConditionNFailed(OperatorError):
    pass


def _rf(x, ring=QQ) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x)
    return RationalFunction(Poly([x], ring))


class DiffOp:
    """``sum_i coeffs[i] * theta^i``; trailing zero coefficients are stripped."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs, ring=None):
        coeffs = list(coeffs)
        if ring is None:
            ring = next((c.ring for c in coeffs if isinstance(c, (RationalFunction, Poly))), QQ)
        cs = [_rf(c, ring) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.ring = ring

    @classmethod
    def theta(cls, ring=QQ) -> "DiffOp":
        return cls([0, 1], ring)

    @classmethod
    def scalar(cls, c, ring=QQ) -> "DiffOp":
        return cls([c], ring)

    @property
    def order(self) -> int:
        """Order in theta (``-1`` for the zero operator)."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i) -> RationalFunction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _rf(0, self.ring)

    def _coerce(self, other):
        if isinstance(other, DiffOp):
            return other
        return DiffOp([other], self.ring)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coefficient(i) + other.coefficient(i) for i in range(n)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        """Composition ``self o other`` using ``theta o g = g theta + theta(g)``."""
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return DiffOp([], self.ring)
        out = [_rf(0, self.ring)] * (self.order + other.order + 1)
        for j, b in enumerate(other.coeffs):
            if b.is_zero():
                continue
            # derivatives theta^k(b) for k = 0..order(self)
            derivs = [b]
            for _ in range(self.order):
                derivs.append(derivs[-1].theta())
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for k in range(i + 1):
                    d = derivs[k]
                    if d.is_zero():
                        continue
                    term = a * d
                    c = comb(i, k)
                    if c != 1:
                        term = term * c
                    out[i - k + j] = out[i - k + j] + term
        return DiffOp(out, self.ring)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, e: int):
        result = DiffOp([1], self.ring)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, DiffOp):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def adjoint(self) -> "DiffOp":
        """Formal adjoint ``sum_i (-1)^i theta^i o c_i``."""
        th = DiffOp.theta(self.ring)
        out = DiffOp([], self.ring)
        power = DiffOp([1], self.ring)
        for i, c in enumerate(self.coeffs):
            term = power * DiffOp([c], self.ring)
            out = out + (term if i % 2 == 0 else -term)
            power = power * th
        return out

    def conjugate(self, g: RationalFunction) -> "DiffOp":
        """``g o self o g^{-1}``."""
        g = _rf(g, self.ring)
        return DiffOp([g], self.ring) * self * DiffOp([g.inverse()], self.ring)

    def change_ring(self, ring) -> "DiffOp":
        return DiffOp([c.change_ring(ring) for c in self.coeffs], ring)

    def reduce_mod(self, p: int) -> "DiffOp":
        """Coefficientwise reduction to ``GF(p)``; raises ``NotIntegral`` on bad primes."""
        return self.change_ring(GF(p))

    def polynomial_form(self):
        """``(c_0, ..., c_n)`` polynomials with ``D * self = sum c_i theta^i``, ``D`` the monic lcm
        of the denominators."""
        D = Poly([1], self.ring)
        for c in self.coeffs:
            D = D * c.den // D.gcd(c.den)
        return [c.num * (D // c.den) for c in self.coeffs]

    def apply(self, y):
        """Apply to a :class:`Series`, :class:`LogSeries` or :class:`RationalFunction`."""
        if isinstance(y, RationalFunction):
            out = _rf(0, self.ring)
            cur = y
            for i, c in enumerate(self.coeffs):
                if i:
                    cur = cur.theta()
                if not c.is_zero():
                    out = out + c * cur
            return out
        n = y.order
        for c in self.coeffs:
            if c.has_pole_at_zero():
                raise PoleAtOrigin("operator coefficient has a pole at t = 0")
        out = None
        cur = y
        for i, c in enumerate(self.coeffs):
            if i:
                cur = cur.theta()
            if c.is_zero():
                continue
            term = cur * c.series(n)
            out = term if out is None else out + term
        if out is None:
            return y * 0
        return out

    def to_string(self, var="t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mon = "" if i == 0 else ("theta" if i == 1 else f"theta^{i}")
            if not mon:
                parts.append(f"({c.to_string(var)})")
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"({c.to_string(var)})*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOp({self.to_string()})"


class ThetaOperator(DiffOp):
    """Monic ``theta^n + sum_{i<n} a_i theta^i`` with ``n >= 1``.

    ``var`` is the display name of the parameter; ``raw`` optionally keeps
    the non-monic operator the user supplied.  Neither takes part in equality.
    """

    __slots__ = ("var", "raw")

    def __init__(self, coefficients, var="t", raw=None, ring=QQ):
        cs = [_rf(a, ring) for a in coefficients] + [_rf(1, ring)]
        super().__init__(cs, ring)
        if len(self.coeffs) != len(cs):
            raise OperatorError("internal: monic operator lost its leading coefficient")
        if self.order < 1:
            raise OperatorError("operator order must be >= 1")
        self.var = var
        self.raw = raw

    @classmethod
    def from_diffop(cls, op: DiffOp, var="t") -> "ThetaOperator":
        """Monicise: divide out the leading coefficient (kept as ``raw``)."""
        if op.order < 1:
            raise OperatorError(f"operator has order {op.order}; order >= 1 required")
        lead = op.coeffs[-1].inverse()
        return cls([lead * c for c in op.coeffs[:-1]], var=var, raw=op, ring=op.ring)

    @property
    def a(self):
        """``(a_0, ..., a_{n-1})``."""
        return self.coeffs[:-1]

    def __reduce__(self):
        return (_rebuild_theta, (self.a, self.var, self.ring))

    def with_var(self, var) -> "ThetaOperator":
        return ThetaOperator(self.a, var=var, raw=self.raw, ring=self.ring)

    def __repr__(self):
        return f"ThetaOperator({self.to_string(self.var)})"

    def __str__(self):
        return self.to_string(self.var)


def _rebuild_theta(a, var, ring):
    return ThetaOperator(a, var=var, ring=ring)


def compose(A, B) -> DiffOp:
    if not isinstance(A, DiffOp):
        A = DiffOp([A], B.ring if isinstance(B, DiffOp) else QQ)
    return A * B


def formal_adjoint(L: DiffOp) -> DiffOp:
    return L.adjoint()


def apply(L: DiffOp, y):
    return L.apply(y)


def rescale_parameter(L: ThetaOperator, c) -> ThetaOperator:
    """Substitute ``t -> c*t``; theta is unchanged by the rescaling."""
    c = L.ring(c)
    if not c:
        raise OperatorError("rescaling factor must be nonzero")

    def sub(poly):
        return Poly([a * c**k for k, a in enumerate(poly.coeffs)], poly.ring)

    return ThetaOperator([RationalFunction(sub(a.num), sub(a.den)) for a in L.a], var=L.var, ring=L.ring)


# -- condition (N), beta factor ---------------------------------------------


def indicial_polynomial(L: ThetaOperator) -> Poly:
    vals = []
    for a in L.a:
        if a.has_pole_at_zero():
            raise PoleAtOrigin("irregular/non-normalized at origin: a coefficient has a pole at t = 0")
        vals.append(a.value_at_zero())
    return Poly(vals + [1], L.ring)


def check_condition_N(L: ThetaOperator) -> bool:
    try:
        ind = indicial_polynomial(L)
    except PoleAtOrigin:
        return False
    return ind == Poly.monomial(L.order, 1, L.ring)


def beta_series(L: ThetaOperator, N: int = DEFAULT_ORDER, require_condition_n=True) -> Series:
    """``exp((2/n) * int a_{n-1} dt/t)`` normalised to ``beta(0) = 1``.

    With ``require_condition_n=False`` only ``a_{n-1}`` needs to be regular
    and vanish at the origin.
    """
    if require_condition_n and not check_condition_N(L):
        raise ConditionNFailed("condition (N) fails; the beta factor is not a unit power series")
    top = L.a[-1]
    if top.has_pole_at_zero() or top.value_at_zero():
        raise ConditionNFailed("a_{n-1} must be regular and vanish at t = 0")
    return (top.series(N).log_integrate() * L.ring(2) / L.order).exp()


def _verify_beta(L: ThetaOperator, beta: RationalFunction) -> bool:
    return beta.theta() * L.order == L.a[-1] * beta * 2


def beta_rational(L: ThetaOperator, N: int = DEFAULT_ORDER, require_condition_n=True) -> Optional[RationalFunction]:
    """Rational beta factor, or ``None`` when none is found with Padé bounds up to ``N/2 - 1``.

    ``None`` means either that beta is provably not rational (its logarithmic
    derivative has a multiple pole or a pole at infinity) or that no candidate
    was found within the cap; only in the second case could a larger ``N`` help.
    """
    if L.a[-1].is_zero():
        return _rf(1, L.ring)
    bs = beta_series(L, N, require_condition_n)
    # d(log beta)/dt = (2/n) a_{n-1}/t; for rational beta it has only simple
    # poles and vanishes at infinity, so anything else is decided without Padé
    g = L.a[-1] / RationalFunction.variable(L.ring)
    if g.num.degree >= g.den.degree or not g.den.is_squarefree():
        return None
    for d in range(1, N // 2):
        r = pade_reconstruct(bs, d, d)
        if r is not None and _verify_beta(L, r):
            return r
    return None


def is_self_adjoint(L: ThetaOperator, N: int = DEFAULT_ORDER, beta=None) -> Optional[bool]:
    """``L* == (-1)^n beta L beta^{-1}``; ``None`` when beta is not found to be rational."""
    if beta is None:
        try:
            beta = beta_rational(L, N, require_condition_n=False)
        except ConditionNFailed:
            return None
    if beta is None:
        return None
    rhs = L.conjugate(beta)
    if L.order % 2:
        rhs = -rhs
    return L.adjoint() == rhs


def _th(f: RationalFunction, k: int = 1) -> RationalFunction:
    for _ in range(k):
        f = f.theta()
    return f


def relation_check_order3(L: ThetaOperator, beta=None) -> Optional[bool]:
    """``2 beta b_0 = (beta b_1)' - (beta b_2)'' + beta'''``."""
    if L.order != 3:
        raise OperatorError("relation_check_order3 needs an order-3 operator")
    beta = beta_rational(L, require_condition_n=False) if beta is None else beta
    if beta is None:
        return None
    b0, b1, b2 = L.a
    return beta * b0 * 2 == _th(beta * b1) - _th(beta * b2, 2) + _th(beta, 3)


def relation_check_order4(L: ThetaOperator) -> bool:
    """``a_1 = a_2' + a_2 a_3/2 - a_3''/2 - 3 a_3 a_3'/4 - a_3^3/8``."""
    if L.order != 4:
        raise OperatorError("relation_check_order4 needs an order-4 operator")
    _, a1, a2, a3 = L.a
    h = L.ring(1) / 2
    rhs = (
        _th(a2)
        + a2 * a3 * h
        - _th(a3, 2) * h
        - a3 * _th(a3) * (L.ring(3) / 4)
        - a3**3 * (L.ring(1) / 8)
    )
    return a1 == rhs


def relation_check_order5(L: ThetaOperator, beta=None) -> Optional[bool]:
    """The two order-5 relations in terms of ``beta b_i``."""
    if L.order != 5:
        raise OperatorError("relation_check_order5 needs an order-5 operator")
    beta = beta_rational(L, require_condition_n=False) if beta is None else beta
    if beta is None:
        return None
    b0, b1, b2, b3, b4 = L.a
    first = beta * b2 * 2 - _th(beta * b3) * 3 + _th(beta * b4, 2) * 4 - _th(beta, 3) * 5
    second = (
        _th(beta * b1) - _th(beta * b2, 2) + _th(beta * b3, 3) - _th(beta * b4, 4) + _th(beta, 5)
    ) - beta * b0 * 2
    return first.is_zero() and second.is_zero()


def relation_check(L: ThetaOperator, beta=None) -> Optional[bool]:
    """Dispatch to the explicit relation for orders 3, 4, 5 (orders 1 and 2: always true)."""
    if L.order <= 2:
        return True
    if L.order == 3:
        return relation_check_order3(L, beta)
    if L.order == 4:
        return relation_check_order4(L)
    if L.order == 5:
        return relation_check_order5(L, beta)
    raise OperatorError(f"no explicit relation for order {L.order}")


def sl_n_criterion(L: ThetaOperator, beta=None) -> Optional[bool]:
    """Whether ``beta^n`` is a square in ``K(t)`` (``None`` if beta is not rational)."""
    if beta is None:
        beta = beta_rational(L)
    if beta is None:
        return None
    g = beta**L.order
    for part in (g.num, g.den):
        if any(mult % 2 for _, mult in part.squarefree_decomposition()):
            return False
    return True


# -- classification ------------------------------------------------------------


@dataclass
class ClassificationReport:
    condition_N: bool
    beta_rational: Optional[RationalFunction]
    self_adjoint: Optional[bool]
    calabi_yau: bool
    sl_n: Optional[bool]
    beta_series: Optional[Series] = None
    relation: Optional[bool] = None
    diagnostics: list = field(default_factory=list)


def classify(L: ThetaOperator, N: int = DEFAULT_ORDER) -> ClassificationReport:
    diags = []
    cond = check_condition_N(L)
    if not cond:
        try:
            diags.append(f"indicial polynomial {indicial_polynomial(L).to_string('s')} != s^{L.order}")
        except PoleAtOrigin as e:
            diags.append(str(e))
    bser = None
    beta = None
    try:
        bser = beta_series(L, N, require_condition_n=False)
        beta = beta_rational(L, N, require_condition_n=False)
        if beta is None:
            diags.append(f"beta not rational within Padé bounds up to ({N // 2 - 1}, {N // 2 - 1})")
    except ConditionNFailed as e:
        diags.append(str(e))
    sa = is_self_adjoint(L, N, beta) if beta is not None else None
    if sa is None:
        diags.append("self-adjointness undetermined (beta not rational)")
    elif not sa:
        diags.append("L* != (-1)^n beta L beta^-1")
    rel = None
    if beta is not None and 3 <= L.order <= 5:
        rel = relation_check(L, beta)
        if rel != sa:
            diags.append(f"explicit order-{L.order} relation disagrees with the adjoint identity")
    sl = sl_n_criterion(L, beta) if (beta is not None and cond) else None
    return ClassificationReport(
        condition_N=cond,
        beta_rational=beta,
        self_adjoint=sa,
        calabi_yau=bool(cond and sa),
        sl_n=sl,
        beta_series=bser,
        relation=rel,
        diagnostics=diags,
    )


def is_calabi_yau(L: ThetaOperator, N: int = DEFAULT_ORDER) -> bool:
    return check_condition_N(L) and bool(is_self_adjoint(L, N))
