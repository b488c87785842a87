"""Frobenius basis at the origin and the differential-module structure around it.

For an operator with null exponents the solutions are

    F_i = sum_{j<=i} g_{i-j}(t) * log(t)^j / j!,    g_0(0) = 1, g_j(0) = 0 (j >= 1),

obtained from ``L(t^s G(s, t)) = s^n t^s`` by expanding ``G`` in powers of
``s``: ``g_j`` is the coefficient of ``s^j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import List, Optional

from .operator import (
    ConditionNFailed,
    OperatorError,
    ThetaOperator,
    beta_rational,
    check_condition_N,
    is_calabi_yau,
)
from .rings import QQ
from .series import DEFAULT_ORDER, LogSeries, Series, determinant


class ConsistencyError(ArithmeticError):
    """A structural identity that must hold for Calabi-Yau input failed."""


@lru_cache(maxsize=128)
def _frobenius_coefficients(L: ThetaOperator, N: int, depth: int):
    """Coefficient vectors ``C_k in K[s]/(s^depth)`` of ``G(s, t) = sum_k C_k(s) t^k``."""
    polys = L.polynomial_form()
    n = L.order
    dmax = max(p.degree for p in polys)
    lead0 = polys[n][0]
    # P_m(x) = sum_i polys[i][m] x^i; condition (N) makes P_0(x) = lead0 * x^n
    P = [[p[m] for p in polys] for m in range(dmax + 1)]
    one, zero = QQ.one, QQ.zero

    def shifted(m, c):
        # P_m(s + c) mod s^depth
        out = [zero] * depth
        for i, a in enumerate(P[m]):
            if not a:
                continue
            for j in range(min(i, depth - 1) + 1):
                out[j] += a * comb(i, j) * c ** (i - j)
        return out

    C = [[one] + [zero] * (depth - 1)]
    for k in range(1, N):
        R = [zero] * depth
        for m in range(1, min(k, dmax) + 1):
            if not any(P[m]):
                continue
            Pm = shifted(m, k - m)
            prev = C[k - m]
            for a in range(depth):
                if not Pm[a]:
                    continue
                for b in range(depth - a):
                    if prev[b]:
                        R[a + b] += Pm[a] * prev[b]
        # divide by P_0(s + k) = lead0 (s + k)^n
        kinv = one / k
        inv = [(-1) ** j * comb(n + j - 1, j) * kinv ** (n + j) / lead0 for j in range(depth)]
        Ck = [zero] * depth
        for a in range(depth):
            if not R[a]:
                continue
            for b in range(depth - a):
                Ck[a + b] -= R[a] * inv[b]
        C.append(Ck)
    return tuple(tuple(c) for c in C)


def _require_n(L):
    if not check_condition_N(L):
        raise ConditionNFailed("condition (N) fails at the origin")


def power_series_solution(L: ThetaOperator, N: int = DEFAULT_ORDER) -> Series:
    """The unique solution ``F in 1 + t K[[t]]``."""
    _require_n(L)
    C = _frobenius_coefficients(L, N, 1)
    return Series._raw([c[0] for c in C], QQ)


@dataclass(frozen=True)
class FrobeniusBasis:
    operator: ThetaOperator
    g: tuple

    @property
    def n(self) -> int:
        return len(self.g)

    @property
    def order(self) -> int:
        return self.g[0].order

    @property
    def F(self) -> Series:
        return self.g[0]

    def solution(self, i: int) -> LogSeries:
        """``F_i`` as a log series."""
        return LogSeries([self.g[i - j] for j in range(i + 1)])

    def solutions(self) -> List[LogSeries]:
        return [self.solution(i) for i in range(self.n)]


def frobenius_basis(L: ThetaOperator, N: int = DEFAULT_ORDER) -> FrobeniusBasis:
    _require_n(L)
    if N < 2:
        raise ValueError("truncation order must be >= 2")
    C = _frobenius_coefficients(L, N, L.order)
    g = tuple(Series._raw([c[j] for c in C], QQ) for j in range(L.order))
    return FrobeniusBasis(L, g)


def wronskian(B: FrobeniusBasis, i: int) -> Series:
    """``det(theta^s F_r)_{0 <= r, s <= i}``, evaluated in log-series arithmetic."""
    if not 0 <= i < B.n:
        raise IndexError(f"wronskian index {i} out of range for order {B.n}")
    rows = []
    for r in range(i + 1):
        row = [B.solution(r)]
        for _ in range(i):
            row.append(row[-1].theta())
        rows.append(row)
    det = determinant(rows)
    try:
        w = det.log_free_part()
    except ValueError as e:
        raise ConsistencyError(f"wronskian wr_{i} is not log-free") from e
    if not w[0]:
        raise ConsistencyError(f"wronskian wr_{i} vanishes at the origin")
    return w


def wronskians(B: FrobeniusBasis) -> List[Series]:
    return [wronskian(B, i) for i in range(B.n)]


def q_coordinate(B: FrobeniusBasis) -> Series:
    """``q = t * exp(g_1/g_0) = exp(F_1/F)``."""
    if B.n < 2:
        raise OperatorError("the q-coordinate needs order >= 2")
    return Series.variable(B.order) * (B.g[1] / B.g[0]).exp()


def mirror_inverse(q: Series) -> Series:
    """``t(q)``, the compositional inverse of the q-coordinate."""
    return q.reverse()


def tau_sequence(B: FrobeniusBasis, wr=None) -> List[Series]:
    """``[tau_1, ..., tau_{n-1}]`` with ``tau_{i+1} = wr_{i-1} wr_{i+1} / wr_i^2``."""
    wr = wronskians(B) if wr is None else wr
    out = []
    for i in range(B.n - 1):
        prev = wr[i - 1] if i >= 1 else Series.one(B.order)
        out.append(prev * wr[i + 1] / (wr[i] * wr[i]))
    return out


def theta_log_q(B: FrobeniusBasis) -> Series:
    """``theta log q = 1 + theta(g_1/g_0)``."""
    return (B.g[1] / B.g[0]).theta() + 1


def yukawa_kappa(B: FrobeniusBasis, variable: str = "q") -> Series:
    """``(q d/dq)^2 (F_2/F)`` for order 4; returned in ``q`` (default) or in ``t``."""
    if B.n != 4:
        raise OperatorError("the Yukawa coupling is defined for order-4 operators")
    tau1 = theta_log_q(B)
    inv = tau1.inverse()
    ratio = B.solution(2) / B.F
    # q d/dq = (theta log q)^{-1} theta, also on log terms
    step = ratio.theta() * inv
    kappa = (step.theta() * inv).log_free_part()
    if variable == "t":
        return kappa
    if variable != "q":
        raise ValueError("variable must be 'q' or 't'")
    return kappa.compose(mirror_inverse(q_coordinate(B)))


# -- the lattice Lambda_L ------------------------------------------------------


@lru_cache(maxsize=128)
def _coefficient_series(L: ThetaOperator, N: int):
    return tuple(a.series(N) for a in L.a)


class LambdaElement:
    """``sum_r coeffs[r] * eta^(r)`` in ``K[[t]][theta] / K[[t]][theta] L``."""

    __slots__ = ("coeffs", "operator")

    def __init__(self, coeffs, operator: ThetaOperator):
        if len(coeffs) != operator.order:
            raise ValueError("need one coefficient per eta^(r), r < n")
        self.coeffs = tuple(coeffs)
        self.operator = operator

    @classmethod
    def eta(cls, r: int, L: ThetaOperator, N: int = DEFAULT_ORDER) -> "LambdaElement":
        cs = [Series.constant(1 if j == r else 0, N) for j in range(L.order)]
        return cls(cs, L)

    @property
    def order(self) -> int:
        return min(c.order for c in self.coeffs)

    def theta(self) -> "LambdaElement":
        n = self.operator.order
        a = _coefficient_series(self.operator, self.order)
        top = self.coeffs[-1]
        out = []
        for r in range(n):
            v = self.coeffs[r].theta()
            if r:
                v = v + self.coeffs[r - 1]
            if not top.is_zero():
                v = v - a[r] * top
            out.append(v)
        return LambdaElement(out, self.operator)

    def __add__(self, other):
        return LambdaElement([x + y for x, y in zip(self.coeffs, other.coeffs)], self.operator)

    def __sub__(self, other):
        return LambdaElement([x - y for x, y in zip(self.coeffs, other.coeffs)], self.operator)

    def __neg__(self):
        return LambdaElement([-x for x in self.coeffs], self.operator)

    def __mul__(self, f):
        return LambdaElement([f * x for x in self.coeffs], self.operator)

    __rmul__ = __mul__

    def truncate(self, N: int) -> "LambdaElement":
        return LambdaElement([c.truncate(N) for c in self.coeffs], self.operator)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LambdaElement):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"LambdaElement(order={self.operator.order}, N={self.order})"


def _beta_for(L: ThetaOperator, N: int) -> Series:
    beta = beta_rational(L, max(N, DEFAULT_ORDER))
    if beta is None:
        raise OperatorError("beta factor is not rational within the search horizon")
    return beta.series(N)


@lru_cache(maxsize=64)
def pairing_table(L: ThetaOperator, N: int = DEFAULT_ORDER):
    """``<eta^(i), eta^(j)>`` for ``0 <= i, j < n`` with ``<eta, eta^(n-1)> = 1/beta``."""
    if not is_calabi_yau(L):
        raise OperatorError("the pairing is defined for Calabi-Yau operators")
    n = L.order
    gamma = _beta_for(L, N).inverse()
    a = _coefficient_series(L, N)
    zero = Series.constant(0, N)
    T = [[None] * n for _ in range(n)]
    for total in range(2 * n - 1):
        # descending i: <eta^(i+1), eta^(j-1)> has the same total index
        for i in range(min(total, n - 1), max(0, total - n + 1) - 1, -1):
            j = total - i
            if total < n - 1:
                T[i][j] = zero
            elif total == n - 1:
                T[i][j] = gamma if i % 2 == 0 else -gamma
            else:
                # <eta^(i), eta^(j)> = theta <eta^(i), eta^(j-1)> - <eta^(i+1), eta^(j-1)>
                val = T[i][j - 1].theta()
                if i + 1 < n:
                    val = val - T[i + 1][j - 1]
                else:
                    # eta^(n) = -sum_r a_r eta^(r)
                    for r in range(n):
                        val = val + a[r] * T[r][j - 1]
                T[i][j] = val
    return tuple(tuple(row) for row in T)


def pairing(x: LambdaElement, y: LambdaElement) -> Series:
    N = min(x.order, y.order)
    T = pairing_table(x.operator, N)
    acc = Series.constant(0, N)
    for i, xi in enumerate(x.coeffs):
        if xi.is_zero():
            continue
        for j, yj in enumerate(y.coeffs):
            if yj.is_zero() or T[i][j].is_zero():
                continue
            acc = acc + xi * yj * T[i][j]
    return acc


@dataclass
class UBasis:
    operator: ThetaOperator
    u: list
    tau: list
    wronskians: list
    beta: Series


def u_basis(L: ThetaOperator, N: int = DEFAULT_ORDER) -> UBasis:
    """The basis ``u_0..u_{n-1}`` with ``theta u_0 = 0`` and ``theta u_i = tau_i u_{i-1}``."""
    if not is_calabi_yau(L):
        raise OperatorError("u-basis requires a Calabi-Yau operator")
    n = L.order
    B = frobenius_basis(L, N)
    beta = _beta_for(L, N)
    wr = wronskians(B)
    tau = tau_sequence(B, wr)
    a = _coefficient_series(L, N)
    zero = Series.constant(0, N)

    rows = []
    # u_0: v_{r-1} = a_r v_{n-1} - theta v_r, seeded by v_{n-1} = beta F
    v = [None] * n
    v[n - 1] = beta * B.F
    for r in range(n - 1, 0, -1):
        v[r - 1] = a[r] * v[n - 1] - v[r].theta()
    if not (v[0].theta() - a[0] * v[n - 1]).is_zero():
        raise ConsistencyError("u_0: horizontality fails in the eta^(0) row")
    rows.append(v)
    for i in range(1, n):
        top = n - 1 - i
        w = [zero] * n
        w[top] = beta * wr[i] / wr[i - 1]
        prev = rows[i - 1]
        if not w[top].agrees_with(tau[i - 1] * prev[top + 1]):
            raise ConsistencyError(f"u_{i}: leading coefficient disagrees with tau_{i}")
        for r in range(top, 0, -1):
            w[r - 1] = tau[i - 1] * prev[r] - w[r].theta()
        if not (w[0].theta() - tau[i - 1] * prev[0]).is_zero():
            raise ConsistencyError(f"u_{i}: consistency fails in the eta^(0) row")
        rows.append(w)
    u = [LambdaElement(r, L) for r in rows]
    return UBasis(L, u, tau, wr, beta)


@dataclass
class PairingConstants:
    constants: list
    cross_zero: bool
    matrix: list


def pairing_constants(U: UBasis) -> PairingConstants:
    """``<u_i, u_{m-i}>`` (``m = n - 1``), checked to be nonzero constants."""
    n = len(U.u)
    m = n - 1
    M = [[pairing(U.u[i], U.u[j]) for j in range(n)] for i in range(n)]
    consts = []
    for i in range(n):
        val = M[i][m - i]
        if not val.theta().is_zero():
            raise ConsistencyError(f"<u_{i}, u_{m - i}> is not constant")
        if not val[0]:
            raise ConsistencyError(f"<u_{i}, u_{m - i}> vanishes")
        consts.append(val[0])
    cross = all(M[i][m - j].is_zero() for i in range(n) for j in range(n) if i != j)
    return PairingConstants(consts, cross, M)
