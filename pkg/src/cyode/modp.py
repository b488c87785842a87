"""Arithmetic of the power-series solution modulo p and p^s.

Truncations ``F^{<M}``, Hasse candidates, the ratio ``F(t)/F(t^p)`` mod p,
Dwork congruences, Teichmüller points and unit roots, the higher Hasse
invariant, and the elliptic point-count oracle for the Legendre family.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import List, Optional, Tuple

from sympy import factorint

from .frobenius import _frobenius_coefficients
from .operator import ConditionNFailed, ThetaOperator, check_condition_N
from .pade import InsufficientOrder, pade_reconstruct
from .poly import Poly, RationalFunction
from .rings import GF, QQ, ModInt, NotAUnit, NotIntegral, Zmod, is_prime
from .series import Series


class BadPrime(ValueError):
    """p is not a good prime for the operator (or for the requested precision)."""


class NotOrdinary:
    """Result marker: the Hasse candidate vanishes at the point."""

    __slots__ = ("p", "x0")

    def __init__(self, p, x0):
        self.p, self.x0 = p, x0

    def __eq__(self, other):
        return isinstance(other, NotOrdinary) and (self.p, self.x0) == (other.p, other.x0)

    def __hash__(self):
        return hash(("not-ordinary", self.p, self.x0))

    def __repr__(self):
        return f"NotOrdinary(p={self.p}, x0={self.x0})"

    def __str__(self):
        return "not-ordinary"


# -- the solution F, computed once per operator at the largest order asked for --

_F_CACHE = {}
_F_LOCK = threading.Lock()


def solution_series(L: ThetaOperator, N: int) -> Series:
    """``F`` over QQ to order ``N`` (cached by operator)."""
    if not check_condition_N(L):
        raise ConditionNFailed("condition (N) fails at the origin")
    with _F_LOCK:
        have = _F_CACHE.get(L)
    if have is None or have.order < N:
        C = _frobenius_coefficients.__wrapped__(L, N, 1)
        have = Series._raw([c[0] for c in C], QQ)
        with _F_LOCK:
            old = _F_CACHE.get(L)
            if old is None or old.order < have.order:
                _F_CACHE[L] = have
    return have.truncate(N)


def reduce_series(f: Series, p: int, s: int = 1) -> Series:
    """Coefficientwise image in ``Z/p^s`` (``GF(p)`` for ``s = 1``)."""
    try:
        return f.change_ring(Zmod(p, s))
    except NotIntegral as e:
        raise BadPrime(f"series coefficient not {p}-integral: {e}") from e


def truncate(f: Series, M: int) -> Poly:
    """``F^{<M}``: the polynomial of terms of degree below ``M``."""
    if f.order < M:
        raise InsufficientOrder(f"need {M} coefficients, series has {f.order}")
    return Poly(f.coeffs[:M], f.ring)


def check_good_prime(L: ThetaOperator, p: int, order: int = 0) -> None:
    """Raise :class:`BadPrime` unless ``p`` is prime, ``p > n`` and nothing relevant has ``p`` in a denominator."""
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    if p <= L.order:
        raise BadPrime(f"p = {p} must exceed the order {L.order}")
    if any(a.content_denominator() % p == 0 for a in L.a):
        raise BadPrime(f"p = {p} divides a denominator of the operator coefficients")
    if order:
        F = solution_series(L, order)
        for k, c in enumerate(F.coeffs):
            if Fraction(c).denominator % p == 0:
                raise BadPrime(f"p = {p} divides the denominator of the coefficient of t^{k} in F")


def integral_polynomial_form(L: ThetaOperator, p: int):
    """The polynomial form of ``L`` scaled to be primitive integral, reduced mod ``p``."""
    polys = L.polynomial_form()
    coeffs = [Fraction(c) for q in polys for c in q.coeffs]
    den = lcm(*(c.denominator for c in coeffs))
    F = GF(p)
    return [Poly([F(Fraction(c) * den) for c in q.coeffs], F) for q in polys]


def _apply_poly_form(polys, y: Poly) -> Poly:
    out = Poly([], y.ring)
    cur = y
    for i, c in enumerate(polys):
        if i:
            cur = cur.theta()
        out = out + c * cur
    return out


# -- Hasse candidate --------------------------------------------------------------


@dataclass
class HasseReport:
    p: int
    hasse_poly: Poly
    degree: int
    simple_roots: bool
    constant_unit: bool
    solution_check: bool
    polynomial_solution: bool

    def __call__(self, x):
        return self.hasse_poly(self.hasse_poly.ring(x))


@lru_cache(maxsize=256)
def hasse_candidate(L: ThetaOperator, p: int) -> HasseReport:
    """``F^{<p}`` mod p, normalised to constant term 1.

    ``solution_check`` is the guaranteed part of ``L(F^{<p}) = 0 mod p`` (degrees
    below ``p`` minus the t-degree of ``L``); ``polynomial_solution`` records
    whether the polynomial is an exact solution mod p in every degree.
    """
    check_good_prime(L, p, p + 1)
    Fp = reduce_series(solution_series(L, p + 1), p)
    H = truncate(Fp, p)
    polys = integral_polynomial_form(L, p)
    shift = max(q.degree for q in polys)
    res = _apply_poly_form(polys, H)
    low = all(not res[k] for k in range(max(0, p - shift)))
    return HasseReport(
        p=p,
        hasse_poly=H,
        degree=H.degree,
        simple_roots=H.is_squarefree(),
        constant_unit=bool(H[0]),
        solution_check=low,
        polynomial_solution=res.is_zero(),
    )


def frobenius_ratio_rational(L: ThetaOperator, p: int, dmax: int, N: Optional[int] = None) -> RationalFunction:
    """Reconstruct ``F(t)/F(t^p)`` mod p as a rational function of degree ``<= dmax``."""
    need = 2 * (dmax + 1) + p
    N = need + 8 if N is None else N
    if N < need:
        raise InsufficientOrder(f"need order >= {need}")
    check_good_prime(L, p, N)
    F = reduce_series(solution_series(L, N), p)
    ratio = F / F.spread(p, N)
    fbar = pade_reconstruct(ratio, dmax, dmax)
    if fbar is None:
        raise ArithmeticError(f"F/F(t^{p}) mod {p} is not rational within degrees ({dmax}, {dmax})")
    Lp = L.reduce_mod(p)
    if not Lp.apply(fbar).is_zero():
        raise ArithmeticError("reconstructed ratio is not a solution mod p")
    if fbar.series(p + 1) != Series(F.coeffs[:p], p + 1, F.ring):
        raise ArithmeticError(f"reconstructed ratio differs from F^{{<{p}}} below degree {p + 1}")
    return fbar


# -- Dwork congruences -------------------------------------------------------------


def dwork_congruence_check(L: ThetaOperator, p: int, s: int = 1, N: Optional[int] = None) -> bool:
    """``F^{<p^s}(t) F^{<p^s}(t^p) = F^{<p^{s+1}}(t) F^{<p^{s-1}}(t^p)`` mod ``p^s`` to order ``N``."""
    if s < 1:
        raise ValueError("level s must be >= 1")
    need = p**s + p
    N = p ** (s + 1) if N is None else N
    if N < need:
        raise InsufficientOrder(f"need order >= p^s + p = {need}")
    M = min(N, p ** (s + 1))
    check_good_prime(L, p, M)
    F = reduce_series(solution_series(L, M), p, s)

    def trunc(m):
        # F^{<m} as an exact polynomial, zero-padded to order N
        return Series(F.coeffs[: min(m, M)], N, F.ring)

    A, B, C = trunc(p**s), trunc(p ** (s + 1)), trunc(p ** (s - 1))
    lhs = A * A.spread(p, N)
    rhs = B * C.spread(p, N)
    return lhs == rhs


# -- Teichmüller points and unit roots -----------------------------------------------


@dataclass(frozen=True)
class TeichPoint:
    p: int
    s: int
    residue: ModInt


def teichmuller(x0: int, p: int, s: int) -> TeichPoint:
    R = Zmod(p, s)
    y = R(x0)
    for _ in range(s + 1):
        nxt = y**p
        if nxt == y:
            break
        y = nxt
    return TeichPoint(p, s, y)


@lru_cache(maxsize=64)
def _truncation_mod(L: ThetaOperator, p: int, s: int, M: int) -> Poly:
    F = reduce_series(solution_series(L, M), p, s)
    return truncate(F, M)


def unit_root(L: ThetaOperator, p: int, s: int, x0: int, constant=1):
    """``c * F^{<p^s}(t) / F^{<p^{s-1}}(t^p)`` at the Teichmüller lift of ``x0``, mod ``p^s``.

    ``constant`` is the global constant ``c`` (1 unless the family supplies one).
    Returns :class:`NotOrdinary` when the Hasse candidate vanishes at ``x0``.
    """
    H = hasse_candidate(L, p)
    if not H(x0):
        return NotOrdinary(p, x0 % p)
    check_good_prime(L, p, p**s)
    R = Zmod(p, s)
    th = teichmuller(x0, p, s).residue
    num = _truncation_mod(L, p, s, p**s)(th)
    den = _truncation_mod(L, p, s, p ** (s - 1))(th) if s > 1 else R(1)
    if not den.is_unit():
        raise NotAUnit(f"F^{{<p^{s - 1}}} vanishes mod p at the Teichmüller point of {x0}")
    return num / den * R(constant)


def hensel_unit_root(a_p: int, p: int, s: int) -> ModInt:
    """The root of ``T^2 - a_p T + p`` in ``Z/p^s`` congruent to ``a_p`` mod p."""
    if a_p % p == 0:
        raise NotAUnit("supersingular: a_p = 0 mod p")
    R = Zmod(p, s)
    r = R(a_p)
    for _ in range(s + 1):
        r = r - (r * r - R(a_p) * r + R(p)) / (r * 2 - R(a_p))
    return r


def elliptic_point_count(p: int, lam: int) -> int:
    """Trace ``a_p = p + 1 - #E(F_p)`` for ``y^2 = x(x-1)(x-lam)``."""
    if not is_prime(p) or p == 2:
        raise ValueError("need an odd prime")
    lam %= p
    if lam in (0, 1):
        raise ValueError(f"singular fiber at lambda = {lam}")
    count = 1
    for x in range(p):
        v = x * (x - 1) * (x - lam) % p
        if v == 0:
            count += 1
        elif pow(v, (p - 1) // 2, p) == 1:
            count += 2
    return p + 1 - count


# -- higher Hasse invariant and slopes -------------------------------------------------


def higher_hasse(L: ThetaOperator, p: int) -> Poly:
    """``(FG' - F'G)^{<p}`` mod p, with ``G = F_1``."""
    if L.order < 2:
        raise ValueError("higher Hasse invariant needs order >= 2")
    check_good_prime(L, p, p)
    C = _frobenius_coefficients(L, p, 2)
    g0 = Series._raw([c[0] for c in C], QQ)
    g1 = Series._raw([c[1] for c in C], QQ)
    wr1 = g0 * g0 + g0 * g1.theta() - g1 * g0.theta()
    try:
        return truncate(wr1.change_ring(GF(p)), p)
    except NotIntegral as e:
        raise BadPrime(f"FG' - F'G is not {p}-integral below degree {p}") from e


class SlopeSignature(Enum):
    ORDINARY = "0, 1"
    ZERO_THEN_STEEP = "0, >1"
    HALF_HALF = "1/2, 1/2"
    STEEP = ">1/2"


def slope_classification(h, hcheck) -> SlopeSignature:
    if h:
        return SlopeSignature.ORDINARY if hcheck else SlopeSignature.ZERO_THEN_STEEP
    return SlopeSignature.HALF_HALF if hcheck else SlopeSignature.STEEP


def slope_table(L: ThetaOperator, p: int) -> List[Tuple[int, SlopeSignature]]:
    """Slope signature at every ``x`` in ``F_p``."""
    H = hasse_candidate(L, p).hasse_poly
    Hc = higher_hasse(L, p)
    Fp = GF(p)
    return [(x, slope_classification(H(Fp(x)), Hc(Fp(x)))) for x in range(p)]


# -- integrality ------------------------------------------------------------------------


def integrality_report(L: ThetaOperator, N: int = 64) -> List[Tuple[int, int]]:
    """Primes in the denominators of ``F`` below degree ``N`` with their first degree."""
    F = solution_series(L, N)
    first = {}
    for k, c in enumerate(F.coeffs):
        d = Fraction(c).denominator
        if d == 1:
            continue
        for q in factorint(d):
            first.setdefault(q, k)
    return sorted(first.items())
