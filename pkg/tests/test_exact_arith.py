"""Rings, polynomials, rational functions, truncated series and Padé reconstruction."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyode.linalg import nullspace, rref
from cyode.pade import InsufficientOrder, pade_reconstruct
from cyode.poly import Poly, RationalFunction
from cyode.rings import GF, QQ, NotAUnit, NotIntegral, Zmod, format_scalar, is_prime, valuation
from cyode.series import LogSeries, Series, determinant, log_integrate, series_exp, series_log, series_reverse, theta_derive

from oracles import catalan_reversion, exp_coefficients
from strategies import nonzero_polys, polys, rational_functions, series, small_rationals

N = 16
t = Series.variable(N)


# -- scalars ----------------------------------------------------------------------


def test_is_prime_and_valuation():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert valuation(250, 5) == 3
    assert valuation(7, 5) == 0


def test_modular_residues():
    R = Zmod(5, 3)
    assert R(2) ** 5 == R(32)
    assert R(Fraction(1, 4)) * 4 == 1
    assert GF(5)(Fraction(9, 64)) == 1
    assert R(124).lift(centered=True) == -1
    with pytest.raises(NotIntegral):
        R(Fraction(1, 5))
    with pytest.raises(NotAUnit):
        R(10).inverse()


def test_mixed_rings_rejected():
    with pytest.raises(TypeError):
        GF(5)(1) + GF(7)(1)


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        Zmod(6, 1)


def test_format_scalar():
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(5) == "5"
    assert format_scalar(Zmod(5, 2)(7)) == "7"


# -- polynomials and rational functions -----------------------------------------------


def test_poly_division():
    a = Poly([1, 0, 1])
    b = Poly([1, 1])
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


def test_poly_gcd_and_squarefree():
    f = Poly([1, 1]) ** 2 * Poly([2, 0, 1])
    assert f.gcd(Poly([1, 1]) * Poly([3])) == Poly([1, 1])
    assert not f.is_squarefree()
    assert Poly([1, 0, 1]).is_squarefree()
    assert Poly([1, 2, 1]).squarefree_decomposition() == [(Poly([1, 1]), 2)]


def test_poly_theta():
    assert Poly([1, 1, 1]).theta() == Poly([0, 1, 2])


def test_rational_function_normal_form():
    r = RationalFunction(Poly([2, 2]), Poly([4, -4]))
    assert r.den.lc() == 1
    assert r.num.gcd(r.den).degree == 0
    assert r == RationalFunction(Poly([1, 1]), Poly([2, -2]))


def test_rational_function_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Poly([1]), Poly([]))


def test_rational_function_theta_quotient_rule():
    x = RationalFunction.variable()
    r = 1 / (1 - x)
    assert r.theta() == x / ((1 - x) * (1 - x))


def test_rational_function_mod_p():
    x = RationalFunction.variable()
    r = (x - Fraction(1, 3125)).inverse()
    # primitive integral denominator 3125 t - 1 reduces to -1 mod 5
    assert r.change_ring(GF(5)) == RationalFunction.constant(GF(5)(-3125), GF(5))
    assert r.content_denominator() == 1


@given(rational_functions(), rational_functions())
def test_rational_function_canonical(r, s):
    for v in (r + s, r * s, r - s):
        assert v.den.lc() == 1
        assert v.num.gcd(v.den).degree == 0
    assert (r + s) - s == r


@given(polys(), nonzero_polys())
def test_poly_divmod_property(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


# -- linear algebra ------------------------------------------------------------------


def test_nullspace():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace(rows, 3, QQ)
    assert len(basis) == 2
    for v in basis:
        for row in rows:
            assert sum(QQ(a) * b for a, b in zip(row, v)) == 0


def test_rref_mod_p():
    R = GF(7)
    rows = [[R(1), R(2)], [R(3), R(6)]]
    reduced, pivots = rref(rows, R)
    assert pivots == [0]


# -- series --------------------------------------------------------------------------


def test_theta_examples():
    assert Series.one(N).theta().is_zero()
    assert (t**3).theta() == (t**3).scale(3)
    assert Series([1, 1, 1], N).theta() == Series([0, 1, 2], N)
    assert theta_derive(t) == t


def test_log_integrate_examples():
    assert log_integrate(t.scale(2)) == t.scale(2)
    assert (t + t * t).log_integrate() == Series([0, 1, Fraction(1, 2)], N)
    with pytest.raises(ValueError):
        Series.one(N).log_integrate()


def test_exp_examples():
    assert series_exp(Series.constant(0, N)) == Series.one(N)
    assert series_exp(series_log(1 + t)) == 1 + t
    assert t.exp() == Series(exp_coefficients(N), N)


def test_reverse_examples():
    assert series_reverse(t) == t
    assert (t + t * t).reverse() == Series(catalan_reversion(N), N)
    f = t + t * t * 3 + t**3
    assert f.reverse().reverse() == f


def test_reverse_needs_linear_term():
    with pytest.raises(ValueError):
        (t * t).reverse()


def test_series_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        t.inverse()


def test_spread_and_hadamard():
    f = Series(range(1, N + 1), N)
    assert f.spread(3)[3] == 2 and f.spread(3)[4] == 0
    geom = Series([1] * N, N)
    assert geom.hadamard(f) == f


def test_to_string():
    assert Series([1, 2, 3], 5).to_string() == "1 + 2*t + 3*t^2 + O(t^5)"


def test_log_series_theta():
    L = LogSeries.log_power(2, N)
    assert L.theta() == LogSeries.log_power(1, N)
    assert (L * L).log_degree == 4


def test_log_series_determinant():
    a = LogSeries.from_series(Series.one(N))
    b = LogSeries.log_power(1, N)
    det = determinant([[a, a.theta()], [b, b.theta()]])
    assert det.log_free_part() == Series.one(N)


@given(series(32, constant=1))
def test_exp_log_roundtrip(u):
    assert series_exp(series_log(u)) == u


@given(series(32, constant=0))
def test_log_exp_roundtrip(f):
    assert series_log(series_exp(f)) == f


@given(series(24), series(24))
def test_theta_leibniz(f, g):
    assert (f * g).theta() == f.theta() * g + f * g.theta()


@given(st.lists(small_rationals, min_size=23, max_size=23))
def test_reverse_two_sided(tail):
    f = Series([0, 1] + tail, 24)
    g = f.reverse()
    x = Series.variable(24)
    assert f.compose(g) == x
    assert g.compose(f) == x


# -- Padé ------------------------------------------------------------------------


def test_pade_examples():
    x = RationalFunction.variable()
    assert pade_reconstruct(Series([1] * 10, 10), 0, 1) == 1 / (1 - x)
    assert pade_reconstruct(Series([1, -1], 10), 1, 0) == 1 - x


def test_pade_exp_fails():
    # (3,3) is fitted on 7 coefficients; the 8th one disagrees
    assert pade_reconstruct(t.exp().truncate(8), 3, 3) is None


def test_pade_insufficient_order():
    with pytest.raises(InsufficientOrder):
        pade_reconstruct(Series([1, 1, 1], 3), 1, 1)


@given(polys(2), nonzero_polys(2).filter(lambda q: q[0] != 0))
def test_pade_success_reproduces_input(P, Q):
    r = RationalFunction(P, Q)
    f = r.series(20)
    got = pade_reconstruct(f, 2, 2)
    assert got is not None
    assert got.series(20) == f
    assert got == r
