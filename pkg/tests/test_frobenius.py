"""Frobenius bases, Wronskians, q-coordinates, Yukawa couplings, the pairing and the u-basis."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyode.frobenius import (
    LambdaElement,
    frobenius_basis,
    mirror_inverse,
    pairing,
    pairing_constants,
    pairing_table,
    power_series_solution,
    q_coordinate,
    tau_sequence,
    theta_log_q,
    u_basis,
    wronskian,
    wronskians,
    yukawa_kappa,
)
from cyode.operator import OperatorError, ThetaOperator, apply, beta_rational
from cyode.series import LogSeries, Series

from oracles import hypergeometric_coefficients, legendre_coefficients, legendre_log_partner, modular_lambda, quintic_yukawa
from strategies import small_rationals

N = 32
DWORK = {n: [Fraction(i, n + 1) for i in range(1, n + 1)] for n in (2, 3, 4)}


def th(x, k=1):
    for _ in range(k):
        x = x.theta()
    return x


# -- the holomorphic solution and its log partners -------------------------------------------


def test_legendre_solution(cat):
    F = power_series_solution(cat["legendre"], 64)
    assert F.coeffs[:3] == (1, Fraction(1, 4), Fraction(9, 64))
    assert list(F.coeffs) == legendre_coefficients(64)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dwork_solution(cat, n):
    F = power_series_solution(cat[f"dwork{n}"], 64)
    assert list(F.coeffs) == hypergeometric_coefficients(DWORK[n], 64)


def test_theta_power_basis():
    for n in (1, 2, 3, 4):
        B = frobenius_basis(ThetaOperator([0] * n), 8)
        assert B.F == Series.one(8)
        assert all(g.is_zero() for g in B.g[1:])
        assert B.solution(n - 1) == LogSeries.log_power(n - 1, 8)


def test_basis_annihilated(cat):
    for L in cat.values():
        B = frobenius_basis(L, 24)
        for Fi in B.solutions():
            assert L.apply(Fi).is_zero()


def test_solution_requires_condition_N():
    from cyode.poly import RationalFunction

    t = RationalFunction.variable()
    with pytest.raises(OperatorError):
        frobenius_basis(ThetaOperator([0, 1 + t]), 8)


# -- Wronskians, q, tau ------------------------------------------------------------


def test_wronskians_basic(cat):
    for L in cat.values():
        B = frobenius_basis(L, 24)
        wr = wronskians(B)
        assert wr[0] == B.F
        assert wr[1][0] == 1
        assert all(w[0] != 0 for w in wr)


def test_legendre_wr1_two_ways(cat):
    B = frobenius_basis(cat["legendre"], N)
    F, G = LogSeries.from_series(B.F), B.solution(1)
    direct = (F * G.theta() - F.theta() * G).log_free_part()
    assert wronskian(B, 1) == direct


def test_top_wronskian_is_beta_power(cat):
    # theta W = -a_{n-1} W and n theta(beta) = 2 a_{n-1} beta, so W = beta^(-n/2)
    for name in ("legendre", "dwork4", "hadamard-legendre-squared"):
        L = cat[name]
        B = frobenius_basis(L, 24)
        beta = beta_rational(L).series(24)
        w = wronskian(B, L.order - 1)
        assert w * w * beta**L.order == Series.one(24)


def test_q_coordinate_trivial():
    assert q_coordinate(frobenius_basis(ThetaOperator([0, 0]), 10)) == Series.variable(10)


def test_legendre_q_against_modular_lambda(cat):
    q = q_coordinate(frobenius_basis(cat["legendre"], 24))
    assert q[0] == 0 and q[1] == 1
    assert mirror_inverse(q) == Series(modular_lambda(24), 24)


def test_legendre_log_partner(cat):
    B = frobenius_basis(cat["legendre"], 24)
    assert list(B.g[1].coeffs) == legendre_log_partner(24)
    assert B.g[1].coeffs[:3] == (0, Fraction(1, 2), Fraction(21, 64))
    q = q_coordinate(B)
    assert q.coeffs[:5] == (0, 1, Fraction(1, 2), Fraction(21, 64), Fraction(31, 128))


def test_tau_examples(cat):
    assert tau_sequence(frobenius_basis(ThetaOperator([0, 0]), 8)) == [Series.one(8)]
    for L in cat.values():
        for tau in tau_sequence(frobenius_basis(L, N)):
            assert tau[0] == 1


@pytest.mark.parametrize("name", ["legendre", "dwork2", "dwork3", "dwork4", "hadamard-legendre-squared"])
def test_tau_symmetry(cat, name):
    L = cat[name]
    tau = tau_sequence(frobenius_basis(L, N))
    n = L.order
    for i in range(1, n):
        assert tau[i - 1] == tau[n - i - 1]


def test_tau1_is_theta_log_q(cat):
    B = frobenius_basis(cat["dwork3"], N)
    assert tau_sequence(B)[0] == theta_log_q(B)


# -- Yukawa coupling ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["dwork4", "hadamard-legendre-squared"])
def test_yukawa_identities(cat, name):
    L = cat[name]
    B = frobenius_basis(L, N)
    kappa = yukawa_kappa(B, variable="t")
    assert kappa[0] == 1
    assert yukawa_kappa(B)[0] == 1
    beta = beta_rational(L).series(N)
    w1 = wronskian(B, 1)
    tau = tau_sequence(B)
    assert kappa * theta_log_q(B) == B.F * B.F / (beta * w1 * w1)
    assert tau[1] == kappa * tau[0]


def test_quintic_yukawa_oracle(cat):
    # lambda = 5^5 z turns dwork4 into the quintic mirror operator
    k = yukawa_kappa(frobenius_basis(cat["dwork4"], 5))
    qy = quintic_yukawa(4)
    for i in range(4):
        assert k[i] * 5 * 3125**i == qy[i]


def test_yukawa_needs_order_four(cat):
    with pytest.raises(OperatorError):
        yukawa_kappa(frobenius_basis(cat["dwork3"], 8))


# -- pairing ---------------------------------------------------------------------


@pytest.mark.parametrize("name", ["legendre", "dwork3", "dwork4"])
def test_pairing_table_shape(cat, name):
    L = cat[name]
    n = L.order
    T = pairing_table(L, 16)
    gamma = beta_rational(L).series(16).inverse()
    for i in range(n):
        for j in range(n):
            if i + j < n - 1:
                assert T[i][j].is_zero()
            elif i + j == n - 1:
                assert T[i][j] == (gamma if i % 2 == 0 else -gamma)
    assert T[0][n - 2].is_zero()
    assert T[1][n - 2] == -gamma


def test_pairing_theta_squared():
    L = ThetaOperator([0, 0])
    U = u_basis(L, 8)
    # u_0 = eta', u_1 = eta; the table puts <eta', eta> = -1/beta for n = 2
    assert U.u[0].coeffs == (Series.constant(0, 8), Series.one(8))
    assert pairing(U.u[1], U.u[0]) == Series.one(8)
    assert pairing(U.u[0], U.u[1]) == -Series.one(8)


def lambda_elements(L, order):
    coeff = st.lists(small_rationals, min_size=order, max_size=order).map(lambda c: Series(c, order))
    return st.lists(coeff, min_size=L.order, max_size=L.order).map(lambda cs: LambdaElement(cs, L))


@pytest.mark.parametrize("name", ["legendre", "dwork3", "dwork4"])
def test_pairing_symmetry_and_horizontality(cat, name):
    L = cat[name]
    sign = (-1) ** (L.order + 1)

    @settings(max_examples=15)
    @given(lambda_elements(L, 12), lambda_elements(L, 12))
    def check(x, y):
        assert pairing(x, y) == pairing(y, x).scale(sign)
        lhs = pairing(x, y).theta()
        rhs = pairing(x.theta(), y) + pairing(x, y.theta())
        assert lhs.agrees_with(rhs, 11)

    check()


# -- u-basis -------------------------------------------------------------------------


def test_u_basis_order_two(cat):
    L = cat["legendre"]
    U = u_basis(L, N)
    B = frobenius_basis(L, N)
    beta = beta_rational(L).series(N)
    F = B.F
    zero = Series.constant(0, N)
    # u_0 = beta [F eta' - F' eta], u_1 = eta / F
    assert U.u[0].coeffs == (-beta * F.theta(), beta * F)
    assert U.u[1].coeffs == (F.inverse(), zero)


@pytest.mark.parametrize("name", ["dwork4", "hadamard-legendre-squared"])
def test_u_basis_order_four(cat, name):
    L = cat[name]
    U = u_basis(L, N)
    B = frobenius_basis(L, N)
    beta = beta_rational(L).series(N)
    a2 = L.a[2].series(N)
    Fs = [th(B.F, k) for k in range(4)]
    Fl = [LogSeries.from_series(f) for f in Fs]
    Gs = [th(B.solution(1), k) for k in range(3)]

    def minor(i, j):
        return (Fl[i] * Gs[j] - Fl[j] * Gs[i]).log_free_part()

    w01, w02, w12 = minor(0, 1), minor(0, 2), minor(1, 2)
    c = beta * a2 - th(beta, 2)
    zero = Series.constant(0, N)
    u0 = (
        -beta * Fs[3] - beta.theta() * Fs[2] - c * Fs[1],
        beta * Fs[2] + c * Fs[0],
        -beta * Fs[1] + beta.theta() * Fs[0],
        beta * Fs[0],
    )
    bF = beta / B.F
    u1 = (bF * w12, -bF * w02, bF * w01, zero)
    u2 = (-Fs[1] / w01, Fs[0] / w01, zero, zero)
    u3 = (B.F.inverse(), zero, zero, zero)
    for got, want in zip(U.u, (u0, u1, u2, u3)):
        assert got.coeffs == want

    kappa = yukawa_kappa(B, variable="t")
    dlogq = theta_log_q(B)
    assert U.u[2].theta() == U.u[1] * (kappa * dlogq)
    assert U.u[3].theta() == U.u[2] * dlogq


def test_u_basis_recursion_all_catalog(cat):
    for L in cat.values():
        U = u_basis(L, N)
        assert U.u[0].theta().is_zero()
        for i in range(1, L.order):
            assert U.u[i].theta() == U.u[i - 1] * U.tau[i - 1]


def test_pairing_constants(cat):
    for L in cat.values():
        pc = pairing_constants(u_basis(L, N))
        assert pc.cross_zero
        assert all(c != 0 for c in pc.constants)
    pc = pairing_constants(u_basis(cat["legendre"], N))
    assert pc.constants == [Fraction(-1), Fraction(1)]
