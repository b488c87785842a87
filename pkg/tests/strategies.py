"""Hypothesis strategies for series, polynomials and operators."""

from fractions import Fraction

from hypothesis import strategies as st

from cyode.operator import DiffOp, ThetaOperator
from cyode.poly import Poly, RationalFunction
from cyode.series import Series

small_rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


def series(order=32, constant=None):
    coeffs = st.lists(small_rationals, min_size=order, max_size=order)
    if constant is None:
        return coeffs.map(lambda c: Series(c, order))
    return coeffs.map(lambda c: Series([constant] + c[1:], order))


def polys(max_degree=3):
    return st.lists(small_rationals, min_size=0, max_size=max_degree + 1).map(Poly)


def nonzero_polys(max_degree=3):
    return polys(max_degree).filter(lambda p: not p.is_zero())


def rational_functions(max_degree=2):
    return st.builds(
        lambda n, d: RationalFunction(n, d),
        polys(max_degree),
        nonzero_polys(max_degree),
    )


def polynomial_coefficient(max_degree=2):
    return polys(max_degree).map(RationalFunction)


def diffops(max_order=3, max_degree=2):
    return st.lists(polynomial_coefficient(max_degree), min_size=1, max_size=max_order + 1).map(DiffOp)


def theta_operators(order, max_degree=2, vanish_at_zero=False):
    """Monic operators with polynomial coefficients of the given order."""
    def fix(p):
        if vanish_at_zero:
            return Poly([0] + list(p.coeffs))
        return p

    coeff = polys(max_degree).map(fix).map(RationalFunction)
    return st.lists(coeff, min_size=order, max_size=order).map(ThetaOperator)
