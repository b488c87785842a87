"""Exact rational arithmetic: polynomials, rational functions, truncated series and Padé.

Everything is over Fraction, so every printed coefficient is exact.
"""

from fractions import Fraction

from cyode.pade import pade_reconstruct
from cyode.poly import RationalFunction
from cyode.series import Series, series_exp, series_log, series_reverse

t = RationalFunction.variable()

# rational functions are kept in a canonical normal form
f = (1 - t**2) / (1 - t)
print("(1 - t^2)/(1 - t) =", f)

# a series knows its truncation order and carries it through arithmetic
x = Series.variable(10)
g = 1 / (1 - x)
print("1/(1 - t)        =", g)
print("exp(log(1/(1-t)))=", series_exp(series_log(g)))

# compositional inverse of t/(1 - t) is t/(1 + t)
print("reverse          =", series_reverse(x * g))

# recover 1/(1 - t - t^2) from its first terms
fib = (1 / (1 - t - t**2)).series(12)
print("Padé [0/2] of Fibonacci:", pade_reconstruct(fib, 0, 2))
print("theta of 1/(1-t) at t^3:", g.theta()[3], "=", Fraction(3))
