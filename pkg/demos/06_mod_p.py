"""Arithmetic mod p: Hasse polynomials, Dwork congruences and unit roots."""

from cyode import families
from cyode.modp import (
    dwork_congruence_check,
    elliptic_point_count,
    hasse_candidate,
    hensel_unit_root,
    slope_table,
    unit_root,
)

L = families.get("legendre").operator
for p in (5, 7, 11):
    H = hasse_candidate(L, p)
    print(f"p = {p}: F^<p = {H.hasse_poly}   (supersingular lambda are its roots)")

print("\nDwork congruence for every family, p = 7:")
for e in families.catalog():
    print(f"  {e.name:28s}", dwork_congruence_check(e.operator, 7, 1))

# the unit root from the operator matches the one from counting points
p, s = 7, 3
c = families.get("legendre").constant(p)
for x in range(2, p):
    u = unit_root(L, p, s, x, constant=c)
    a = elliptic_point_count(p, x)  # trace of Frobenius, p + 1 - #E
    v = "not-ordinary" if a % p == 0 else hensel_unit_root(a, p, s)
    print(f"  lambda = {x}: from L {u},  from a_p = {a}: {v}")

print("\nslopes of dwork(4) at p = 11:", [(x, sig.value) for x, sig in slope_table(families.get("dwork4").operator, 11)])
