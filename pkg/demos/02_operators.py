"""Operators in theta = t d/dt: parsing, beta, self-adjointness and classification."""

from cyode import beta_rational, classify, formal_adjoint, parse_operator
from cyode.operator import check_condition_N, indicial_polynomial, relation_check

# the Legendre family, written the way it is usually displayed
L = parse_operator("theta^2 - lambda*(theta + 1/2)^2", param="lambda")
print("monic form:", L.to_string("lambda"))
print("indicial polynomial:", indicial_polynomial(L))
print("condition (N):", check_condition_N(L))

# beta = exp((2/n) int a_{n-1} dt/t) is rational here
print("beta =", beta_rational(L).to_string("lambda"))

# the adjoint of a self-adjoint operator is (-1)^n beta L beta^-1
print("adjoint:", formal_adjoint(L).to_string("lambda"))
print(classify(L))

# order four: the quintic-type family and a perturbation of it
D = parse_operator("theta^4 - 5^5*t*(theta+1/5)*(theta+2/5)*(theta+3/5)*(theta+4/5)")
print("dwork(4) relation:", relation_check(D))
P = parse_operator("theta^4 - 5^5*t*(theta+1/5)*(theta+2/5)*(theta+3/5)*(theta+4/5) + t*theta")
print("perturbed relation:", relation_check(P), "calabi-yau:", classify(P).calabi_yau)
