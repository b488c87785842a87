"""Symmetric and exterior squares, their inverses, and guessing an operator from a series."""

from cyode import construct, ext_square, families, hadamard, minimal_annihilator, parse_operator, sym_square
from cyode.constructions import sym_square_inverse

# Clausen: dwork(3) is the symmetric square of an order-two operator
D3 = families.get("dwork3").operator
M = sym_square_inverse(D3)
print("sym2-inv(dwork3) =", M.to_string("lambda"))
print("sym2 of that == dwork3:", sym_square(M) == D3)

D4 = families.get("dwork4").operator
print("\next2(dwork4) =", ext_square(D4).to_string("lambda"))
w = construct("ext-square", D4)
print("witness:", w.residual)

# the Hadamard square of the Legendre period satisfies an order-4 equation
F = families.get("legendre").operator
from cyode import frobenius_basis

f = frobenius_basis(F, 40).F
H = minimal_annihilator(hadamard(f, f), 4, 1, var="lambda")
print("\nguessed:", H.to_string("lambda"))
print("expected:", parse_operator("theta^4 - lambda*(theta+1/2)^4", "lambda").to_string("lambda"))
