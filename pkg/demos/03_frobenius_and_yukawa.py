"""Frobenius basis, mirror map and the Yukawa coupling of the quintic-type operator."""

from cyode import families, frobenius_basis, mirror_inverse, q_coordinate, tau_sequence, wronskians, yukawa_kappa

L = families.get("legendre").operator
B = frobenius_basis(L, 8)
print("Legendre F =", B.F)
q = q_coordinate(B)
print("q =", q)
print("lambda(q) =", mirror_inverse(q))

D = families.get("dwork4").operator
B = frobenius_basis(D, 8)
print("\ndwork(4) wronskians:")
for i, w in enumerate(wronskians(B)):
    print(f"  wr_{i} =", w.truncate(4))
print("taus:", [str(s.truncate(4)) for s in tau_sequence(B)])

# kappa is normalised to start at 1; the classical quintic couplings
# 5 + 2875 Q + 4876875 Q^2 + ... appear as 5 kappa after q = 5^5 Q
k = yukawa_kappa(B)
print("kappa(q) =", k.truncate(4))
print("5 kappa in Q = q/5^5:", [int(5 * k[i] * 5**(5 * i)) for i in range(4)])
