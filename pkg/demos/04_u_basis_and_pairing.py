"""The u-basis of the horizontal sections and the constant pairing between them."""

from cyode import families, pairing_constants, u_basis

for name in ("legendre", "dwork3", "dwork4"):
    U = u_basis(families.get(name).operator, 12)
    print(name)
    for i, u in enumerate(U.u):
        # u_i = sum_r c_r eta^(r); show the first terms of each c_r
        print(f"  u_{i}:", ", ".join(str(c.truncate(3)) for c in u.coeffs))
    c = pairing_constants(U)
    print("  <u_i, u_(n-1-i)> =", [str(x) for x in c.constants])
    print("  other pairings vanish:", c.cross_zero)
