"""Rational reconstruction of truncated series (Padé approximation)."""

from __future__ import annotations

from .linalg import nullspace
from .poly import Poly, RationalFunction
from .series import Series


class InsufficientOrder(ValueError):
    pass


def pade_reconstruct(f: Series, dnum: int, dden: int):
    """Find ``P/Q`` with ``deg P <= dnum``, ``deg Q <= dden``, ``Q(0) != 0`` matching ``f``.

    The candidate is fitted on the first ``dnum + dden + 1`` coefficients and
    accepted only if it re-expands to *every* available coefficient of ``f``.
    Returns a reduced :class:`RationalFunction`, or ``None`` when no such
    rational function exists within the bounds.
    """
    if not f.ring.is_field:
        raise TypeError("Padé reconstruction needs a coefficient field")
    if f.order < dnum + dden + 2:
        raise InsufficientOrder(
            f"need truncation order >= {dnum + dden + 2} for bounds ({dnum}, {dden}), have {f.order}"
        )
    c = f.coeffs
    ring = f.ring
    # unknowns q_0..q_dden; the coefficients dnum+1..dnum+dden of f*Q vanish
    rows = []
    for k in range(dnum + 1, dnum + dden + 1):
        rows.append([c[k - j] if k - j >= 0 else ring.zero for j in range(dden + 1)])
    for q in nullspace(rows, dden + 1, ring):
        Q = Poly(q, ring)
        if Q.is_zero():
            continue
        fq = f * Series.from_poly(Q, f.order)
        P = Poly(fq.coeffs[: dnum + 1], ring)
        r = RationalFunction(P, Q)
        if r.has_pole_at_zero():
            continue
        if r.series(f.order) == f:
            return r
        return None
    return None
