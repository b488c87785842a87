"""Order-changing constructions: symmetric square (2 -> 3), exterior square (4 -> 5),
their inverses, Hadamard products and operator guessing.

All formulas are written with ``'`` meaning ``theta = t d/dt``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .frobenius import frobenius_basis, theta_log_q, yukawa_kappa
from .linalg import nullspace
from .operator import (
    DiffOp,
    OperatorError,
    ThetaOperator,
    is_calabi_yau,
    relation_check,
    relation_check_order4,
)
from .pade import InsufficientOrder
from .poly import Poly, RationalFunction
from .rings import QQ
from .series import DEFAULT_ORDER, Series


class ConstructionError(OperatorError):
    """The input is outside the domain of a construction (or a verification failed)."""


def _th(f, k=1):
    for _ in range(k):
        f = f.theta()
    return f


def _need_order(L, n, what):
    if L.order != n:
        raise ConstructionError(f"{what} needs an order-{n} operator, got order {L.order}")


@dataclass
class ConstructionWitness:
    source: ThetaOperator
    target: ThetaOperator
    kind: str
    # None marks a check that could not be decided (beta not rational)
    residual: List[Tuple[str, Optional[bool]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v is not False for _, v in self.residual)


# -- symmetric square ------------------------------------------------------------


def sym_square(L: ThetaOperator) -> ThetaOperator:
    """``b_2 = 3a_1``, ``b_1 = 4a_0 + a_1' + 2a_1^2``, ``b_0 = 2a_0' + 4a_0 a_1``.

    The last formula is what ``theta^3 (y^2)`` reduces to modulo ``L``; the
    variant ``b_0 = a_0' + 2 a_0 a_1`` does not annihilate ``y^2``.
    """
    _need_order(L, 2, "sym_square")
    a0, a1 = L.a
    b2 = a1 * 3
    b1 = a0 * 4 + _th(a1) + a1 * a1 * 2
    b0 = _th(a0) * 2 + a0 * a1 * 4
    return ThetaOperator([b0, b1, b2], var=L.var)


def sym_square_inverse(J: ThetaOperator) -> ThetaOperator:
    """Recover ``(a_1, a_0)`` from ``b_2, b_1`` and check ``b_0``."""
    _need_order(J, 3, "sym_square_inverse")
    b0, b1, b2 = J.a
    a1 = b2 * (QQ(1) / 3)
    a0 = (b1 - _th(a1) - a1 * a1 * 2) * (QQ(1) / 4)
    residual = b0 - _th(a0) * 2 - a0 * a1 * 4
    if not residual.is_zero():
        raise ConstructionError(
            f"not a symmetric square: b_0 - 2a_0' - 4 a_0 a_1 = {residual.to_string(J.var)} != 0"
        )
    return ThetaOperator([a0, a1], var=J.var)


# -- exterior square -------------------------------------------------------------


def _ext_coefficients(a0, a1, a2, a3):
    h, q = QQ(1) / 2, QQ(1) / 4
    c4 = a3 * (QQ(5) / 2)
    c3 = a2 * 2 + _th(a3) * 2 + a3 * a3 * (QQ(7) / 4)
    c2 = -a1 + _th(a2) * 4 + a2 * a3 * (QQ(7) / 2)
    c1 = (
        a0 * (-4)
        + _th(a1) * 2
        + a2 * a2
        + _th(a2, 2)
        + a1 * a3 * (3 * h)
        + _th(a2) * a3 * (3 * h)
        + a2 * a3 * a3 * q
    )
    c0 = (
        _th(a0) * (-2)
        + _th(a1, 2)
        - a0 * a3 * 2
        + a1 * a2
        + _th(a1) * a3 * (3 * h)
        + a1 * a3 * a3 * q
    )
    return [c0, c1, c2, c3, c4]


def ext_square(L: ThetaOperator) -> ThetaOperator:
    """Second exterior power of a Calabi-Yau operator of order 4 (an order-5 operator)."""
    _need_order(L, 4, "ext_square")
    if not is_calabi_yau(L):
        raise ConstructionError("ext_square needs a Calabi-Yau operator (otherwise the order is 6)")
    return ThetaOperator(_ext_coefficients(*L.a), var=L.var)


def ext_square_inverse(J: ThetaOperator) -> ThetaOperator:
    """Solve the first four exterior-square formulas for ``a_3, a_2, a_1, a_0``."""
    _need_order(J, 5, "ext_square_inverse")
    c0, c1, c2, c3, c4 = J.a
    h = QQ(1) / 2
    a3 = c4 * (QQ(2) / 5)
    a2 = (c3 - _th(a3) * 2 - a3 * a3 * (QQ(7) / 4)) * h
    a1 = _th(a2) * 4 + a2 * a3 * (QQ(7) / 2) - c2
    a0 = (
        _th(a1) * 2
        + a2 * a2
        + _th(a2, 2)
        + a1 * a3 * (3 * h)
        + _th(a2) * a3 * (3 * h)
        + a2 * a3 * a3 * (QQ(1) / 4)
        - c1
    ) * (QQ(1) / 4)
    L = ThetaOperator([a0, a1, a2, a3], var=J.var)
    fifth = _ext_coefficients(a0, a1, a2, a3)[0] - c0
    if not fifth.is_zero():
        raise ConstructionError(f"a-check_0 formula fails; residual {fifth.to_string(J.var)}")
    if not relation_check_order4(L):
        raise ConstructionError("recovered order-4 operator violates the order-4 self-adjointness relation")
    return L


def construct(kind: str, L: ThetaOperator) -> ConstructionWitness:
    """Run a construction and record the identities that were checked."""
    fwd = {"sym-square": (sym_square, sym_square_inverse), "ext-square": (ext_square, ext_square_inverse)}
    inv = {"sym-square-inverse": (sym_square_inverse, sym_square), "ext-square-inverse": (ext_square_inverse, ext_square)}
    if kind in fwd:
        f, g = fwd[kind]
    elif kind in inv:
        f, g = inv[kind]
    else:
        raise ValueError(f"unknown construction {kind!r}")
    target = f(L)
    checks = [("roundtrip", g(target) == L)]
    if target.order >= 3:
        checks.append((f"order-{target.order} relation", relation_check(target)))
    return ConstructionWitness(L, target, kind, checks)


def check_qcheck_relation(L: ThetaOperator, N: int = 32) -> bool:
    """``theta log q-check = kappa * theta log q`` to order ``N``."""
    _need_order(L, 4, "check_qcheck_relation")
    B = frobenius_basis(L, N)
    Bc = frobenius_basis(ext_square(L), N)
    lhs = theta_log_q(Bc)
    rhs = yukawa_kappa(B, variable="t") * theta_log_q(B)
    return lhs.agrees_with(rhs, N)


# -- Hadamard products and guessing -----------------------------------------------


def hadamard(f: Series, g: Series) -> Series:
    return f.hadamard(g)


def minimal_annihilator(f: Series, rmax: int, dmax: int, margin: int = 8, var: str = "t") -> ThetaOperator:
    """Least-order, then least-degree ``sum_{i<=r} p_i(t) theta^i`` killing ``f``.

    Every available coefficient of ``f`` enters the linear system, so the
    returned operator annihilates ``f`` to its full truncation order.
    """
    need = (rmax + 1) * (dmax + 1) + rmax + margin
    if f.order < need:
        raise InsufficientOrder(f"need truncation order >= {need}, have {f.order}")
    ring = f.ring
    c = f.coeffs
    for r in range(1, rmax + 1):
        for d in range(dmax + 1):
            # unknown x[i*(d+1) + e] is the coefficient of t^e theta^i
            rows = []
            for k in range(f.order):
                row = []
                for i in range(r + 1):
                    for e in range(d + 1):
                        row.append(ring((k - e) ** i) * c[k - e] if k >= e else ring.zero)
                rows.append(row)
            basis = nullspace(rows, (r + 1) * (d + 1), ring)
            if not basis:
                continue
            v = basis[0]
            polys = [Poly(v[i * (d + 1) : (i + 1) * (d + 1)], ring) for i in range(r + 1)]
            op = DiffOp([RationalFunction(p) for p in polys], ring)
            L = ThetaOperator.from_diffop(op, var=var)
            if not L.apply(f).is_zero():
                raise ConstructionError("guessed operator fails re-verification")
            return L
    raise ConstructionError(f"no annihilator of order <= {rmax} with degree <= {dmax}")
