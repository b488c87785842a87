"""Exact computations with Calabi-Yau type differential operators in theta = t d/dt.

The most used names are re-exported here; everything else lives in the submodules
(``poly``, ``series``, ``operator``, ``frobenius``, ``constructions``, ``modp``,
``families``, ``parser``, ``cli``).
"""

from .constructions import (
    check_qcheck_relation,
    construct,
    ext_square,
    ext_square_inverse,
    hadamard,
    minimal_annihilator,
    sym_square,
    sym_square_inverse,
)
from .frobenius import (
    frobenius_basis,
    mirror_inverse,
    pairing_constants,
    q_coordinate,
    tau_sequence,
    u_basis,
    wronskians,
    yukawa_kappa,
)
from .operator import ThetaOperator, beta_rational, classify, formal_adjoint, is_calabi_yau
from .parser import format_operator, parse_operator
from .poly import Poly, RationalFunction
from .series import Series

__all__ = [
    "Poly",
    "RationalFunction",
    "Series",
    "ThetaOperator",
    "beta_rational",
    "check_qcheck_relation",
    "classify",
    "construct",
    "ext_square",
    "ext_square_inverse",
    "format_operator",
    "formal_adjoint",
    "frobenius_basis",
    "hadamard",
    "is_calabi_yau",
    "minimal_annihilator",
    "mirror_inverse",
    "pairing_constants",
    "parse_operator",
    "q_coordinate",
    "sym_square",
    "sym_square_inverse",
    "tau_sequence",
    "u_basis",
    "wronskians",
    "yukawa_kappa",
]
