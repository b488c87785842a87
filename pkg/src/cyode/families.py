"""Built-in hypergeometric families and a JSON catalog format.

All operators are written in the family parameter ``lambda`` at the point
``lambda = 0``.  A catalog file is a JSON array of objects::

    {"name": "legendre", "order": 2, "parameter": "lambda",
     "coefficients": ["<a_0>", "<a_1>"],
     "expected": {"beta": "1 - lambda", "hasse_degree": {"5": 2}},
     "provenance": "...", "hasse_constant": "(-1)^((p-1)/2)"}

``coefficients`` are the monic ``a_0, ..., a_{n-1}`` in the operator grammar;
``provenance`` and ``hasse_constant`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .operator import ThetaOperator, beta_rational, check_condition_N, is_calabi_yau
from .parser import ParseError, parse_operator, parse_rational_function

PARAM = "lambda"

# names of the global constants c with H = c * F^{<p} mod p
HASSE_CONSTANTS = {
    "1": lambda p: 1,
    "(-1)^((p-1)/2)": lambda p: (-1) ** ((p - 1) // 2),
}


class CatalogError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass
class FamilyEntry:
    name: str
    operator: ThetaOperator
    provenance: str = ""
    expected: Dict = field(default_factory=dict)
    hasse_constant: str = "1"
    parameter: str = PARAM

    @property
    def order(self) -> int:
        return self.operator.order

    @property
    def calabi_yau(self) -> bool:
        return is_calabi_yau(self.operator)

    def constant(self, p: int) -> int:
        return HASSE_CONSTANTS[self.hasse_constant](p)

    def __eq__(self, other):
        if not isinstance(other, FamilyEntry):
            return NotImplemented
        return (self.name, self.operator, self.provenance, self.expected, self.hasse_constant, self.parameter) == (
            other.name,
            other.operator,
            other.provenance,
            other.expected,
            other.hasse_constant,
            other.parameter,
        )


def verify_entry(entry: FamilyEntry) -> List[str]:
    """Check the invariants and recorded expectations; return failures (empty if fine)."""
    from .modp import hasse_candidate

    L = entry.operator
    problems = []
    if not check_condition_N(L):
        return [f"{entry.name}: condition (N) fails at {entry.parameter} = 0"]
    exp = entry.expected
    if "beta" in exp:
        want = parse_rational_function(exp["beta"], entry.parameter)
        got = beta_rational(L)
        if got != want:
            shown = "undetermined" if got is None else got.to_string(entry.parameter)
            problems.append(f"{entry.name}: beta is {shown}, expected {exp['beta']}")
    for p, deg in exp.get("hasse_degree", {}).items():
        got = hasse_candidate(L, int(p)).degree
        if got != deg:
            problems.append(f"{entry.name}: Hasse degree at p = {p} is {got}, expected {deg}")
    return problems


def _family(name, source, provenance, expected, hasse_constant="1"):
    L = parse_operator(source, PARAM)
    return FamilyEntry(name, L, provenance, expected, hasse_constant)


def _dwork_source(n):
    factors = "*".join(f"(theta + {i}/{n + 1})" for i in range(1, n + 1))
    return f"theta^{n} - lambda*{factors}"


def _hasse_degrees(primes, n):
    return {str(p): (p - 1) // (n + 1) for p in primes if (n + 1) % p}


def _build_catalog():
    out = [
        _family(
            "legendre",
            "theta^2 - lambda*(theta + 1/2)^2",
            "Legendre family y^2 = x(x-1)(x-lambda); F = 2F1(1/2, 1/2; 1; lambda)",
            {"beta": "1 - lambda", "hasse_degree": {str(p): (p - 1) // 2 for p in (5, 7, 11, 13)}},
            "(-1)^((p-1)/2)",
        )
    ]
    for n in (2, 3, 4):
        out.append(
            _family(
                f"dwork{n}",
                _dwork_source(n),
                f"Dwork family x_0^{n + 1} + ... + x_{n}^{n + 1} = (n+1) psi x_0...x_{n}, lambda = psi^-{n + 1}",
                {"beta": "1 - lambda", "hasse_degree": _hasse_degrees((7, 11, 13), n)},
            )
        )
    out.append(
        _family(
            "hadamard-legendre-squared",
            "theta^4 - lambda*(theta + 1/2)^4",
            "minimal annihilator of the Hadamard square of the Legendre period (order 4, degree 1)",
            {"beta": "1 - lambda", "hasse_degree": {str(p): (p - 1) // 2 for p in (5, 7, 11, 13)}},
        )
    )
    return out


_CATALOG: Optional[List[FamilyEntry]] = None


def catalog() -> List[FamilyEntry]:
    global _CATALOG
    if _CATALOG is None:
        entries = _build_catalog()
        for e in entries:
            problems = verify_entry(e)
            if problems:
                raise CatalogError("; ".join(problems))
        _CATALOG = entries
    return list(_CATALOG)


def get(name: str) -> FamilyEntry:
    for e in catalog():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}; known: {', '.join(e.name for e in catalog())}")


# -- serialisation -----------------------------------------------------------------


def to_dict(entry: FamilyEntry) -> dict:
    d = {
        "name": entry.name,
        "order": entry.order,
        "parameter": entry.parameter,
        "coefficients": [a.to_string(entry.parameter) for a in entry.operator.a],
        "expected": entry.expected,
    }
    if entry.provenance:
        d["provenance"] = entry.provenance
    if entry.hasse_constant != "1":
        d["hasse_constant"] = entry.hasse_constant
    return d


def from_dict(d: dict, where: str = "entry") -> FamilyEntry:
    if not isinstance(d, dict):
        raise CatalogError(f"{where}: expected an object")
    for key in ("name", "order", "coefficients"):
        if key not in d:
            raise CatalogError(f"{where}: missing field {key!r}")
    name = d["name"]
    param = d.get("parameter", PARAM)
    if not isinstance(d["order"], int) or d["order"] < 1:
        raise CatalogError(f"{name}: order must be a positive integer")
    if len(d["coefficients"]) != d["order"]:
        raise CatalogError(f"{name}: expected {d['order']} coefficients, got {len(d['coefficients'])}")
    coeffs = []
    for i, text in enumerate(d["coefficients"]):
        try:
            coeffs.append(parse_rational_function(text, param))
        except ParseError as e:
            raise CatalogError(f"{name}: coefficient a_{i}: {e}") from e
    expected = dict(d.get("expected", {}))
    if "hasse_degree" in expected:
        expected["hasse_degree"] = {str(k): int(v) for k, v in expected["hasse_degree"].items()}
    hc = d.get("hasse_constant", "1")
    if hc not in HASSE_CONSTANTS:
        raise CatalogError(f"{name}: unknown hasse_constant {hc!r}")
    entry = FamilyEntry(name, ThetaOperator(coeffs, var=param), d.get("provenance", ""), expected, hc, param)
    if not check_condition_N(entry.operator):
        raise CatalogError(f"{name}: rejected, condition (N) fails at {param} = 0")
    problems = verify_entry(entry)
    if problems:
        raise CatalogError("; ".join(problems))
    return entry


def dumps(entries) -> str:
    if isinstance(entries, FamilyEntry):
        entries = [entries]
    return json.dumps([to_dict(e) for e in entries], indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> List[FamilyEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CatalogError(f"malformed catalog: {e.msg}", e.lineno, e.colno) from e
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise CatalogError("catalog must be a JSON array of entries")
    return [from_dict(d, f"entry {i}") for i, d in enumerate(data)]


def save(entries, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(entries))


def load(path) -> List[FamilyEntry]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
