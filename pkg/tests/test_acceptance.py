"""Acceptance criteria, all at exact equality.

Each criterion is a function returning ``(passed, detail)``.  Under pytest every
criterion is one test and a PASS/FAIL line per criterion is printed in the
terminal summary; ``python tests/test_acceptance.py`` prints the same lines.
"""

import json
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cyode import families
from cyode.constructions import (
    check_qcheck_relation,
    ext_square,
    ext_square_inverse,
    hadamard,
    minimal_annihilator,
    sym_square,
    sym_square_inverse,
)
from cyode.frobenius import (
    LambdaElement,
    frobenius_basis,
    pairing,
    pairing_constants,
    power_series_solution,
    tau_sequence,
    theta_log_q,
    u_basis,
    yukawa_kappa,
)
from cyode.modp import (
    NotOrdinary,
    dwork_congruence_check,
    frobenius_ratio_rational,
    hasse_candidate,
    integrality_report,
    unit_root,
)
from cyode.operator import (
    DiffOp,
    ThetaOperator,
    beta_rational,
    is_calabi_yau,
    is_self_adjoint,
    relation_check_order4,
    rescale_parameter,
)
from cyode.poly import Poly, RationalFunction
from cyode.rings import GF
from cyode.series import LogSeries, Series

from oracles import deuring_polynomial, legendre_trace, pochhammer, quadratic_unit_root

N32 = 32
lam = RationalFunction.variable()
SEED = 20240601


def op(name):
    return families.get(name).operator


def catalog_ops():
    return {e.name: e.operator for e in families.catalog()}


def random_poly(rng, max_degree=2, vanish_at_zero=False):
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(max_degree + 1)]
    if vanish_at_zero:
        coeffs[0] = Fraction(0)
    return RationalFunction(Poly(coeffs))


def th(x, k=1):
    for _ in range(k):
        x = x.theta()
    return x


# -- the criteria ------------------------------------------------------------------------


def criterion_1():
    """beta factors of legendre and dwork(2, 3, 4) are exactly 1 - lambda."""
    got = {n: beta_rational(op(n)) for n in ("legendre", "dwork2", "dwork3", "dwork4")}
    bad = [n for n, b in got.items() if b != 1 - lam]
    return not bad, f"mismatch: {bad}" if bad else "all four equal 1 - lambda"


def criterion_2():
    """First 64 coefficients of F against the Pochhammer oracle."""
    cases = {"legendre": [Fraction(1, 2)] * 2}
    for n in (2, 3, 4):
        cases[f"dwork{n}"] = [Fraction(i, n + 1) for i in range(1, n + 1)]
    bad = []
    for name, params in cases.items():
        want = []
        for k in range(64):
            c = Fraction(1)
            for a in params:
                c *= pochhammer(a, k)
            want.append(c / pochhammer(1, k) ** len(params))
        if list(power_series_solution(op(name), 64).coeffs) != want:
            bad.append(name)
    return not bad, f"mismatch: {bad}" if bad else "legendre, dwork2-4 match to 64 terms"


def criterion_3():
    """Adjoint identity and the order-4 relation agree on dwork(4) and 10 perturbations."""
    L = op("dwork4")
    if not (is_self_adjoint(L) is True and relation_check_order4(L) is True):
        return False, "dwork4 not recognised as self-adjoint by both checks"
    rng = random.Random(SEED)
    disagreements = []
    for k in range(10):
        a = list(L.a)
        slot = rng.choice([1, 2, 3])
        a[slot] = a[slot] + random_poly(rng, 2, vanish_at_zero=True)
        P = ThetaOperator(a, var=L.var)
        sa, rel = is_self_adjoint(P), relation_check_order4(P)
        # None (beta not rational) is consistent with a failing relation
        if sa is True or rel is True or bool(sa) != rel:
            disagreements.append((k, slot, sa, rel))
    ok = not disagreements
    return ok, "10 perturbations: both checks false/undetermined" if ok else f"disagreements: {disagreements}"


def criterion_4():
    """sym2-inv o sym2 = id on 20 random operators; ext2-inv o ext2 = id on two order-4 operators."""
    rng = random.Random(SEED + 4)
    bad = 0
    for _ in range(20):
        L = ThetaOperator([random_poly(rng), random_poly(rng)])
        if sym_square_inverse(sym_square(L)) != L:
            bad += 1
    ext_bad = [n for n in ("dwork4", "hadamard-legendre-squared") if ext_square_inverse(ext_square(op(n))) != op(n)]
    ok = bad == 0 and not ext_bad
    return ok, f"sym2 failures {bad}/20, ext2 failures {ext_bad}"


def criterion_5():
    """theta log q-check = kappa * theta log q to order 32."""
    res = {n: check_qcheck_relation(op(n), N32) for n in ("dwork4", "hadamard-legendre-squared")}
    return all(res.values()), str(res)


def criterion_6():
    """u-basis recursion for all catalog operators; displayed order-4 formulas coefficientwise."""
    problems = []
    for name, L in catalog_ops().items():
        U = u_basis(L, N32)
        if not U.u[0].theta().is_zero():
            problems.append(f"{name}: theta u_0 != 0")
        for i in range(1, L.order):
            if U.u[i].theta() != U.u[i - 1] * U.tau[i - 1]:
                problems.append(f"{name}: theta u_{i} != tau_{i} u_{i - 1}")
    for name in ("dwork4", "hadamard-legendre-squared"):
        L = op(name)
        U = u_basis(L, N32)
        B = frobenius_basis(L, N32)
        beta = beta_rational(L).series(N32)
        a2 = L.a[2].series(N32)
        Fs = [th(B.F, k) for k in range(4)]
        Fl = [LogSeries.from_series(f) for f in Fs]
        Gs = [th(B.solution(1), k) for k in range(3)]

        def minor(i, j):
            return (Fl[i] * Gs[j] - Fl[j] * Gs[i]).log_free_part()

        w01, w02, w12 = minor(0, 1), minor(0, 2), minor(1, 2)
        c = beta * a2 - th(beta, 2)
        zero = Series.constant(0, N32)
        bF = beta / B.F
        want = [
            (-beta * Fs[3] - beta.theta() * Fs[2] - c * Fs[1], beta * Fs[2] + c * Fs[0], -beta * Fs[1] + beta.theta() * Fs[0], beta * Fs[0]),
            (bF * w12, -bF * w02, bF * w01, zero),
            (-Fs[1] / w01, Fs[0] / w01, zero, zero),
            (B.F.inverse(), zero, zero, zero),
        ]
        for i, (u, w) in enumerate(zip(U.u, want)):
            if u.coeffs != w:
                problems.append(f"{name}: u_{i} differs from the displayed formula")
        kappa = yukawa_kappa(B, variable="t")
        if U.u[2].theta() != U.u[1] * (kappa * theta_log_q(B)):
            problems.append(f"{name}: theta u_2 != kappa theta(log q) u_1")
    return not problems, "; ".join(problems) or "recursions and displayed formulas hold to order 32"


def criterion_7():
    """tau_i = tau_{n-i} to order 32."""
    bad = []
    for name in ("legendre", "dwork2", "dwork3", "dwork4", "hadamard-legendre-squared"):
        L = op(name)
        tau = tau_sequence(frobenius_basis(L, N32))
        n = L.order
        if any(tau[i - 1] != tau[n - i - 1] for i in range(1, n)):
            bad.append(name)
    return not bad, f"asymmetric: {bad}" if bad else "symmetric for all five operators"


def criterion_8():
    """Pairing symmetry, horizontality and constant u-pairings to order 32."""
    rng = random.Random(SEED + 8)
    problems = []
    for name, L in catalog_ops().items():
        n = L.order
        sign = (-1) ** (n + 1)
        for _ in range(3):
            x, y = (
                LambdaElement([Series([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(N32)], N32) for _ in range(n)], L)
                for _ in range(2)
            )
            if pairing(x, y) != pairing(y, x).scale(sign):
                problems.append(f"{name}: symmetry")
            lhs = pairing(x, y).theta()
            rhs = pairing(x.theta(), y) + pairing(x, y.theta())
            # theta of an order-32 element is known to order 31
            if not lhs.agrees_with(rhs, N32 - 1):
                problems.append(f"{name}: horizontality")
        pc = pairing_constants(u_basis(L, N32))
        if not pc.cross_zero or not all(pc.constants):
            problems.append(f"{name}: u-pairings")
    return not problems, "; ".join(problems) or "all five operators"


def criterion_9():
    """Legendre Hasse candidate vs the Deuring oracle; Dwork Hasse degrees."""
    problems = []
    for p in (5, 7, 11, 13):
        H = hasse_candidate(op("legendre"), p)
        # F^{<p} is the Deuring sum exactly; the Hasse invariant carries the sign (-1)^((p-1)/2)
        deuring = Poly(deuring_polynomial(p), GF(p))
        sign_ok = families.get("legendre").constant(p) == (-1) ** ((p - 1) // 2)
        if H.hasse_poly != deuring or not sign_ok or H.degree != (p - 1) // 2 or not H.simple_roots:
            problems.append(f"legendre p={p}")
    for n in (2, 3, 4):
        for p in (7, 11, 13):
            if (n + 1) % p == 0:
                continue
            if hasse_candidate(op(f"dwork{n}"), p).degree != (p - 1) // (n + 1):
                problems.append(f"dwork{n} p={p}")
    return not problems, "; ".join(problems) or "degrees exact, roots simple"


def criterion_10():
    """F^{<p^2} = F^{<p}(t) F^{<p}(t^p) mod p to order 60, p in {5, 7}."""
    bad = []
    for name, L in catalog_ops().items():
        for p in (5, 7):
            M = L
            if name == "dwork4" and p == 5:
                # 5 divides denominators of dwork4; lambda = 5^5 z is the 5-integral model
                M = rescale_parameter(L, 5**5)
            if not dwork_congruence_check(M, p, 1, 60):
                bad.append((name, p))
    return not bad, f"fails: {bad}" if bad else "all families, p = 5, 7 (dwork4 at 5 via lambda = 5^5 z)"


def criterion_11():
    """Unit root at s = 3 against the Hensel-lifted root from point counting."""
    entry = families.get("legendre")
    mismatches = []
    for p in (5, 7, 11, 13):
        for x in range(2, p):
            a = legendre_trace(p, x)
            got = unit_root(entry.operator, p, 3, x, entry.constant(p))
            if a % p == 0:
                if not isinstance(got, NotOrdinary):
                    mismatches.append((p, x, "expected not-ordinary"))
            elif isinstance(got, NotOrdinary) or got.value != quadratic_unit_root(a, p, 3):
                mismatches.append((p, x, str(got)))
    return not mismatches, f"mismatches: {mismatches}" if mismatches else "all residues agree mod p^3"


def criterion_12():
    """F(t)/F(t^p) is rational mod p, solves L mod p and starts like F^{<p}."""
    problems = []
    for name in ("legendre", "dwork2"):
        L = op(name)
        for p in (5, 7):
            try:
                fbar = frobenius_ratio_rational(L, p, p - 1)
            except ArithmeticError as e:
                problems.append(f"{name} p={p}: {e}")
                continue
            H = hasse_candidate(L, p).hasse_poly
            if not L.reduce_mod(p).apply(fbar).is_zero() or fbar.series(p + 1) != Series(H.coeffs, p + 1, GF(p)):
                problems.append(f"{name} p={p}")
    return not problems, "; ".join(problems) or "rational, annihilated, matches F^{<p}"


def criterion_13():
    """Guessing recovers theta^4 - lambda (theta + 1/2)^4 from the Hadamard square."""
    F = power_series_solution(op("legendre"), 40)
    L = minimal_annihilator(hadamard(F, F), 4, 1, var="lambda")
    th_ = DiffOp.theta()
    want = ThetaOperator.from_diffop(th_**4 - DiffOp([lam]) * (th_ + Fraction(1, 2)) ** 4, var="lambda")
    ok = L == want and is_calabi_yau(L)
    return ok, L.to_string("lambda")


_REPORT_SCRIPT = (
    "import json; from cyode import families; from cyode.modp import integrality_report; "
    "print(json.dumps({e.name: integrality_report(e.operator, 64) for e in families.catalog()}))"
)


def criterion_14():
    """Integrality: legendre only has 2; every report is finite and the same across runs."""
    here = {e.name: [list(x) for x in integrality_report(e.operator, 64)] for e in families.catalog()}
    out = subprocess.run([sys.executable, "-c", _REPORT_SCRIPT], capture_output=True, text=True, check=True)
    other = json.loads(out.stdout)
    primes = [q for q, _ in here["legendre"]]
    ok = primes == [2] and here == other
    return ok, json.dumps(here, sort_keys=True)


CRITERIA = [globals()[f"criterion_{k}"] for k in range(1, 15)]
RESULTS = {}


def _record(k):
    try:
        ok, detail = CRITERIA[k - 1]()
    except Exception as e:  # reported as a failing criterion, not swallowed
        ok, detail = False, f"{type(e).__name__}: {e}"
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {CRITERIA[k - 1].__doc__.strip()}  [{detail}]"
    RESULTS[k] = line
    return ok, line


@pytest.mark.parametrize("k", range(1, 15))
def test_acceptance(k):
    ok, line = _record(k)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for k in range(1, 15):
        ok, line = _record(k)
        failed += not ok
        print(line, flush=True)
    sys.exit(1 if failed else 0)
