"""Command-line front end.

Every subcommand builds one result dictionary; ``--json`` prints it as a
document ``{"command": ..., "input": {...}, "result": {...}}`` with exact
rationals as strings, otherwise a text rendering is printed.  Errors go to
stderr as ``{"error": {"type", "message", "exit_code", ...}}``.

Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from . import constructions as cons
from . import families, frobenius, modp
from .operator import OperatorError, ThetaOperator, classify
from .pade import InsufficientOrder
from .parser import ParseError, parse_operator
from .poly import Poly
from .rings import ModInt, NotAUnit, format_scalar
from .series import DEFAULT_ORDER, Series

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "input", "result"],
    "properties": {
        "command": {"type": "string"},
        "input": {"type": "object"},
        "result": {"type": ["object", "array"]},
    },
    "additionalProperties": False,
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["type", "message", "exit_code"],
            "properties": {
                "type": {"type": "string"},
                "message": {"type": "string"},
                "exit_code": {"type": "integer", "enum": [1, 2]},
                "position": {"type": ["integer", "null"]},
            },
        }
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- rendering helpers ---------------------------------------------------------------


def _s(x) -> str:
    if isinstance(x, ModInt):
        return str(x.value)
    return format_scalar(x)


def _series(f: Series) -> dict:
    return {"order": f.order, "coefficients": [_s(c) for c in f.coeffs]}


def _series_text(f: Series, var, terms) -> str:
    return f.to_string(var, terms=terms)


class Context:
    def __init__(self, args):
        self.args = args
        self.N = args.N
        self.terms = args.terms
        self.var = args.param or "t"
        self.entry = None

    def operator(self, text) -> ThetaOperator:
        try:
            self.entry = families.get(text)
        except KeyError:
            self.entry = None
        for e in getattr(self.args, "_extra_entries", []):
            if e.name == text:
                self.entry = e
        if self.entry is not None:
            self.var = self.args.param or self.entry.parameter
            return self.entry.operator.with_var(self.var)
        return parse_operator(text, self.var)


def _op_json(L: ThetaOperator, var) -> dict:
    return {
        "order": L.order,
        "text": L.to_string(var),
        "coefficients": [a.to_string(var) for a in L.a],
    }


# -- subcommands ------------------------------------------------------------------------


def cmd_classify(ctx, args):
    L = ctx.operator(args.op)
    r = classify(L, ctx.N)
    var = ctx.var
    res = {
        "operator": _op_json(L, var),
        "condition_N": r.condition_N,
        "beta_series": _series(r.beta_series) if r.beta_series is not None else None,
        "beta_rational": r.beta_rational.to_string(var) if r.beta_rational is not None else None,
        "self_adjoint": "undetermined" if r.self_adjoint is None else r.self_adjoint,
        "calabi_yau": r.calabi_yau,
        "sl_n": "undetermined" if r.sl_n is None else r.sl_n,
        "relation": r.relation,
        "diagnostics": r.diagnostics,
    }
    lines = [
        f"operator:      {L.to_string(var)}",
        f"condition (N): {r.condition_N}",
        f"beta series:   {_series_text(r.beta_series, var, ctx.terms) if r.beta_series is not None else '-'}",
        f"beta rational: {res['beta_rational'] or 'undetermined'}",
        f"self-adjoint:  {res['self_adjoint']}",
        f"calabi-yau:    {r.calabi_yau}",
        f"SL(n):         {res['sl_n']}",
    ]
    if r.relation is not None:
        lines.append(f"order-{L.order} relation: {r.relation}")
    lines += [f"note: {d}" for d in r.diagnostics]
    return res, lines


def cmd_solve(ctx, args):
    L = ctx.operator(args.op)
    B = frobenius.frobenius_basis(L, ctx.N)
    res = {"operator": _op_json(L, ctx.var), "g": [_series(g) for g in B.g]}
    lines = [f"g_{j} = {_series_text(g, ctx.var, ctx.terms)}" for j, g in enumerate(B.g)]
    return res, lines


def cmd_qcoord(ctx, args):
    L = ctx.operator(args.op)
    B = frobenius.frobenius_basis(L, ctx.N)
    q = frobenius.q_coordinate(B)
    t = frobenius.mirror_inverse(q)
    res = {"q": _series(q), "mirror_map": _series(t)}
    lines = [f"q = {_series_text(q, ctx.var, ctx.terms)}", f"{ctx.var}(q) = {_series_text(t, 'q', ctx.terms)}"]
    return res, lines


def cmd_yukawa(ctx, args):
    L = ctx.operator(args.op)
    B = frobenius.frobenius_basis(L, ctx.N)
    k = frobenius.yukawa_kappa(B)
    return {"kappa": _series(k)}, [f"kappa = {_series_text(k, 'q', ctx.terms)}"]


def cmd_wronskians(ctx, args):
    L = ctx.operator(args.op)
    wr = frobenius.wronskians(frobenius.frobenius_basis(L, ctx.N))
    return {"wronskians": [_series(w) for w in wr]}, [
        f"wr_{i} = {_series_text(w, ctx.var, ctx.terms)}" for i, w in enumerate(wr)
    ]


def cmd_taus(ctx, args):
    L = ctx.operator(args.op)
    tau = frobenius.tau_sequence(frobenius.frobenius_basis(L, ctx.N))
    m = len(tau)
    sym = all(tau[i] == tau[m - 1 - i] for i in range(m))
    lines = [f"tau_{i + 1} = {_series_text(x, ctx.var, ctx.terms)}" for i, x in enumerate(tau)]
    lines.append(f"symmetric (tau_i = tau_(n-i)): {sym}")
    return {"tau": [_series(x) for x in tau], "symmetric": sym}, lines


def cmd_ubasis(ctx, args):
    L = ctx.operator(args.op)
    U = frobenius.u_basis(L, ctx.N)
    pc = frobenius.pairing_constants(U)
    res = {
        "u": [[_series(c) for c in u.coeffs] for u in U.u],
        "tau": [_series(x) for x in U.tau],
        "pairing_constants": [_s(c) for c in pc.constants],
        "cross_pairings_zero": pc.cross_zero,
    }
    lines = []
    for i, u in enumerate(U.u):
        lines.append(f"u_{i}:")
        lines += [f"  eta^({r}): {_series_text(c, ctx.var, ctx.terms)}" for r, c in enumerate(u.coeffs)]
    lines.append("pairing constants <u_i, u_(n-1-i)>: " + ", ".join(_s(c) for c in pc.constants))
    lines.append(f"cross pairings zero: {pc.cross_zero}")
    return res, lines


def _construction(kind):
    def run(ctx, args):
        L = ctx.operator(args.op)
        w = cons.construct(kind, L)
        res = {
            "kind": w.kind,
            "source": _op_json(w.source, ctx.var),
            "target": _op_json(w.target, ctx.var),
            "checks": {name: ok for name, ok in w.residual},
        }
        lines = [w.target.to_string(ctx.var)] + [f"check {name}: {'undetermined' if ok is None else ok}" for name, ok in w.residual]
        return res, lines

    return run


def cmd_qcheck(ctx, args):
    L = ctx.operator(args.op)
    N = min(ctx.N, 32) if args.N_given is None else ctx.N
    ok = cons.check_qcheck_relation(L, N)
    return {"holds": ok, "order": N}, [f"theta log q-check = kappa * theta log q to order {N}: {ok}"]


def _family_series(ctx, name, N):
    L = ctx.operator(name)
    return L, frobenius.power_series_solution(L, N)


def cmd_hadamard(ctx, args):
    L1, f = _family_series(ctx, args.family1, ctx.N)
    L2, g = _family_series(ctx, args.family2, ctx.N)
    h = cons.hadamard(f, g)
    res = {"series": _series(h)}
    lines = [f"F1 * F2 = {_series_text(h, ctx.var, ctx.terms)}"]
    if args.guess:
        rmax, dmax = args.guess
        A = cons.minimal_annihilator(h, rmax, dmax, var=ctx.var)
        res["annihilator"] = _op_json(A, ctx.var)
        lines.append(f"annihilator: {A.to_string(ctx.var)}")
    return res, lines


# -- mod p ---------------------------------------------------------------------------------


def _primes(args):
    if args.primes:
        try:
            return sorted({int(x) for x in args.primes.split(",") if x.strip()})
        except ValueError as e:
            raise UsageError(f"--primes must be a comma-separated list of integers: {e}") from e
    if args.p is None:
        raise UsageError("give -p P or --primes p1,p2,...")
    return [args.p]


def _fan_out(fn, primes):
    """Evaluate ``fn(p)`` for each prime; results ordered by prime."""
    if len(primes) == 1:
        return [fn(primes[0])]
    with ThreadPoolExecutor() as pool:
        return list(pool.map(fn, primes))


def _poly_text(P: Poly, var):
    return P.to_string(var)


def cmd_modp(ctx, args):
    L = ctx.operator(args.op)
    primes = _primes(args)
    var = ctx.var
    action = args.action

    def one(p):
        if action == "hasse":
            H = modp.hasse_candidate(L, p)
            r = {
                "p": p,
                "hasse_poly": _poly_text(H.hasse_poly, var),
                "degree": H.degree,
                "simple_roots": H.simple_roots,
                "constant_unit": H.constant_unit,
                "solution_check": H.solution_check,
                "polynomial_solution": H.polynomial_solution,
                "order_used": p + 1,
            }
            text = [
                f"p = {p}: H = {r['hasse_poly']}",
                f"  degree {H.degree}, simple roots {H.simple_roots}, unit constant {H.constant_unit}",
                f"  L(H) = 0 mod p: low degrees {H.solution_check}, all degrees {H.polynomial_solution}",
            ]
        elif action == "dwork":
            N = args.order or p ** (args.s + 1)
            ok = modp.dwork_congruence_check(L, p, args.s, N)
            r = {"p": p, "s": args.s, "holds": ok, "order_used": N}
            text = [f"p = {p}, s = {args.s}: congruence mod p^{args.s} to order {N}: {ok}"]
        elif action == "unitroot":
            c = args.constant
            if c is None:
                c = ctx.entry.constant(p) if ctx.entry is not None else 1
            u = modp.unit_root(L, p, args.s, args.x, c)
            value = str(u) if isinstance(u, modp.NotOrdinary) else str(u.value)
            r = {
                "p": p,
                "s": args.s,
                "x": args.x,
                "constant": c,
                "ordinary": not isinstance(u, modp.NotOrdinary),
                "value": value,
                "order_used": p**args.s,
            }
            text = [value if len(primes) == 1 else f"p = {p}: {value}"]
        elif action == "higher-hasse":
            Hc = modp.higher_hasse(L, p)
            r = {"p": p, "higher_hasse_poly": _poly_text(Hc, var), "degree": Hc.degree, "order_used": p}
            text = [f"p = {p}: {r['higher_hasse_poly']}"]
        elif action == "slopes":
            table = modp.slope_table(L, p)
            r = {"p": p, "slopes": {str(x): sig.value for x, sig in table}, "order_used": p}
            text = [f"p = {p}:"] + [f"  {var} = {x}: {sig.value}" for x, sig in table]
        else:  # pragma: no cover - argparse restricts the choices
            raise UsageError(f"unknown modp action {action}")
        return r, text

    results = _fan_out(one, primes)
    lines = [ln for _, text in results for ln in text]
    res = {"operator": _op_json(L, var), "results": [r for r, _ in results]}
    return res, lines


def cmd_oracle(ctx, args):
    a = modp.elliptic_point_count(args.p, args.x)
    res = {"p": args.p, "lambda": args.x, "a_p": a, "points": args.p + 1 - a}
    return res, [f"a_{args.p} = {a}  (#E = {args.p + 1 - a})"]


def cmd_catalog(ctx, args):
    if args.action == "list":
        es = families.catalog() + getattr(args, "_extra_entries", [])
        res = {"entries": [{"name": e.name, "order": e.order} for e in es]}
        return res, [f"{e.name:28s} order {e.order}" for e in es]
    e = None
    for cand in families.catalog() + getattr(args, "_extra_entries", []):
        if cand.name == args.name:
            e = cand
    if e is None:
        raise KeyError(f"no catalog entry named {args.name!r}")
    d = families.to_dict(e)
    lines = [
        f"name:       {e.name}",
        f"operator:   {e.operator.to_string(e.parameter)}",
        f"parameter:  {e.parameter}",
        f"provenance: {e.provenance}",
        f"expected:   {json.dumps(e.expected, sort_keys=True)}",
    ]
    return d, lines


# -- argument parsing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--N", type=int, default=None, help=f"truncation order (default {DEFAULT_ORDER})")
    common.add_argument("--param", default=None, help="name of the parameter symbol (default t)")
    common.add_argument("--terms", type=int, default=10, help="terms shown per series in text output")
    common.add_argument("--catalog", default=None, help="extra catalog file (JSON)")

    ap = _Parser(prog="cyode", description="Exact computations with Calabi-Yau type operators in theta = t d/dt.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def op_cmd(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("op", help="operator expression or catalog name")
        p.set_defaults(fn=fn)
        return p

    op_cmd("classify", cmd_classify, "condition (N), beta, self-adjointness, Calabi-Yau, SL(n)")
    op_cmd("solve", cmd_solve, "Frobenius basis g_0..g_{n-1}")
    op_cmd("qcoord", cmd_qcoord, "q-coordinate and its inverse")
    op_cmd("yukawa", cmd_yukawa, "Yukawa coupling kappa(q) (order 4)")
    op_cmd("wronskians", cmd_wronskians, "wronskians wr_0..wr_{n-1}")
    op_cmd("taus", cmd_taus, "tau sequence and its symmetry")
    op_cmd("ubasis", cmd_ubasis, "u-basis and pairing constants")
    op_cmd("sym2", _construction("sym-square"), "symmetric square (2 -> 3)")
    op_cmd("sym2-inv", _construction("sym-square-inverse"), "inverse symmetric square (3 -> 2)")
    op_cmd("ext2", _construction("ext-square"), "exterior square (4 -> 5)")
    op_cmd("ext2-inv", _construction("ext-square-inverse"), "inverse exterior square (5 -> 4)")
    op_cmd("qcheck", cmd_qcheck, "check dlog q-check = kappa dlog q (order 4)")

    h = sub.add_parser("hadamard", parents=[common], help="Hadamard product of two solutions")
    h.add_argument("family1")
    h.add_argument("family2")
    h.add_argument("--guess", nargs=2, type=int, metavar=("RMAX", "DMAX"), help="guess an annihilator")
    h.set_defaults(fn=cmd_hadamard)

    m = sub.add_parser("modp", help="arithmetic mod p")
    msub = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for action in ("hasse", "dwork", "unitroot", "higher-hasse", "slopes"):
        q = msub.add_parser(action, parents=[common])
        q.add_argument("op")
        q.add_argument("-p", type=int, default=None, help="prime")
        q.add_argument("--primes", default=None, help="comma-separated primes (evaluated concurrently)")
        if action in ("dwork", "unitroot"):
            q.add_argument("-s", type=int, default=1, help="level (mod p^s)")
        if action == "dwork":
            q.add_argument("--order", type=int, default=None, help="compare to this order (default p^(s+1))")
        if action == "unitroot":
            q.add_argument("-x", type=int, required=True, help="residue x0 mod p")
            q.add_argument("--constant", type=int, default=None, help="global constant c (default: family's, else 1)")
        q.set_defaults(fn=cmd_modp)

    o = sub.add_parser("oracle", help="test oracles")
    osub = o.add_subparsers(dest="action", required=True, parser_class=_Parser)
    lc = osub.add_parser("legendre-count", parents=[common], help="a_p of y^2 = x(x-1)(x-lambda)")
    lc.add_argument("-p", type=int, required=True)
    lc.add_argument("-x", type=int, required=True)
    lc.set_defaults(fn=cmd_oracle)

    c = sub.add_parser("catalog", help="built-in families")
    csub = c.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cl = csub.add_parser("list", parents=[common])
    cl.set_defaults(fn=cmd_catalog)
    cs = csub.add_parser("show", parents=[common])
    cs.add_argument("name")
    cs.set_defaults(fn=cmd_catalog)
    return ap


DOMAIN_ERRORS = (
    OperatorError,
    modp.BadPrime,
    NotAUnit,
    InsufficientOrder,
    ArithmeticError,
    KeyError,
    families.CatalogError,
    ValueError,
)


def _fail(exc, code, stream):
    err = {"type": type(exc).__name__, "message": str(exc).strip("'\""), "exit_code": code}
    if isinstance(exc, ParseError):
        err["position"] = exc.position
    stream.write(json.dumps({"error": err}) + "\n")
    return code


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _fail(e, 2, stderr)
    args.N_given = args.N
    if args.N is None:
        args.N = DEFAULT_ORDER
    try:
        if args.N < 2:
            raise UsageError("--N must be at least 2")
        args._extra_entries = families.load(args.catalog) if args.catalog else []
        ctx = Context(args)
        res, lines = args.fn(ctx, args)
    except (UsageError, ParseError) as e:
        return _fail(e, 2, stderr)
    except DOMAIN_ERRORS as e:
        return _fail(e, 1, stderr)
    if args.json:
        inputs = {k: v for k, v in vars(args).items() if k not in ("fn", "json", "_extra_entries", "N_given")}
        doc = {"command": " ".join(x for x in (args.command, getattr(args, "action", None)) if x), "input": inputs, "result": res}
        stdout.write(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        stdout.write("\n".join(lines) + "\n")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
