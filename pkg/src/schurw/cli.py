"""Command-line front end.  Every result is printed as JSON.

Exit status: 0 on success, 1 on a failed verification or cross-check, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .combinat import parse_intvector
from .exactpoly import rat, rat_str
from .tau import A_coeff, E_coeff, TauDiscrepancy, chain_count, double_fact, tau_bgw, tau_kw
from .vertex import QBASIS, SCHUR, hall_littlewood, qfun, schur
from .verify import SUITES, run_suite
from .wops import (
    NAMES,
    NamedOp,
    OpSpec,
    apply_named,
    apply_P_brute,
    apply_P_closed_q,
    apply_P_closed_s,
    apply_P_modes,
    closed_action_named,
    coeff_c,
    coeff_d,
    coeff_g,
    coeff_h,
)


class UsageError(Exception):
    pass


def _vector(text: str) -> tuple:
    try:
        return parse_intvector(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _rational(text: str):
    try:
        return rat(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    parser = argparse.ArgumentParser(prog="schurw", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    fn = sub.add_parser("fn", parents=[common], help="build S_lambda, Q_lambda or H_lambda")
    fn.add_argument("--basis", choices=["schur", "q", "hl"], required=True)
    fn.add_argument("--lambda", dest="lam", type=_vector, required=True)
    fn.add_argument("--rho", type=_rational)

    act = sub.add_parser("act", parents=[common], help="apply P^(k)_m or a named operator")
    act.add_argument("--op", choices=NAMES, required=True)
    act.add_argument("--k", type=int)
    act.add_argument("--m", type=int)
    act.add_argument("--basis", choices=["schur", "q"], required=True)
    act.add_argument("--lambda", dest="lam", type=_vector, required=True)
    act.add_argument("--mode", choices=["closed", "brute", "modes", "all"], default="closed")

    coef = sub.add_parser("coef", parents=[common], help="evaluate a coefficient function")
    coef.add_argument("--name", choices=["d", "c", "h", "g", "E", "A", "c-chain", "dfact"], required=True)
    coef.add_argument("--args", nargs="*", default=[])

    tau = sub.add_parser("tau", parents=[common], help="truncated tau-function expansion")
    tau.add_argument("--model", choices=["bgw", "kw"], required=True)
    tau.add_argument("--order", type=int, required=True)
    tau.add_argument("--method", choices=["cutjoin", "closed", "both"], default="both")

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    ver.add_argument("--max-weight", type=int)
    return parser


# -- subcommands -------------------------------------------------------------


def cmd_fn(args) -> tuple:
    if args.basis == "hl":
        if args.rho is None:
            raise UsageError("--basis hl needs --rho")
        p = hall_littlewood(args.lam, args.rho)
    else:
        if args.rho is not None:
            raise UsageError("--rho only applies to --basis hl")
        p = schur(args.lam) if args.basis == "schur" else qfun(args.lam)
    return 0, p.to_json()


def _act_P(args) -> tuple:
    if args.k is None or args.m is None:
        raise UsageError("--op P needs --k and --m")
    rho = -1 if args.basis == "q" else 0
    f = qfun(args.lam) if args.basis == "q" else schur(args.lam)
    spec = OpSpec(args.k, args.m, rho)

    def closed():
        return (apply_P_closed_q if args.basis == "q" else apply_P_closed_s)(args.k, args.m, args.lam)

    if args.mode == "closed":
        return 0, closed().to_json()
    if args.mode == "brute":
        return 0, apply_P_brute(spec, f).to_json()
    if args.mode == "modes":
        return 0, apply_P_modes(spec, f).to_json()
    c = closed()
    b = apply_P_brute(spec, f)
    out = {"closed": c.to_json(), "brute": b.to_json()}
    agree = c.to_poly() == b
    if args.k <= 3:
        md = apply_P_modes(spec, f)
        out["modes"] = md.to_json()
        agree = agree and md == b
    out["agree"] = agree
    return (0 if agree else 1), out


def _act_named(args) -> tuple:
    if args.k is not None:
        raise UsageError(f"--k does not apply to {args.op}")
    op = NamedOp(args.op, args.m)
    want = QBASIS if args.basis == "q" else SCHUR
    if op.basis != want:
        raise UsageError(f"{args.op} acts in the {op.basis} basis")
    f = qfun(args.lam) if want == QBASIS else schur(args.lam)
    if args.mode == "closed":
        return 0, closed_action_named(op, args.lam).to_json()
    if args.mode in ("brute", "modes"):
        return 0, apply_named(op, f).to_json()
    c = closed_action_named(op, args.lam)
    lit = apply_named(op, f)
    agree = c.to_poly() == lit
    return (0 if agree else 1), {"closed": c.to_json(), "operator": lit.to_json(), "agree": agree}


def cmd_act(args) -> tuple:
    if args.op == "P":
        return _act_P(args)
    return _act_named(args)


def _ints(values: Sequence[str], count: int, name: str) -> list:
    if len(values) != count:
        raise UsageError(f"coefficient {name} takes {count} arguments")
    try:
        return [int(v) for v in values]
    except ValueError:
        raise UsageError(f"coefficient {name} takes integer arguments")


def _label(values: Sequence[str]) -> tuple:
    try:
        if len(values) == 1:
            return parse_intvector(values[0])
        return tuple(int(v) for v in values)
    except ValueError:
        raise UsageError("expected a partition as comma-separated integers")


def cmd_coef(args) -> tuple:
    name, a = args.name, args.args
    if name == "d":
        k, n = _ints(a, 2, name)
        value = coeff_d(k, n)
    elif name == "c":
        k, m, n = _ints(a, 3, name)
        value = coeff_c(k, m, n)
    elif name in ("h", "g"):
        if len(a) != 3:
            raise UsageError(f"coefficient {name} takes k b rho")
        k, b = _ints(a[:2], 2, name)
        rho = _rational(a[2])
        value = (coeff_h if name == "h" else coeff_g)(k, b, rho)
    elif name == "E":
        value = E_coeff(_label(a))
    elif name == "A":
        value = A_coeff(_label(a))
    elif name == "c-chain":
        value = chain_count(_label(a))
    else:
        (n,) = _ints(a, 1, name)
        value = double_fact(n)
    return 0, rat_str(value)


def cmd_tau(args) -> tuple:
    if args.order < 0:
        raise UsageError("--order must be non-negative")
    run = tau_bgw if args.model == "bgw" else tau_kw
    try:
        return 0, run(args.order, args.method).to_json()
    except TauDiscrepancy as exc:
        return 1, {"error": "discrepancy", "detail": str(exc)}


def cmd_verify(args) -> tuple:
    rep = run_suite(args.suite, args.max_weight)
    doc = {"suite": args.suite, **rep.to_json()}
    return (0 if rep.ok else 1), doc


COMMANDS = {"fn": cmd_fn, "act": cmd_act, "coef": cmd_coef, "tau": cmd_tau, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status, doc = COMMANDS[args.command](args)
    except (UsageError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.pretty:
        text = json.dumps(doc, indent=2)
    else:
        text = json.dumps(doc, separators=(",", ":"))
    print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
