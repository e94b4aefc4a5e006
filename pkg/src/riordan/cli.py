"""Command-line interface: ``riordan <command> ...``.

Series are given as expressions in ``t`` (see :mod:`riordan.exprparse`), e.g.
``--g "1/(1-t)" --f "t/(1-t)"`` for Pascal's triangle or
``--f "-t/root(2, 1+t^2)"`` for a normal form.

Exit status: 0 on success, 1 for malformed input, 2 when the mathematics says
no (an infeasible conjugator, an obstruction, a failed witness).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .exprparse import ExprError, parse_series
from .fps import DEFAULT_ORDER, Fps, FpsError, coeff
from .group import (
    PairError,
    RiordanPair,
    commutator,
    conjugate,
    diagonal_entry,
    diagonal_pattern,
    in_commutator_subgroup,
    inverse,
    multiply,
    to_matrix,
)
from .involutions import (
    NotAnInvolution,
    classify_involution,
    is_involution,
    is_pseudo_involution,
    two_involution_product_witness,
)
from .reversibility import (
    NormalFormObstruction,
    WitnessError,
    conjugate_to_normal_form,
    is_series_reversible,
    normal_form_series,
    strong_decompose,
)
from .subgroups import NotAMember, TagError, is_member, parse_tag, subgroup_conjugator

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# output


def _jsonable(v):
    if isinstance(v, Fps):
        return v.to_json()
    if isinstance(v, RiordanPair):
        return v.to_json()
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _flat(v, prefix=""):
    """(key, text) pairs for text and CSV output."""
    if isinstance(v, RiordanPair):
        yield from _flat({"g": v.g, "f": v.f}, prefix)
    elif isinstance(v, dict):
        for k, x in v.items():
            yield from _flat(x, f"{prefix}.{k}" if prefix else k)
    elif isinstance(v, Fps):
        yield prefix, v.to_string()
    elif isinstance(v, bool):
        yield prefix, "true" if v else "false"
    elif v is None:
        yield prefix, "null"
    elif isinstance(v, (list, tuple)):
        yield prefix, " | ".join(str(x) for x in v)
    else:
        yield prefix, str(v)


def _emit(out, payload: dict, fmt: str, matrix=None):
    """``matrix`` (a RiordanMatrix) is appended in text mode and replaces the table in CSV mode."""
    if fmt == "json":
        data = _jsonable(payload)
        if matrix is not None:
            data["matrix"] = matrix.rows()
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        if matrix is not None:
            out.write(matrix.to_csv())
            return
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flat(payload))
        out.write(buf.getvalue())
    else:
        for k, v in _flat(payload):
            out.write(f"{k}: {v}\n")
        if matrix is not None:
            out.write("\n" + matrix.to_text())


# ---------------------------------------------------------------------------
# argument helpers


def _series(text: str, order: int, what: str) -> Fps:
    try:
        return parse_series(text, order)
    except ExprError as exc:
        raise InputError(f"{what}: {exc}\n  {text}\n  {' ' * exc.start}^") from None


def _pair(args, g_attr: str, f_attr: str, order: int | None = None, label: str = "") -> RiordanPair:
    N = args.order if order is None else order
    g = _series(getattr(args, g_attr), N, f"--{g_attr.replace('_', '-')}")
    f = _series(getattr(args, f_attr), N, f"--{f_attr.replace('_', '-')}")
    try:
        return RiordanPair(g, f)
    except PairError as exc:
        raise InputError(f"{label or 'pair'}: {exc}") from None


def _witness(w) -> dict:
    return {"conjugator": w.conjugator, "target": w.target, "sign": w.sign, "verified": w.verify()}


# ---------------------------------------------------------------------------
# commands; each returns (payload, matrix or None, exit code)


def cmd_eval(args):
    P = _pair(args, "g", "f")
    return None, to_matrix(P, args.rows), EXIT_OK


def cmd_binary(args):
    A = _pair(args, "a_g", "a_f", label="A")
    B = _pair(args, "b_g", "b_f", label="B")
    op = {"mul": multiply, "conj": conjugate, "comm": commutator}[args.command]
    R = op(A, B)
    return {"operation": args.command, "result": R}, to_matrix(R, args.rows), EXIT_OK


def cmd_inv(args):
    P = _pair(args, "g", "f")
    R = inverse(P)
    ok = multiply(P, R).g == 1 and multiply(P, R).f == Fps.var(P.order)
    return {"inverse": R, "verified": ok}, to_matrix(R, args.rows), EXIT_OK


def cmd_check(args):
    P = _pair(args, "g", "f")
    what = args.property
    if what == "involution":
        return {"involution": is_involution(P)}, None, EXIT_OK
    if what == "pseudo-involution":
        return {"pseudo_involution": is_pseudo_involution(P)}, None, EXIT_OK
    if what == "commutator-subgroup":
        return {"commutator_subgroup": in_commutator_subgroup(P)}, None, EXIT_OK
    if what == "diagonal":
        diag = [str(diagonal_entry(P, n)) for n in range(args.rows)]
        return {"pattern": diagonal_pattern(P).value, "diagonal": diag}, None, EXIT_OK
    if not args.tag:
        raise InputError("check subgroup needs --tag")
    tag = _tag(args)
    member = is_member(tag, P)
    out = {"subgroup": tag.tag(), "member": member,
           "involution": tag.involution_rule(P) if member else None}
    return out, None, EXIT_OK


def _tag(args):
    try:
        return parse_tag(args.tag, args.order)
    except (TagError, ExprError) as exc:
        raise InputError(f"--tag: {exc}") from None


def cmd_classify(args):
    P = _pair(args, "g", "f")
    c = classify_involution(P)
    out = {"class": c.kind.value, "sign": c.sign}
    if c.witness is not None:
        out["witness"] = _witness(c.witness)
    return out, None, EXIT_OK


def cmd_two_involutions(args):
    I1 = _pair(args, "a_g", "a_f", label="A")
    I2 = _pair(args, "b_g", "b_f", label="B")
    try:
        w = two_involution_product_witness(I1, I2)
    except NotAnInvolution as exc:
        raise InputError(str(exc)) from None
    out = {"sign": w.sign, "A": w.A, "B": w.B, "product": multiply(I1, I2),
           "product_is_involution": w.product_is_involution, "verified": w.verify()}
    return out, None, EXIT_OK


def cmd_subgroup_conjugator(args):
    P = _pair(args, "g", "f")
    tag = _tag(args)
    try:
        res = subgroup_conjugator(tag, P, args.target_sign)
    except NotAMember as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"subgroup": tag.tag(), "status": res.status.value, "target_sign": res.target_sign}
    if res.found:
        out["witness"] = _witness(res.witness)
        return out, None, EXIT_OK
    out.update(certificate=res.certificate, degree=res.degree, component=res.component,
               outside_witness=_witness(res.outside_witness))
    return out, None, EXIT_MATH


def cmd_normal_form(args):
    try:
        lam = coeff(args.lam)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"--lambda: {exc}") from None
    if args.p < 1:
        raise InputError("--p must be a positive integer")
    nf = normal_form_series(args.p, lam, args.order)
    out = nf.to_json()
    out["series_text"] = nf.series.to_string()
    out["involution"] = is_involution(RiordanPair(Fps.const(1, args.order), nf.series))
    return out, None, EXIT_OK


def _single_series(args) -> Fps:
    f = _series(args.f, args.order, "--f")
    if f[0] or not f[1]:
        raise InputError("--f: series needs f(0) = 0 and f'(0) != 0")
    return f


def cmd_reversible(args):
    rep = is_series_reversible(_single_series(args))
    return rep.to_json(), None, EXIT_OK if rep.reversible else EXIT_MATH


def cmd_normal_form_fit(args):
    f = _single_series(args)
    try:
        res = conjugate_to_normal_form(f)
    except FpsError as exc:
        raise InputError(f"--f: {exc}") from None
    if isinstance(res, NormalFormObstruction):
        return {"status": "obstructed", "degree": res.degree, "reason": res.reason}, None, EXIT_MATH
    out = {"status": "found", **res.to_json(), "verified": True}
    return out, None, EXIT_OK


def cmd_decompose(args):
    P = _pair(args, "g", "f")
    U = None
    if (args.u_g is None) != (args.u_f is None):
        raise InputError("--u-g and --u-f must be given together")
    if args.u_g is not None:
        U = _pair(args, "u_g", "u_f", label="U")
    try:
        S, T = strong_decompose(P, U)
    except WitnessError as exc:
        return {"status": "not-decomposed", "reason": str(exc)}, None, EXIT_MATH
    ok = is_involution(S) and is_involution(T) and multiply(S, T) == P
    return {"status": "decomposed", "S": S, "T": T, "verified": ok}, None, EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _default_order() -> int:
    raw = os.environ.get("RIORDAN_ORDER")
    if raw is None:
        return DEFAULT_ORDER
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"RIORDAN_ORDER must be an integer, got {raw!r}") from None
    if n < 1:
        raise InputError("RIORDAN_ORDER must be positive")
    return n


def build_parser(default_order: int = DEFAULT_ORDER) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=default_order,
                        help=f"truncation order N (default {default_order}; env RIORDAN_ORDER)")
    common.add_argument("--rows", type=int, default=8, help="matrix rows K (default 8)")
    common.add_argument("--format", choices=("text", "csv", "json"), default=None,
                        help="output format (default: text on a terminal, json otherwise)")

    p = _Parser(prog="riordan", description="Exact computations in the Riordan group.",
                epilog='Series are expressions in t, e.g. "-t/root(2, 1+t^2)".')
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_cmd(name, func, help_, *, two=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if two:
            for side in ("a", "b"):
                sp.add_argument(f"--{side}-g", required=True)
                sp.add_argument(f"--{side}-f", required=True)
        else:
            sp.add_argument("--g", required=True, help="expression for g")
            sp.add_argument("--f", required=True, help="expression for f")
        sp.set_defaults(func=func)
        return sp

    pair_cmd("eval", cmd_eval, "leading rows of the matrix of (g, f)")
    pair_cmd("mul", cmd_binary, "product A B", two=True)
    pair_cmd("conj", cmd_binary, "conjugate B^-1 A B", two=True)
    pair_cmd("comm", cmd_binary, "commutator A^-1 B^-1 A B", two=True)
    pair_cmd("inv", cmd_inv, "inverse pair")

    check = sub.add_parser("check", parents=[common], help="test a property of (g, f)")
    check.add_argument("property", choices=("involution", "pseudo-involution", "commutator-subgroup",
                                            "diagonal", "subgroup"))
    check.add_argument("--g", required=True)
    check.add_argument("--f", required=True)
    check.add_argument("--tag", help="subgroup tag for 'check subgroup'")
    check.set_defaults(func=cmd_check)

    pair_cmd("classify-involution", cmd_classify, "classify an involution and give a conjugator")

    wit = sub.add_parser("witness", help="witness constructions")
    wsub = wit.add_subparsers(dest="witness", required=True, parser_class=_Parser)
    tw = wsub.add_parser("two-involutions", parents=[common],
                         help="write a product of two involutions as a signed commutator")
    for side in ("a", "b"):
        tw.add_argument(f"--{side}-g", required=True)
        tw.add_argument(f"--{side}-f", required=True)
    tw.set_defaults(func=cmd_two_involutions)

    sc = pair_cmd("subgroup-conjugator", cmd_subgroup_conjugator,
                  "conjugate an involution to +-(1, -t) inside a subgroup")
    sc.add_argument("--tag", required=True,
                    help="derivative, hitting-time, lagrange, bell, appell, reciprocal:r=R, "
                         "stabilizer:f=EXPR or bcn:c=C,n=N")
    sc.add_argument("--target-sign", type=int, choices=(1, -1), default=None,
                    help="sign of the target (default: g(0))")

    nf = sub.add_parser("normal-form", parents=[common], help="the series -t/(1 + lambda t^p)^(1/p)")
    nf.add_argument("--p", type=int, required=True)
    nf.add_argument("--lambda", dest="lam", required=True)
    nf.set_defaults(func=cmd_normal_form)

    rv = sub.add_parser("reversible", parents=[common], help="decide reversibility of a series")
    rv.add_argument("--f", required=True)
    rv.set_defaults(func=cmd_reversible)

    nff = sub.add_parser("normal-form-fit", parents=[common], help="conjugate a series to its normal form")
    nff.add_argument("--f", required=True)
    nff.set_defaults(func=cmd_normal_form_fit)

    dec = pair_cmd("decompose", cmd_decompose, "split into two involutions")
    dec.add_argument("--u-g")
    dec.add_argument("--u-f")
    return p


_MATRIX_COMMANDS = {"eval", "mul", "conj", "comm", "inv"}
_VALUE_FLAGS = {"--g", "--f", "--a-g", "--a-f", "--b-g", "--b-f", "--u-g", "--u-f", "--lambda", "--tag"}


def _join_values(argv: list[str]) -> list[str]:
    """Let expressions start with '-' (``--f -t/(1+t)``) by rewriting them as ``--f=-t/(1+t)``."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        parser = build_parser(_default_order())
        args = parser.parse_args(_join_values(list(sys.argv[1:] if argv is None else argv)))
    except InputError as exc:
        stderr.write(f"riordan: error: {exc}\n")
        return EXIT_INPUT
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    if args.format is None:
        args.format = "text" if stdout.isatty() else "json"
    try:
        if args.order < 1:
            raise InputError("--order must be positive")
        if args.command in _MATRIX_COMMANDS and not 1 <= args.rows <= args.order + 1:
            raise InputError(f"--rows must lie in 1..order+1 = {args.order + 1}")
        payload, matrix, code = args.func(args)
    except (InputError, ValueError) as exc:
        stderr.write(f"riordan: error: {exc}\n")
        return EXIT_INPUT
    if payload is None:
        stdout.write({"json": matrix.to_json, "csv": matrix.to_csv, "text": matrix.to_text}[args.format]())
    else:
        _emit(stdout, payload, args.format, matrix)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
