"""Command-line front end: ``cdlevel {form,algebra,level,reproduce} ...``.

Output is JSON unless ``--text`` is given.  Exit codes: 0 ok, 1 input error,
2 undecided (Unknown) verdict, 3 certificate contradiction, 4 reproduction mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import jsonio
from .cdalgebra import (
    CDAlgebra,
    brown_algebra,
    conjugate,
    construct,
    find_zero_divisors,
    multiply,
    norm,
    norm_anisotropy_report,
    trace,
)
from .config import RunConfig, SublevelReading, load_config
from .errors import CDLevelError, CertificateContradiction, UnknownVerdictError
from .fields import describe_field_level, parse_field
from .level import (
    Variant,
    assemble_report,
    brute_force_certificates,
    criteria_certificates,
    exact_values_registry,
    least_m_bound,
    prior_interval,
    registry_report,
)
from .parse import parse_scalar, parse_scalar_list
from .quadform import (
    DiagonalForm,
    SignAssignment,
    Status,
    decide_isotropy,
    evaluate,
    perp,
    pfister,
    scale,
    signature,
    tensor,
    times,
    witt_index_fp,
    witt_index_fp_by_splitting,
)
from .reproduce import render_text, reproduce

EXIT_OK, EXIT_INPUT, EXIT_UNKNOWN, EXIT_CONTRADICTION, EXIT_MISMATCH = 0, 1, 2, 3, 4

# options whose values may begin with "-" (e.g. --gammas -1,-1)
VALUE_FLAGS = {"--coeffs", "--params", "--other", "--gammas", "--x", "--y", "--vector", "--scalar", "--signs"}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _glue_values(argv: Sequence[str]) -> list[str]:
    out, it = [], iter(argv)
    for tok in it:
        if tok in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                raise InputError(f"{tok} needs a value")
            out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="JSON config file (default: $CDLEVEL_CONFIG)")
    g.add_argument("--enumeration-budget", type=int)
    g.add_argument("--factor-bound", type=int)
    g.add_argument("--witness-height", type=int)
    g.add_argument("--t-max", type=int)
    g.add_argument("--sublevel-reading", choices=[r.value for r in SublevelReading])
    p.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    return p


def _config(args) -> RunConfig:
    return load_config(args.config, enumeration_budget=args.enumeration_budget, factor_bound=args.factor_bound,
                       witness_height=args.witness_height, t_max=args.t_max,
                       sublevel_reading=args.sublevel_reading)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = _Parser(prog="cdlevel", description="Cayley-Dickson algebras, quadratic forms, levels and sublevels.")
    sub = root.add_subparsers(dest="command", required=True)

    form = sub.add_parser("form", help="diagonal quadratic forms")
    fsub = form.add_subparsers(dest="action", required=True)
    for name in ("isotropy", "signature", "witt", "evaluate"):
        p = fsub.add_parser(name, parents=[common])
        _form_input(p)
        if name == "signature":
            p.add_argument("--signs", help="signs of X1, X2, ... (comma-separated +1/-1)")
        if name == "evaluate":
            p.add_argument("--vector", required=True)
    b = fsub.add_parser("build", parents=[common])
    b.add_argument("kind", choices=["diag", "pfister", "perp", "tensor", "times", "scale"])
    _form_input(b, required=False)
    b.add_argument("--params", help="Pfister parameters")
    b.add_argument("--other", help="coefficients of the second form (perp, tensor)")
    b.add_argument("--count", type=int, help="number of copies (times)")
    b.add_argument("--scalar", help="scaling factor (scale)")

    alg = sub.add_parser("algebra", help="Cayley-Dickson algebras")
    asub = alg.add_subparsers(dest="action", required=True)
    for name in ("construct", "mul", "conj", "norm", "trace", "forms", "zerodiv", "report"):
        p = asub.add_parser(name, parents=[common])
        _algebra_input(p)
        if name in ("mul", "conj", "norm", "trace"):
            p.add_argument("--x", required=True, help="coordinates of x")
        if name == "mul":
            p.add_argument("--y", required=True, help="coordinates of y")
        if name == "zerodiv":
            p.add_argument("--budget", type=int, default=100_000, help="number of candidate x to try")
    p = asub.add_parser("brown", parents=[common])
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--base", default="q")

    lev = sub.add_parser("level", help="levels and sublevels")
    lsub = lev.add_subparsers(dest="action", required=True)
    p = lsub.add_parser("brute", parents=[common])
    _algebra_input(p)
    p.add_argument("--max-n", type=int, default=8)
    p = lsub.add_parser("criteria", parents=[common])
    _algebra_input(p)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-k", type=int)
    p.add_argument("--with-brute", action="store_true", help="add exhaustive search (finite fields)")
    for name in ("interval", "registry"):
        p = lsub.add_parser(name, parents=[common])
        p.add_argument("-n", type=int, required=True)
        p.add_argument("-t", type=int, required=True)
        p.add_argument("--variant", choices=["plain", "prime", "both"], default="both")

    rep = sub.add_parser("reproduce", aliases=["paper"], parents=[common],
                         help="reproduce the published bounds with self-checks")
    rep.add_argument("--t", dest="ts", type=int, action="append", help="dimension rows to show (repeatable)")
    rep.add_argument("--check-dims", action="store_true")
    rep.add_argument("--no-small-fields", action="store_true")
    rep.add_argument("--json", action="store_true")

    fl = sub.add_parser("field", help="level of the base field", parents=[common])
    fl.add_argument("--field", required=True)
    return root


def _form_input(p, required: bool = True) -> None:
    p.add_argument("--field", default="q")
    p.add_argument("--coeffs", help="comma-separated coefficients")
    p.add_argument("--file", help="JSON form {\"field\": ..., \"coeffs\": [...]}")
    p.set_defaults(form_required=required)


def _algebra_input(p) -> None:
    p.add_argument("--field", default="q")
    p.add_argument("--gammas", help="comma-separated doubling parameters")
    p.add_argument("--brown", type=int, metavar="T", help="Brown's algebra with gamma_j = X_j")
    p.add_argument("--base", default="q", help="base field for --brown")
    p.add_argument("--file", help="JSON algebra {\"field\": ..., \"gammas\": [...]}")


# -- input helpers -------------------------------------------------------------


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _form(args) -> DiagonalForm:
    if args.file:
        return jsonio.decode_form(_read_json(args.file))
    if not args.coeffs:
        raise InputError("give --coeffs or --file")
    F = parse_field(args.field)
    return DiagonalForm(F, tuple(parse_scalar_list(F, args.coeffs)))


def _algebra(args, cfg: RunConfig) -> CDAlgebra:
    if args.file:
        return jsonio.decode_algebra(_read_json(args.file), cfg.t_max)
    if args.brown is not None:
        return brown_algebra(args.brown, parse_field(args.base), t_max=cfg.t_max)
    if not args.gammas:
        raise InputError("give --gammas, --brown or --file")
    F = parse_field(args.field)
    return construct(F, parse_scalar_list(F, args.gammas), t_max=cfg.t_max)


def _element(A: CDAlgebra, text: str):
    vals = parse_scalar_list(A.field, text)
    if len(vals) != A.dim:
        raise InputError(f"expected {A.dim} coordinates, got {len(vals)}")
    return A.element(vals)


# -- commands --------------------------------------------------------------------


def cmd_form(args, cfg: RunConfig):
    if args.action == "build":
        return _form_build(args)
    phi = _form(args)
    if args.action == "isotropy":
        v = decide_isotropy(phi, **cfg.decide_kwargs)
        out = {"form": jsonio.encode_form(phi), **jsonio.encode_verdict(v)}
        text = f"{phi}: {v.status}" + (f", witness {[str(x) for x in v.witness]}" if v.witness else "") \
            + f" [{v.method}]" + (f" ({v.diagnostic})" if v.diagnostic else "")
        return out, text, EXIT_UNKNOWN if v.status is Status.UNKNOWN else EXIT_OK
    if args.action == "signature":
        signs = tuple(int(s) for s in args.signs.split(",")) if args.signs else ()
        P = SignAssignment(signs)
        sgn = signature(phi, P)
        return {"form": jsonio.encode_form(phi), "signature": sgn}, f"signature of {phi}: {sgn}", EXIT_OK
    if args.action == "witt":
        iw = witt_index_fp(phi)
        check = witt_index_fp_by_splitting(phi)
        if iw != check:
            raise CertificateContradiction(f"Witt index formula {iw} disagrees with splitting {check}")
        return {"form": jsonio.encode_form(phi), "witt_index": iw}, f"Witt index of {phi}: {iw}", EXIT_OK
    vec = parse_scalar_list(phi.field, args.vector)
    val = evaluate(phi, vec)
    return {"form": jsonio.encode_form(phi), "value": jsonio.encode_scalar(val)}, f"{phi}({args.vector}) = {val}", EXIT_OK


def _form_build(args):
    F = parse_field(args.field)
    kind = args.kind
    if kind == "pfister":
        if not args.params:
            raise InputError("pfister needs --params")
        phi = pfister(*parse_scalar_list(F, args.params))
    else:
        base = _form(args)
        F = base.field
        if kind == "diag":
            phi = base
        elif kind in ("perp", "tensor"):
            if not args.other:
                raise InputError(f"{kind} needs --other")
            other = DiagonalForm(F, tuple(parse_scalar_list(F, args.other)))
            phi = perp(base, other) if kind == "perp" else tensor(base, other)
        elif kind == "times":
            if args.count is None:
                raise InputError("times needs --count")
            phi = times(args.count, base)
        else:
            if args.scalar is None:
                raise InputError("scale needs --scalar")
            phi = scale(parse_scalar(F, args.scalar), base)
    return jsonio.encode_form(phi), str(phi), EXIT_OK


def _forms_json(A: CDAlgebra) -> dict:
    return {"T_C": jsonio.encode_scalars(A.trace_form().coeffs),
            "T_P": jsonio.encode_scalars(A.pure_trace_form().coeffs),
            "n_C": jsonio.encode_scalars(A.norm_form().coeffs)}


def cmd_algebra(args, cfg: RunConfig):
    if args.action == "brown":
        A = brown_algebra(args.t, parse_field(args.base), t_max=cfg.t_max)
        out = {"algebra": jsonio.encode_algebra(A), "dim": A.dim, **_forms_json(A)}
        return out, f"{A}, dimension {A.dim}\n  T_C = {A.trace_form()}\n  n_C = {A.norm_form()}", EXIT_OK
    A = _algebra(args, cfg)
    act = args.action
    if act == "construct":
        table = [[[k, jsonio.encode_scalar(c)] for k, c in (A.structure_constant(i, j) for j in range(A.dim))]
                 for i in range(A.dim)]
        out = {"algebra": jsonio.encode_algebra(A), "dim": A.dim, "table": table}
        lines = [f"{A}, dimension {A.dim}"] + [
            "  " + " ".join(f"{str(c)}*e{k}" for k, c in (A.structure_constant(i, j) for j in range(A.dim)))
            for i in range(A.dim)]
        return out, "\n".join(lines), EXIT_OK
    if act == "forms":
        out = {"algebra": jsonio.encode_algebra(A), **_forms_json(A)}
        text = f"T_C = {A.trace_form()}\nT_P = {A.pure_trace_form()}\nn_C = {A.norm_form()}"
        return out, text, EXIT_OK
    if act == "report":
        rep = norm_anisotropy_report(A, **cfg.decide_kwargs)
        out = {"algebra": jsonio.encode_algebra(A), "norm_form": jsonio.encode_form(A.norm_form()),
               **jsonio.encode_verdict(rep.verdict), "interpretation": rep.interpretation}
        code = EXIT_UNKNOWN if rep.verdict.status is Status.UNKNOWN else EXIT_OK
        return out, f"n_C {rep.verdict.status}: {rep.interpretation}", code
    if act == "zerodiv":
        pair = find_zero_divisors(A, args.budget)
        if pair is None:
            out = {"algebra": jsonio.encode_algebra(A), "found": False,
                   "note": "search budget exhausted; this does not prove division"}
            return out, out["note"], EXIT_OK
        x, y = pair
        out = {"algebra": jsonio.encode_algebra(A), "found": True,
               "x": jsonio.encode_scalars(x.coords), "y": jsonio.encode_scalars(y.coords),
               "product": jsonio.encode_scalars(multiply(x, y).coords)}
        return out, f"x = {x}\ny = {y}\nx*y = 0", EXIT_OK
    x = _element(A, args.x)
    if act == "mul":
        r = multiply(x, _element(A, args.y))
    elif act == "conj":
        r = conjugate(x)
    else:
        s = norm(x) if act == "norm" else trace(x)
        return {"algebra": jsonio.encode_algebra(A), act: jsonio.encode_scalar(s)}, str(s), EXIT_OK
    return {"algebra": jsonio.encode_algebra(A), "coords": jsonio.encode_scalars(r.coords)}, str(r), EXIT_OK


def _report_text(title: str, rep) -> str:
    lines = [f"{title}: level {_iv(rep.level_interval)}, sublevel {_iv(rep.sublevel_interval)}"]
    for c in rep.certificates:
        lines.append(f"  [{c.kind}] {c.target} {_iv(c.interval)} {c.citation}: {c.detail}")
    return "\n".join(lines)


def _iv(iv) -> str:
    return "[" + ", ".join(str(jsonio.encode_bound(x)) for x in iv) + "]"


def cmd_level(args, cfg: RunConfig):
    act = args.action
    if act in ("brute", "criteria"):
        A = _algebra(args, cfg)
        code = EXIT_OK
        extra = {}
        if act == "brute":
            certs = brute_force_certificates(A, args.max_n, cfg)
        else:
            run = criteria_certificates(A, args.max_n, cfg, args.max_k)
            certs = list(run.certificates)
            if args.with_brute:
                certs += brute_force_certificates(A, 8, cfg)
            extra = {"unknown": run.unknown, "skipped": run.skipped}
            if run.unknown:
                code = EXIT_UNKNOWN
        rep = assemble_report(certs)
        out = {"algebra": jsonio.encode_algebra(A), **jsonio.encode_report(rep), **extra}
        return out, _report_text(str(A), rep), code
    variants = ["plain", "prime"] if args.variant == "both" else [args.variant]
    out, texts = {}, []
    for v in variants:
        if act == "interval":
            rep = prior_interval(args.n, args.t) if v == "plain" else least_m_bound(args.n, args.t).report
        else:
            rep = registry_report(args.n, args.t, v)
        name = f"A_{args.t}({args.n})" if v == "plain" else f"A_{args.t}'({args.n})"
        entry = jsonio.encode_report(rep)
        if act == "registry":
            stmt = exact_values_registry(args.n, args.t, Variant(v))
            entry["exact"] = None if stmt is None else {"level": stmt.level, "sublevel": stmt.sublevel,
                                                        "citation": stmt.citation}
        if act == "interval" and v == "prime":
            res = least_m_bound(args.n, args.t)
            entry["l"] = res.l
            if res.diagnostic:
                entry["diagnostic"] = res.diagnostic
        out[v] = entry
        texts.append(_report_text(name, rep))
    return out, "\n".join(texts), EXIT_OK


def cmd_reproduce(args, cfg: RunConfig):
    rep = reproduce(args.ts, small_fields=not args.no_small_fields, config=cfg)
    code = EXIT_OK if rep.ok else EXIT_MISMATCH
    out = {"ok": rep.ok, "checks": len(rep.checks),
           "mismatches": [{"name": c.name, "expected": repr(c.expected), "actual": repr(c.actual)}
                          for c in rep.mismatches()],
           "rows": [{k: (list(v) if isinstance(v, tuple) else v) for k, v in r.items()} for r in rep.rows]}
    text = render_text(rep, check_dims=args.check_dims)
    return out, text, code


def cmd_field(args, cfg: RunConfig):
    F = parse_field(args.field)
    lvl, note = describe_field_level(F)
    return {"field": str(F), "level": jsonio.encode_bound(lvl), "note": note}, f"s({F}) = {lvl} ({note})", EXIT_OK


COMMANDS = {"form": cmd_form, "algebra": cmd_algebra, "level": cmd_level, "reproduce": cmd_reproduce,
            "paper": cmd_reproduce, "field": cmd_field}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_values(argv))
        cfg = _config(args)
        out, text, code = COMMANDS[args.command](args, cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnknownVerdictError as exc:
        print(json.dumps({"status": "Unknown", "diagnostic": str(exc)}))
        return EXIT_UNKNOWN
    except CertificateContradiction as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except (CDLevelError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    use_text = getattr(args, "text", False) or (args.command in ("reproduce", "paper") and not args.json)
    print(text if use_text else json.dumps(out))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
