"""JSON encoding of fields, scalars, forms, algebras, verdicts and level reports.

Scalars are encoded relative to a field that is always stored alongside them:
integers as JSON numbers, other rationals as "a/b" strings, F_p values as
residues in [0, p), function-field values as expression strings understood by
:func:`cdlevel.parse.parse_scalar`.  Infinity is the string "inf".
Every ``encode_*`` has a matching ``decode_*`` with ``decode(encode(x)) == x``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from .cdalgebra import CDAlgebra, CDElement
from .fields import FieldDescriptor, Scalar, parse_field
from .level import INF, Certificate, CertKind, LevelReport
from .parse import parse_scalar
from .quadform import DiagonalForm, IsotropyVerdict, Status


def encode_field(F: FieldDescriptor) -> str:
    return str(F)


def decode_field(data: str) -> FieldDescriptor:
    return parse_field(data)


def encode_scalar(a: Scalar):
    F = a.field
    if F.kind == "Q":
        v = Fraction(a.v)
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if F.kind == "Fp":
        return int(a.v)
    return str(a)


def decode_scalar(F: FieldDescriptor, data) -> Scalar:
    if isinstance(data, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(data, int):
        return F(data)
    if isinstance(data, str):
        return parse_scalar(F, data)
    raise ValueError(f"cannot decode scalar from {data!r}")


def encode_scalars(values) -> list:
    return [encode_scalar(a) for a in values]


def decode_scalars(F: FieldDescriptor, data) -> list[Scalar]:
    return [decode_scalar(F, x) for x in data]


def encode_bound(x):
    return "inf" if x == INF else int(x)


def decode_bound(x):
    return INF if x == "inf" else int(x)


def encode_interval(iv) -> list:
    return [encode_bound(iv[0]), encode_bound(iv[1])]


def decode_interval(data) -> tuple:
    return decode_bound(data[0]), decode_bound(data[1])


# -- forms and verdicts ---------------------------------------------------------


def encode_form(phi: DiagonalForm) -> dict:
    return {"field": encode_field(phi.field), "coeffs": encode_scalars(phi.coeffs)}


def decode_form(data: dict) -> DiagonalForm:
    F = decode_field(data["field"])
    return DiagonalForm(F, tuple(decode_scalars(F, data["coeffs"])))


def encode_verdict(v: IsotropyVerdict) -> dict:
    out = {"status": str(v.status),
           "witness": None if v.witness is None else encode_scalars(v.witness),
           "method": v.method}
    if v.diagnostic is not None:
        out["diagnostic"] = v.diagnostic
    return out


def decode_verdict(F: FieldDescriptor, data: dict) -> IsotropyVerdict:
    w = data.get("witness")
    return IsotropyVerdict(Status(data["status"]), None if w is None else tuple(decode_scalars(F, w)),
                           data.get("method", ""), data.get("diagnostic"))


# -- algebras -------------------------------------------------------------------


def encode_algebra(A: CDAlgebra) -> dict:
    return {"field": encode_field(A.field), "gammas": encode_scalars(A.gammas)}


def decode_algebra(data: dict, t_max: Optional[int] = None) -> CDAlgebra:
    F = decode_field(data["field"])
    gammas = tuple(decode_scalars(F, data["gammas"]))
    return CDAlgebra(F, gammas, t_max=max(t_max or 0, len(gammas)))


def encode_element(x: CDElement) -> dict:
    return {"algebra": encode_algebra(x.algebra), "coords": encode_scalars(x.coords)}


def decode_element(data: dict, algebra: Optional[CDAlgebra] = None) -> CDElement:
    A = algebra or decode_algebra(data["algebra"])
    return A.element(decode_scalars(A.field, data["coords"]))


# -- certificates and reports ---------------------------------------------------------


def encode_certificate(c: Certificate) -> dict:
    out: dict[str, Any] = {"kind": str(c.kind), "target": c.target, "interval": encode_interval(c.interval),
                           "citation": c.citation, "detail": c.detail}
    if c.form is not None:
        out["form"] = encode_form(c.form)
    if c.verdict is not None:
        out["verdict"] = str(c.verdict)
    if c.witness is not None:
        A = c.witness[0].algebra if c.witness else None
        out["witness"] = {"algebra": encode_algebra(A) if A else None,
                          "elements": [encode_scalars(x.coords) for x in c.witness]}
    if c.lhs_dim is not None:
        out["lhs_dim"] = c.lhs_dim
    if c.rhs_dim is not None:
        out["rhs_dim"] = c.rhs_dim
    return out


def decode_certificate(data: dict) -> Certificate:
    witness = None
    if "witness" in data:
        w = data["witness"]
        if w["algebra"] is None:
            witness = ()
        else:
            A = decode_algebra(w["algebra"])
            witness = tuple(A.element(decode_scalars(A.field, coords)) for coords in w["elements"])
    return Certificate(
        CertKind(data["kind"]), data["target"], decode_interval(data["interval"]),
        data.get("citation", ""), data.get("detail", ""),
        decode_form(data["form"]) if "form" in data else None,
        Status(data["verdict"]) if "verdict" in data else None,
        witness, data.get("lhs_dim"), data.get("rhs_dim"),
    )


def encode_report(r: LevelReport) -> dict:
    return {"level": encode_interval(r.level_interval), "sublevel": encode_interval(r.sublevel_interval),
            "certificates": [encode_certificate(c) for c in r.certificates]}


def decode_report(data: dict) -> LevelReport:
    return LevelReport(decode_interval(data["level"]), decode_interval(data["sublevel"]),
                       tuple(decode_certificate(c) for c in data["certificates"]))


