"""Self-checking reproduction of the published level/sublevel numbers.

Each check compares a computed value against a hard-coded expected value; the
driver reports every mismatch instead of stopping at the first one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cdalgebra import construct
from .config import RunConfig
from .fields import prime_field
from .level import (
    constructive_level_bound,
    dim_lhs,
    dim_rhs,
    least_m_bound,
    level_bruteforce,
    prior_interval,
)

# n = 34 in dimension 8: prior bounds for A_3(34) against the bound for A_3'(34)
GOLDEN_N34 = {"plain_level": (30, 34), "plain_sublevel": (29, 34), "prime": (32, 34)}

# n = 2^(t+2) + 2, m = 2^(t+2): (dim_lhs, dim_rhs, interval)
GOLDEN_DIMENSION_ROWS = {
    2: (54, 49, (16, 18)),
    3: (234, 225, (32, 34)),
    4: (978, 961, (64, 66)),
    5: (4002, 3969, (128, 130)),
    6: (16194, 16129, (256, 258)),
}

# (p, gammas) -> (brute-force level, {n: constructive upper bound or None})
GOLDEN_SMALL_FIELDS = {
    (3, (1, 1)): (1, {1: None, 2: 2, 3: 3, 4: 4}),
    (5, (2, 2)): (1, {1: 1, 2: 2, 3: 3, 4: 4}),
    (7, (3, 3)): (1, {1: None, 2: 2, 3: 3, 4: 4}),
}


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class Reproduction:
    checks: list[Check] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def mismatches(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, expected, actual) -> None:
        self.checks.append(Check(name, expected, actual))


def closed_form_lhs(t: int) -> int:
    return 2 ** (2 * t + 2) - 2 ** (t + 2) + 2**t + 2


def closed_form_rhs(t: int) -> int:
    return 2 ** (t + 2) * 2**t - 2 ** (t + 2) + 1


def reproduce(ts: Optional[Iterable[int]] = None, small_fields: bool = True,
              config: Optional[RunConfig] = None) -> Reproduction:
    out = Reproduction()

    plain = prior_interval(34, 3)
    prime = least_m_bound(34, 3)
    out.add("A_3(34) level", GOLDEN_N34["plain_level"], plain.level_interval)
    out.add("A_3(34) sublevel", GOLDEN_N34["plain_sublevel"], plain.sublevel_interval)
    out.add("A_3'(34) level and sublevel", GOLDEN_N34["prime"], prime.interval)
    out.rows.append({"table": "n34", "algebra": "A_3(34)", "level": plain.level_interval,
                     "sublevel": plain.sublevel_interval})
    out.rows.append({"table": "n34", "algebra": "A_3'(34)", "level": prime.interval, "sublevel": prime.interval})

    for t in (sorted(GOLDEN_DIMENSION_ROWS) if ts is None else ts):
        n, m = 2 ** (t + 2) + 2, 2 ** (t + 2)
        lhs, rhs = dim_lhs(n, t), dim_rhs(m, t)
        res = least_m_bound(n, t)
        exp = GOLDEN_DIMENSION_ROWS.get(t, (closed_form_lhs(t), closed_form_rhs(t), (m, n)))
        out.add(f"t={t} dim_lhs", exp[0], lhs)
        out.add(f"t={t} dim_rhs", exp[1], rhs)
        out.add(f"t={t} closed forms", (closed_form_lhs(t), closed_form_rhs(t)), (lhs, rhs))
        out.add(f"t={t} inequality", True, lhs > rhs)
        out.add(f"t={t} interval", exp[2], res.interval)
        out.rows.append({"table": "dimensions", "t": t, "n": n, "m": m, "dim_lhs": lhs, "dim_rhs": rhs,
                         "interval": res.interval})

    if small_fields:
        cfg = config or RunConfig()
        for (p, gammas), (level, bounds) in GOLDEN_SMALL_FIELDS.items():
            A = construct(prime_field(p), gammas)
            got = level_bruteforce(A, 8, cfg.enumeration_budget)
            out.add(f"F{p} {gammas} level", level, got and got[0])
            for n, bound in bounds.items():
                cert = constructive_level_bound(A, n, cfg)
                actual = None if cert is None else cert.interval[1]
                out.add(f"F{p} {gammas} n={n} bound", bound, actual)
                witnessed = cert is not None and cert.witness is not None and cert.verify()
                if cert is not None:
                    out.add(f"F{p} {gammas} n={n} witness verifies", True, witnessed)
                out.rows.append({"table": "small-fields", "p": p, "gammas": gammas, "n": n, "bound": actual,
                                 "witness_size": len(cert.witness) if witnessed else None,
                                 "brute_level": got and got[0]})
    return out


def _fmt(iv) -> str:
    return f"[{iv[0]}, {iv[1]}]"


def render_text(rep: Reproduction, check_dims: bool = False) -> str:
    lines = ["Level and sublevel bounds for n = 34, dimension 8", f"  {'algebra':<10} {'level':<10} sublevel"]
    for r in rep.rows:
        if r["table"] == "n34":
            lines.append(f"  {r['algebra']:<10} {_fmt(r['level']):<10} {_fmt(r['sublevel'])}")
    lines.append("")
    lines.append("Dimension inequality, n = 2^(t+2) + 2, m = 2^(t+2)")
    lines.append(f"  {'t':>2} {'n':>5} {'dim_lhs':>8} {'dim_rhs':>8}  interval")
    for r in rep.rows:
        if r["table"] == "dimensions":
            lines.append(f"  {r['t']:>2} {r['n']:>5} {r['dim_lhs']:>8} {r['dim_rhs']:>8}  {_fmt(r['interval'])}")
            if check_dims:
                verdict = "holds" if r["dim_lhs"] > r["dim_rhs"] else "FAILS"
                lines.append(f"     {r['dim_lhs']} > {r['dim_rhs']} {verdict}")
    small = [r for r in rep.rows if r["table"] == "small-fields"]
    if small:
        lines.append("")
        lines.append("Constructive level bound over small fields")
        lines.append(f"  {'field':<5} {'gammas':<10} {'n':>2} {'bound':>6} {'witness':>8} {'level':>6}")
        for r in small:
            bound = "-" if r["bound"] is None else str(r["bound"])
            wit = "-" if r["witness_size"] is None else str(r["witness_size"])
            lines.append(f"  F{r['p']:<4} {str(r['gammas']):<10} {r['n']:>2} {bound:>6} {wit:>8} "
                         f"{r['brute_level']:>6}")
    lines.append("")
    bad = rep.mismatches()
    if bad:
        lines.append(f"{len(bad)} MISMATCH(ES):")
        lines.extend(f"  {c.name}: expected {c.expected}, got {c.actual}" for c in bad)
    else:
        lines.append(f"all {len(rep.checks)} checks match")
    return "\n".join(lines)
