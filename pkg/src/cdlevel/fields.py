"""Exact scalars over three backends: Q, F_p (p odd prime), and K0(X1, ..., Xt).

Every field is described by an immutable :class:`FieldDescriptor`.  Field
elements are :class:`Scalar` values wrapping a *raw* representation:

* ``Q``   -- :class:`fractions.Fraction`
* ``F_p`` -- ``int`` in ``range(p)``
* ``K0(X)`` -- a pair ``(num, den)`` of sparse polynomials, each a sorted tuple
  of ``(exponents, coeff)`` terms.  Coefficients are integers (Q base, content
  removed) or residues (F_p base, denominator made monic).  No polynomial gcd
  is taken; equality is decided by cross-multiplication.

The raw operations live on the descriptor so that hot loops (Cayley-Dickson
products, Gaussian elimination) can skip the wrapper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Optional, Union

from . import arith
from .errors import (
    DivisionByZeroError,
    InvalidFieldError,
    MixedFieldsError,
    NotMonomialError,
    ZeroInputError,
)

INF = math.inf

Exps = tuple[int, ...]
Poly = tuple[tuple[Exps, int], ...]


@dataclass(frozen=True)
class FieldDescriptor:
    """``kind`` is one of ``"Q"``, ``"Fp"``, ``"FF"``."""

    kind: str
    p: Optional[int] = None
    base: Optional["FieldDescriptor"] = None
    nvars: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None or self.base is not None or self.nvars:
                raise InvalidFieldError("Q takes no parameters")
        elif self.kind == "Fp":
            if self.p is None or self.p == 2 or not arith.is_prime(self.p):
                raise InvalidFieldError(f"prime field needs an odd prime modulus, got {self.p}")
        elif self.kind == "FF":
            if self.base is None or self.base.kind == "FF":
                raise InvalidFieldError("function field base must be Q or F_p")
            if self.nvars < 1:
                raise InvalidFieldError("function field needs at least one variable")
        else:
            raise InvalidFieldError(f"unknown field kind {self.kind!r}")

    # -- naming ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.kind == "Q":
            return "q"
        if self.kind == "Fp":
            return f"f{self.p}"
        return f"ff:{self.base}:{self.nvars}"

    @property
    def is_function_field(self) -> bool:
        return self.kind == "FF"

    @property
    def ground(self) -> "FieldDescriptor":
        """The constant field: self for Q/F_p, the base for K0(X)."""
        return self.base if self.kind == "FF" else self

    @property
    def characteristic(self) -> int:
        return self.ground.p or 0

    # -- element construction -----------------------------------------------

    def __call__(self, value: Any) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field != self:
                raise MixedFieldsError(f"{value.field} element given where {self} expected")
            return value
        return Scalar(self, self.raw(value))

    def raw(self, value: Any):
        """Convert an int, Fraction or numeric string to a raw value of this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot convert {value!r} to an element of {self}")
        if self.kind == "Q":
            return Fraction(value)
        if self.kind == "Fp":
            return _to_residue(Fraction(value), self.p)
        c = self.base.raw(value)
        return self._ff_const(c)

    def zero(self) -> "Scalar":
        return Scalar(self, self.rzero())

    def one(self) -> "Scalar":
        return Scalar(self, self.rone())

    def var(self, i: int) -> "Scalar":
        """The generator X_{i+1} (0-based index)."""
        if self.kind != "FF":
            raise InvalidFieldError(f"{self} has no variables")
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self}")
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Scalar(self, (((e, 1),), ((self._zexp, 1),)))

    def gens(self) -> list["Scalar"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, coeff: Any, exps: Iterable[int]) -> "Scalar":
        """coeff * X^exps; negative exponents go to the denominator."""
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        c = self.base.raw(coeff)
        num_e = tuple(max(e, 0) for e in exps)
        den_e = tuple(max(-e, 0) for e in exps)
        return Scalar(self, self._ff_normalize({num_e: c}, {den_e: self.base.rone()}))

    # -- raw arithmetic ---------------------------------------------------------

    @property
    def _zexp(self) -> Exps:
        return (0,) * self.nvars

    def rzero(self):
        if self.kind == "Q":
            return Fraction(0)
        if self.kind == "Fp":
            return 0
        return ((), ((self._zexp, 1),))

    def rone(self):
        if self.kind == "Q":
            return Fraction(1)
        if self.kind == "Fp":
            return 1
        return (((self._zexp, 1),), ((self._zexp, 1),))

    def ris_zero(self, a) -> bool:
        if self.kind == "FF":
            return not a[0]
        return a == 0

    def radd(self, a, b):
        if self.kind == "Q":
            return a + b
        if self.kind == "Fp":
            return (a + b) % self.p
        (an, ad), (bn, bd) = a, b
        if not an:
            return b
        if not bn:
            return a
        if ad == bd:
            return self._ff_normalize(self._padd(dict(an), bn), dict(ad))
        num = self._padd(self._pmul(an, bd), self._pmul(bn, ad))
        return self._ff_normalize(num, self._pmul(ad, bd))

    def rneg(self, a):
        if self.kind == "Q":
            return -a
        if self.kind == "Fp":
            return (-a) % self.p
        return (self._pneg(a[0]), a[1])

    def rsub(self, a, b):
        return self.radd(a, self.rneg(b))

    def rmul(self, a, b):
        if self.kind == "Q":
            return a * b
        if self.kind == "Fp":
            return a * b % self.p
        (an, ad), (bn, bd) = a, b
        if not an or not bn:
            return self.rzero()
        return self._ff_normalize(self._pmul(an, bn), self._pmul(ad, bd))

    def rinv(self, a):
        if self.ris_zero(a):
            raise DivisionByZeroError(f"division by zero in {self}")
        if self.kind == "Q":
            return 1 / a
        if self.kind == "Fp":
            return pow(a, -1, self.p)
        return self._ff_normalize(dict(a[1]), dict(a[0]))

    def rdiv(self, a, b):
        return self.rmul(a, self.rinv(b))

    def req(self, a, b) -> bool:
        if self.kind != "FF":
            return a == b
        if a == b:
            return True
        (an, ad), (bn, bd) = a, b
        if not an or not bn:
            return not an and not bn
        return self._pmul(an, bd) == self._pmul(bn, ad)

    def rpow(self, a, n: int):
        if n < 0:
            return self.rpow(self.rinv(a), -n)
        result, base = self.rone(), a
        while n:
            if n & 1:
                result = self.rmul(result, base)
            base = self.rmul(base, base)
            n >>= 1
        return result

    def rsum(self, values: Iterable):
        return reduce(self.radd, values, self.rzero())

    # -- sparse polynomial helpers ------------------------------------------

    def _padd(self, acc: dict, terms) -> dict:
        p = self.base.p
        if isinstance(terms, dict):
            terms = terms.items()
        for e, c in terms:
            v = acc.get(e, 0) + c
            if p:
                v %= p
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return acc

    def _pneg(self, poly: Poly) -> Poly:
        p = self.base.p
        if p:
            return tuple((e, (-c) % p) for e, c in poly)
        return tuple((e, -c) for e, c in poly)

    def _pmul(self, x: Poly, y: Poly) -> dict:
        p = self.base.p
        out: dict = {}
        for ex, cx in x:
            for ey, cy in y:
                e = tuple(i + j for i, j in zip(ex, ey))
                v = out.get(e, 0) + cx * cy
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return out

    def _ff_const(self, c) -> tuple:
        return self._ff_normalize({self._zexp: c} if c else {}, {self._zexp: self.base.rone()})

    def _ff_normalize(self, num: dict, den: dict):
        """Canonicalize content, common monomial factor, and the sign/leading coefficient."""
        if not den:
            raise DivisionByZeroError(f"zero denominator in {self}")
        if not num:
            return self.rzero()
        n = self.nvars
        low = [min(min(e[i] for e in num), min(e[i] for e in den)) for i in range(n)]
        if any(low):
            num = {tuple(a - b for a, b in zip(e, low)): c for e, c in num.items()}
            den = {tuple(a - b for a, b in zip(e, low)): c for e, c in den.items()}
        p = self.base.p
        if p:
            lead = den[max(den)]
            inv = pow(lead, -1, p)
            if inv != 1:
                num = {e: c * inv % p for e, c in num.items()}
                den = {e: c * inv % p for e, c in den.items()}
        else:
            coeffs = list(num.values()) + list(den.values())
            lcm = 1
            for c in coeffs:
                d = Fraction(c).denominator
                lcm = lcm * d // math.gcd(lcm, d)
            ints = [int(Fraction(c) * lcm) for c in coeffs]
            g = reduce(math.gcd, ints)
            if den[max(den)] < 0:
                g = -g
            num = {e: int(Fraction(c) * lcm) // g for e, c in num.items()}
            den = {e: int(Fraction(c) * lcm) // g for e, c in den.items()}
        # num a constant multiple of den: collapse to a constant
        if len(num) == len(den) and num.keys() == den.keys() and len(den) > 1:
            e0 = max(den)
            if p:
                ratio = num[e0] * pow(den[e0], -1, p) % p
                if all(num[e] == ratio * den[e] % p for e in den):
                    return (((self._zexp, ratio),), ((self._zexp, 1),))
            else:
                ratio = Fraction(num[e0], den[e0])
                if all(Fraction(num[e], den[e]) == ratio for e in den):
                    return self._ff_normalize({self._zexp: ratio}, {self._zexp: 1})
        return (tuple(sorted(num.items())), tuple(sorted(den.items())))


def _to_residue(x: Fraction, p: int) -> int:
    if x.denominator % p == 0:
        raise DivisionByZeroError(f"{x} has denominator divisible by {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def rationals() -> FieldDescriptor:
    return FieldDescriptor("Q")


def prime_field(p: int) -> FieldDescriptor:
    return FieldDescriptor("Fp", p=p)


def function_field(base: FieldDescriptor, nvars: int) -> FieldDescriptor:
    return FieldDescriptor("FF", base=base, nvars=nvars)


QQ = rationals()


def parse_field(text: str) -> FieldDescriptor:
    """Parse ``q``, ``f<p>`` or ``ff:<base>:<t>``."""
    s = text.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("ff:"):
        parts = s.split(":")
        if len(parts) != 3:
            raise InvalidFieldError(f"bad function field descriptor {text!r}")
        return function_field(parse_field(parts[1]), int(parts[2]))
    if s.startswith("f") and s[1:].isdigit():
        return prime_field(int(s[1:]))
    raise InvalidFieldError(f"unknown field {text!r}")


class Scalar:
    """An immutable field element."""

    __slots__ = ("field", "v")

    def __init__(self, field: FieldDescriptor, v):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFieldsError(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field.radd(self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field.rsub(self.v, o.v))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field.rmul(self.v, o.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field, self.field.rdiv(self.v, o.v))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(self.field, self.field.rneg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.rpow(self.v, n))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.rinv(self.v))

    def is_zero(self) -> bool:
        return self.field.ris_zero(self.v)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.field.req(self.v, other.v)
        try:
            o = self._coerce(other)
        except Exception:
            return False
        return o is not None and self.field.req(self.v, o.v)

    def __hash__(self) -> int:
        if self.field.kind == "FF":
            # no canonical form without a polynomial gcd; the field is the only safe invariant
            # unless the value is constant
            (num, den) = self.v
            z = self.field._zexp
            if not num:
                return hash((self.field, 0))
            if len(num) == 1 and len(den) == 1 and num[0][0] == z and den[0][0] == z:
                return hash((self.field, Fraction(num[0][1], den[0][1]) if not self.field.base.p
                             else num[0][1]))
            return hash(self.field)
        return hash((self.field, self.v))

    def __repr__(self) -> str:
        return f"Scalar({self.field}, {self})"

    def __str__(self) -> str:
        if self.field.kind == "Q":
            return str(self.v)
        if self.field.kind == "Fp":
            return str(self.v)
        num, den = self.v
        if not num:
            return "0"
        n = _poly_str(num)
        if den == ((self.field._zexp, 1),):
            return n
        d = _poly_str(den)
        if len(num) > 1:
            n = f"({n})"
        if len(den) > 1 or _poly_str(den).count("*"):
            d = f"({d})"
        return f"{n}/{d}"

    # -- convenience ------------------------------------------------------

    def is_constant(self) -> bool:
        if self.field.kind != "FF":
            return True
        mono = monomial_parts(self)
        return mono is not None and not any(mono[1])

    def to_base(self) -> "Scalar":
        """The constant value of a constant function-field scalar."""
        if self.field.kind != "FF":
            return self
        mono = monomial_parts(self)
        if mono is None or any(mono[1]):
            raise ValueError(f"{self} is not a constant")
        return Scalar(self.field.base, mono[0])


def _poly_str(poly: Poly) -> str:
    parts = []
    for e, c in sorted(poly, reverse=True):
        mono = "*".join(f"X{i + 1}" if k == 1 else f"X{i + 1}^{k}" for i, k in enumerate(e) if k)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Square classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedMonomial:
    """coeff * X^exps; the canonical square-class representative has exps in {0, 1}."""

    coeff: Union[Fraction, int]
    exps: Exps


def monomial_parts(a: Scalar) -> Optional[tuple[Any, tuple[int, ...]]]:
    """(raw base coefficient, exponent vector possibly negative), or None if not a monomial."""
    F = a.field
    if F.kind != "FF":
        return (a.v, ())
    num, den = a.v
    if len(num) != 1 or len(den) != 1:
        return None
    (en, cn), (ed, cd) = num[0], den[0]
    coeff = F.base.rdiv(F.base.raw(cn), F.base.raw(cd))
    return coeff, tuple(x - y for x, y in zip(en, ed))


def _require_nonzero(a: Scalar) -> None:
    if a.is_zero():
        raise ZeroInputError("zero has no square class")


def square_decompose(a: Scalar, factor_bound: int = arith.DEFAULT_FACTOR_BOUND) -> tuple[Scalar, Scalar]:
    """Return ``(cls, root)`` with ``a == cls * root**2`` and ``cls`` canonical."""
    _require_nonzero(a)
    F = a.field
    if F.kind == "Q":
        n, d = a.v.numerator, a.v.denominator
        sf = arith.squarefree_part(n * d, factor_bound)
        m = math.isqrt(n * d // sf)
        return F(sf), F(Fraction(m, d))
    if F.kind == "Fp":
        if arith.legendre(a.v, F.p) == 1:
            return F.one(), Scalar(F, arith.sqrt_mod(a.v, F.p))
        z = arith.least_nonresidue(F.p)
        r = arith.sqrt_mod(a.v * pow(z, -1, F.p), F.p)
        return F(z), Scalar(F, r)
    mono = monomial_parts(a)
    if mono is None:
        raise NotMonomialError(f"{a} is not a signed monomial")
    coeff, exps = mono
    ccls, croot = square_decompose(Scalar(F.base, coeff), factor_bound)
    cls = F.monomial(ccls.v, tuple(e % 2 for e in exps))
    root = F.monomial(croot.v, tuple((e - e % 2) // 2 for e in exps))
    return cls, root


def square_class(a: Scalar, factor_bound: int = arith.DEFAULT_FACTOR_BOUND) -> Scalar:
    """Canonical representative r of the square class of a (a / r is a square)."""
    return square_decompose(a, factor_bound)[0]


def signed_monomial(a: Scalar, factor_bound: int = arith.DEFAULT_FACTOR_BOUND) -> SignedMonomial:
    """The square class of a function-field scalar as a :class:`SignedMonomial`."""
    if a.field.kind != "FF":
        raise NotMonomialError("signed monomials live in function fields")
    cls = square_class(a, factor_bound)
    coeff, exps = monomial_parts(cls)
    return SignedMonomial(coeff, exps)


def is_square(a: Scalar) -> bool:
    _require_nonzero(a)
    F = a.field
    if F.kind == "Q":
        return arith.is_perfect_square(a.v.numerator) and arith.is_perfect_square(a.v.denominator)
    if F.kind == "Fp":
        return pow(a.v, (F.p - 1) // 2, F.p) == 1
    mono = monomial_parts(a)
    if mono is None:
        raise NotMonomialError(f"{a} is not a signed monomial")
    coeff, exps = mono
    return all(e % 2 == 0 for e in exps) and is_square(Scalar(F.base, coeff))


def field_level(f: FieldDescriptor):
    """Level of the field: least n with -1 a sum of n squares (``math.inf`` if none)."""
    return describe_field_level(f)[0]


def describe_field_level(f: FieldDescriptor) -> tuple[Any, str]:
    if f.kind == "FF":
        value, note = describe_field_level(f.base)
        return value, f"delegated to constant field {f.base}: {note}"
    if f.kind == "Q":
        return INF, "formally real: sums of squares are nonnegative"
    if f.p % 4 == 1:
        return 1, f"-1 is a square mod {f.p}"
    return 2, f"-1 is a non-residue mod {f.p}; -1 = a^2 + b^2 always solvable"


def scalars(F: FieldDescriptor, values: Iterable[Any]) -> list[Scalar]:
    return [F(v) for v in values]
