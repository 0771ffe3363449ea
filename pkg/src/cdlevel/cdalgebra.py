"""Algebras obtained from a field by iterated Cayley-Dickson doubling.

Doubling rule, for (a1, a2), (b1, b2) in A + A and a fixed gamma:

    (a1, a2)(b1, b2) = (a1 b1 + gamma conj(b2) a2,  a2 conj(b1) + b2 a1)
    conj(a1, a2)     = (conj(a1), -a2)
    n(a1, a2)        = n(a1) - gamma n(a2)

Basis vectors are indexed by subsets of {1..t} in binary-counter order: index
k (0 <= k < 2^t) is the product of the adjoined units whose bits are set in k,
bit i belonging to gamma_{i+1}.  Index 0 is the identity.  With this ordering
the first half of a coordinate vector is a1 and the second half is a2, and the
product of two basis vectors e_i e_j is always a multiple of e_{i xor j}.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionBudgetExceeded, MixedAlgebrasError, ZeroGammaError
from .fields import FieldDescriptor, Scalar, function_field
from .linalg import nullspace
from .quadform import DiagonalForm, IsotropyVerdict, decide_isotropy, pure_subform, scale, perp

DEFAULT_T_MAX = 6
TABLE_T_MAX = 6


# -- the doubling recursion on raw coordinate lists ---------------------------


def _conj_raw(F: FieldDescriptor, x: list) -> list:
    return [x[0]] + [F.rneg(c) for c in x[1:]]


def _mul_recursive(F: FieldDescriptor, gammas: Sequence, x: list, y: list) -> list:
    """Product by the doubling formula, using gammas[:t] for vectors of length 2^t."""
    n = len(x)
    if n == 1:
        return [F.rmul(x[0], y[0])]
    h = n // 2
    g = gammas[h.bit_length() - 1]
    a1, a2, b1, b2 = x[:h], x[h:], y[:h], y[h:]
    left = _mul_recursive(F, gammas, a1, b1)
    t = _mul_recursive(F, gammas, _conj_raw(F, b2), a2)
    first = [F.radd(u, F.rmul(g, v)) for u, v in zip(left, t)]
    s1 = _mul_recursive(F, gammas, a2, _conj_raw(F, b1))
    s2 = _mul_recursive(F, gammas, b2, a1)
    second = [F.radd(u, v) for u, v in zip(s1, s2)]
    return first + second


def _norm_recursive(F: FieldDescriptor, gammas: Sequence, x: list):
    n = len(x)
    if n == 1:
        return F.rmul(x[0], x[0])
    h = n // 2
    g = gammas[h.bit_length() - 1]
    return F.rsub(_norm_recursive(F, gammas, x[:h]), F.rmul(g, _norm_recursive(F, gammas, x[h:])))


@dataclass(frozen=True, eq=False)
class CDAlgebra:
    """(gamma_1, ..., gamma_t / K), immutable; the product table is built eagerly for t <= 6."""

    field: FieldDescriptor
    gammas: tuple[Scalar, ...]
    t_max: int = DEFAULT_T_MAX
    _table: Optional[list] = field(default=None, repr=False)
    _betas: tuple = field(default=(), repr=False)
    _int_table: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        F = self.field
        gammas = tuple(F(g) for g in self.gammas)
        object.__setattr__(self, "gammas", gammas)
        if not gammas:
            raise ValueError("need at least one doubling parameter")
        if any(g.is_zero() for g in gammas):
            raise ZeroGammaError("Cayley-Dickson parameters must be nonzero")
        if len(gammas) > self.t_max:
            raise DimensionBudgetExceeded(f"t = {len(gammas)} exceeds the configured maximum {self.t_max}")
        betas = tuple(self.beta(k) for k in range(self.dim))
        object.__setattr__(self, "_betas", betas)
        if self.t <= TABLE_T_MAX:
            object.__setattr__(self, "_table", self._build_table())
            for k in range(1, self.dim):
                idx, c = self._table[k][k]
                if idx != 0 or not F.req(c, betas[k].v):
                    raise AssertionError(f"basis square e_{k}^2 disagrees with the subset-sign formula")
            if F.kind in ("Q", "Fp"):
                object.__setattr__(self, "_int_table", self._build_int_table())

    @property
    def t(self) -> int:
        return len(self.gammas)

    @property
    def dim(self) -> int:
        return 1 << self.t

    def __eq__(self, other) -> bool:
        return isinstance(other, CDAlgebra) and self.field == other.field and self.gammas == other.gammas

    def __hash__(self) -> int:
        return hash((self.field, len(self.gammas)))

    def __str__(self) -> str:
        return f"({', '.join(str(g) for g in self.gammas)} / {self.field})"

    def beta(self, k: int) -> Scalar:
        """Square of the basis vector e_k: (-1)^(|S|+1) prod_{i in S} gamma_i, S = bits of k."""
        if k == 0:
            return self.field.one()
        bits = [i for i in range(self.t) if k >> i & 1]
        prod = self.field.one()
        for i in bits:
            prod = prod * self.gammas[i]
        return prod if len(bits) % 2 else -prod

    def _build_table(self) -> list:
        F = self.field
        gv = [g.v for g in self.gammas]
        table = []
        for i in range(self.dim):
            row = []
            ei = [F.rzero()] * self.dim
            ei[i] = F.rone()
            for j in range(self.dim):
                ej = [F.rzero()] * self.dim
                ej[j] = F.rone()
                prod = _mul_recursive(F, gv, ei, ej)
                nz = [k for k, c in enumerate(prod) if not F.ris_zero(c)]
                if nz != [i ^ j]:
                    raise AssertionError(f"e_{i} e_{j} is not a multiple of e_{i ^ j}")
                row.append((i ^ j, prod[i ^ j]))
            table.append(row)
        return table

    def _build_int_table(self) -> tuple:
        """(rows, D): structure constants as integers c_ij * D, with D a common denominator."""
        consts = [Fraction(c) for row in self._table for _, c in row]
        D = math.lcm(*(c.denominator for c in consts)) if self.field.kind == "Q" else 1
        rows = tuple(tuple((k, int(Fraction(c) * D)) for k, c in row) for row in self._table)
        return rows, D

    def structure_constant(self, i: int, j: int) -> tuple[int, Scalar]:
        """(k, c) with e_i e_j = c e_k."""
        if self._table is not None:
            k, c = self._table[i][j]
            return k, Scalar(self.field, c)
        prod = self.basis(i) * self.basis(j)
        return i ^ j, prod.coords[i ^ j]

    # -- elements ----------------------------------------------------------

    def element(self, coords: Iterable) -> "CDElement":
        vals = [self.field(c).v for c in coords]
        if len(vals) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(vals)}")
        return CDElement(self, tuple(vals))

    def scalar(self, c) -> "CDElement":
        vals = [self.field.rzero()] * self.dim
        vals[0] = self.field(c).v
        return CDElement(self, tuple(vals))

    def one(self) -> "CDElement":
        return self.scalar(1)

    def zero(self) -> "CDElement":
        return self.scalar(0)

    def basis(self, k: int) -> "CDElement":
        vals = [self.field.rzero()] * self.dim
        vals[k] = self.field.rone()
        return CDElement(self, tuple(vals))

    def random_element(self, rng: random.Random, height: int = 5) -> "CDElement":
        F = self.field
        if F.kind == "Fp":
            return self.element([rng.randrange(F.p) for _ in range(self.dim)])
        return self.element([rng.randint(-height, height) for _ in range(self.dim)])

    def elements(self) -> Iterable["CDElement"]:
        """Every element of a finite algebra (F_p only)."""
        F = self.field
        if F.kind != "Fp":
            raise ValueError("only algebras over F_p are finite")
        for coords in itertools.product(range(F.p), repeat=self.dim):
            yield CDElement(self, coords)

    # -- forms -------------------------------------------------------------

    def trace_form(self) -> DiagonalForm:
        """T_C = <1, beta_2, ..., beta_q>."""
        return DiagonalForm(self.field, self._betas)

    def pure_trace_form(self) -> DiagonalForm:
        return pure_subform(self.trace_form())

    def norm_form(self) -> DiagonalForm:
        """n_C = <1> + (-T_P)."""
        F = self.field
        return perp(DiagonalForm(F, (F.one(),)), scale(F(-1), self.pure_trace_form()))


@dataclass(frozen=True, eq=False)
class CDElement:
    """x = x_1 1 + sum x_i f_i; ``raw`` holds raw field values."""

    algebra: CDAlgebra
    raw: tuple

    @property
    def coords(self) -> tuple[Scalar, ...]:
        F = self.algebra.field
        return tuple(Scalar(F, c) for c in self.raw)

    @property
    def field(self) -> FieldDescriptor:
        return self.algebra.field

    def _check(self, other: "CDElement") -> None:
        if not isinstance(other, CDElement) or other.algebra != self.algebra:
            raise MixedAlgebrasError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, CDElement):
            return self + self.algebra.scalar(other)
        self._check(other)
        F = self.field
        return CDElement(self.algebra, tuple(F.radd(a, b) for a, b in zip(self.raw, other.raw)))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return CDElement(self.algebra, tuple(F.rneg(a) for a in self.raw))

    def __sub__(self, other):
        if not isinstance(other, CDElement):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.algebra.scalar(other) - self

    def __mul__(self, other):
        if isinstance(other, CDElement):
            return multiply(self, other)
        c = self.field(other).v
        F = self.field
        return CDElement(self.algebra, tuple(F.rmul(c, a) for a in self.raw))

    def __rmul__(self, other):
        c = self.field(other).v
        F = self.field
        return CDElement(self.algebra, tuple(F.rmul(c, a) for a in self.raw))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CDElement) or other.algebra != self.algebra:
            return False
        F = self.field
        return all(F.req(a, b) for a, b in zip(self.raw, other.raw))

    def __hash__(self) -> int:
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(self.field.ris_zero(a) for a in self.raw)

    def is_scalar(self) -> bool:
        return all(self.field.ris_zero(a) for a in self.raw[1:])

    def square(self) -> "CDElement":
        return multiply(self, self)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coords):
            if c.is_zero():
                continue
            name = "" if k == 0 else f"f{k + 1}"
            s = str(c)
            if not name:
                terms.append(s)
            elif s == "1":
                terms.append(name)
            elif s == "-1":
                terms.append("-" + name)
            else:
                if any(ch in s[1:] for ch in "+-/") or " " in s:
                    s = f"({s})"
                terms.append(f"{s}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self) -> str:
        return f"CDElement({self})"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def construct(field: FieldDescriptor, gammas: Sequence, t_max: int = DEFAULT_T_MAX) -> CDAlgebra:
    return CDAlgebra(field, tuple(field(g) for g in gammas), t_max=t_max)


def brown_algebra(t: int, base: FieldDescriptor, t_max: int = DEFAULT_T_MAX) -> CDAlgebra:
    """(X1, ..., Xt / K0(X1, ..., Xt))."""
    if base.kind == "FF":
        raise ValueError("Brown's construction starts from Q or F_p")
    if t < 1:
        raise ValueError("t must be positive")
    F = function_field(base, t)
    return CDAlgebra(F, tuple(F.gens()), t_max=t_max)


def multiply(x: CDElement, y: CDElement) -> CDElement:
    x._check(y)
    A = x.algebra
    F = A.field
    if A._table is None:
        return CDElement(A, tuple(_mul_recursive(F, [g.v for g in A.gammas], list(x.raw), list(y.raw))))
    if A._int_table is not None:
        return _multiply_int(x, y)
    out = [F.rzero()] * A.dim
    table = A._table
    for i, xi in enumerate(x.raw):
        if F.ris_zero(xi):
            continue
        row = table[i]
        for j, yj in enumerate(y.raw):
            if F.ris_zero(yj):
                continue
            k, c = row[j]
            out[k] = F.radd(out[k], F.rmul(c, F.rmul(xi, yj)))
    return CDElement(A, tuple(out))


def _integer_coords(F: FieldDescriptor, raw: tuple) -> tuple[list[int], int]:
    if F.kind == "Fp":
        return list(raw), 1
    d = math.lcm(*(c.denominator for c in raw))
    return [c.numerator * (d // c.denominator) for c in raw], d


def _multiply_int(x: CDElement, y: CDElement) -> CDElement:
    """Table product over Q or F_p with plain integer accumulation."""
    A = x.algebra
    F = A.field
    rows, D = A._int_table
    X, dx = _integer_coords(F, x.raw)
    Y, dy = _integer_coords(F, y.raw)
    acc = [0] * A.dim
    nzy = [(j, v) for j, v in enumerate(Y) if v]
    for i, xi in enumerate(X):
        if not xi:
            continue
        row = rows[i]
        for j, yj in nzy:
            k, c = row[j]
            acc[k] += c * xi * yj
    if F.kind == "Fp":
        return CDElement(A, tuple(a % F.p for a in acc))
    den = D * dx * dy
    return CDElement(A, tuple(Fraction(a, den) for a in acc))


def multiply_recursive(x: CDElement, y: CDElement) -> CDElement:
    """Product straight from the doubling formula, bypassing the cached table."""
    x._check(y)
    A = x.algebra
    return CDElement(A, tuple(_mul_recursive(A.field, [g.v for g in A.gammas], list(x.raw), list(y.raw))))


def conjugate(x: CDElement) -> CDElement:
    return CDElement(x.algebra, tuple(_conj_raw(x.field, list(x.raw))))


def trace(x: CDElement) -> Scalar:
    """t(x) = x + conj(x) as a scalar, i.e. 2 x_1."""
    F = x.field
    return Scalar(F, F.radd(x.raw[0], x.raw[0]))


def norm(x: CDElement) -> Scalar:
    """n(x) = n(a1) - gamma n(a2), recursively."""
    A = x.algebra
    return Scalar(A.field, _norm_recursive(A.field, [g.v for g in A.gammas], list(x.raw)))


def trace_form(A: CDAlgebra) -> DiagonalForm:
    return A.trace_form()


def pure_trace_form(A: CDAlgebra) -> DiagonalForm:
    return A.pure_trace_form()


def norm_form(A: CDAlgebra) -> DiagonalForm:
    return A.norm_form()


# ---------------------------------------------------------------------------
# Division diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormReport:
    verdict: IsotropyVerdict
    interpretation: str


def norm_anisotropy_report(A: CDAlgebra, **decide_kwargs) -> NormReport:
    verdict = decide_isotropy(A.norm_form(), **decide_kwargs)
    if verdict.isotropic:
        text = "not division; zero divisors exist"
    elif verdict.anisotropic:
        if A.t <= 3:
            text = "division (composition algebra)"
        else:
            text = "norm anisotropic; division NOT implied"
    else:
        text = "undecided"
    return NormReport(verdict, text)


def left_multiplication_matrix(x: CDElement) -> list[list]:
    """Raw matrix M with (x y)_k = sum_j M[k][j] y_j."""
    A = x.algebra
    cols = [multiply(x, A.basis(j)).raw for j in range(A.dim)]
    return [[cols[j][k] for j in range(A.dim)] for k in range(A.dim)]


def _candidate_patterns(A: CDAlgebra):
    """Nonzero coefficient patterns by increasing support size.

    Over F_p every residue is used; elsewhere coefficients are restricted to +-1.
    The leading nonzero coefficient is fixed to 1 (zero divisors are closed under scaling).
    """
    F = A.field
    if F.kind == "Fp":
        values = list(range(1, F.p))
    else:
        values = [1, -1]
    for size in range(1, A.dim + 1):
        for support in itertools.combinations(range(A.dim), size):
            for tail in itertools.product(values, repeat=size - 1):
                coeffs = [0] * A.dim
                coeffs[support[0]] = 1
                for k, c in zip(support[1:], tail):
                    coeffs[k] = c
                yield coeffs


def find_zero_divisors(A: CDAlgebra, budget: int = 100_000) -> Optional[tuple[CDElement, CDElement]]:
    """Search x over small coefficient patterns and solve x y = 0 exactly for y.

    ``budget`` caps the number of candidates x.  ``None`` means the budget ran out,
    which proves nothing about division.
    """
    F = A.field
    for n, coeffs in enumerate(_candidate_patterns(A)):
        if n >= budget:
            return None
        x = A.element(coeffs)
        kernel = nullspace(F, left_multiplication_matrix(x))
        if kernel:
            y = CDElement(A, tuple(kernel[0]))
            y = _integral(y)
            if not multiply(x, y).is_zero():
                raise AssertionError("kernel vector does not annihilate x")  # pragma: no cover
            return x, y
    return None


def _integral(y: CDElement) -> CDElement:
    """Clear denominators of a rational element (cosmetic)."""
    from fractions import Fraction
    import math

    if y.field.kind != "Q":
        return y
    den = math.lcm(*(Fraction(c).denominator for c in y.raw))
    ints = [int(c * den) for c in y.raw]
    g = math.gcd(*ints) or 1
    return y.algebra.element([Fraction(c, g) for c in ints])
