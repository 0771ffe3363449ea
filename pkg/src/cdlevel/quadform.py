"""Diagonal quadratic forms: constructions, signatures, Witt indices and isotropy.

Isotropy is decided completely over F_p (Chevalley-Warning plus discriminant),
over Q (Hasse-Minkowski with Hilbert symbols), and over K0(X1..Xt) for forms
with signed-monomial coefficients (Springer's theorem, eliminating the
variables from X_t down to X_1).
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import arith
from .errors import (
    BadWittIndexError,
    DegenerateResultError,
    DimensionMismatchError,
    FactorizationBudgetExceeded,
    MixedFieldsError,
    NoLeadingOneError,
    NotMonomialError,
    NotMonomialFormError,
    SignUndeterminedError,
    WrongFieldError,
    ZeroInputError,
    ZeroParameterError,
    ZeroScaleError,
)
from .fields import FieldDescriptor, Scalar, monomial_parts, square_decompose
from .linalg import diagonalize_symmetric, nullspace

DEFAULT_WITNESS_HEIGHT = 50
FULL_SEARCH_DIM = 5  # whole-form witness search stays cheap up to here
FULL_SEARCH_HEIGHT = 8


@dataclass(frozen=True)
class DiagonalForm:
    """The form <a1, ..., an> = a1 X1^2 + ... + an Xn^2."""

    field: FieldDescriptor
    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        coeffs = tuple(self.field(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise DegenerateResultError("a diagonal form needs at least one coefficient")
        if any(c.is_zero() for c in coeffs):
            raise ZeroInputError("diagonal forms must be regular (no zero coefficients)")

    @classmethod
    def of(cls, field: FieldDescriptor, values: Iterable) -> "DiagonalForm":
        return cls(field, tuple(field(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __str__(self) -> str:
        return "<" + ", ".join(str(c) for c in self.coeffs) + ">"


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _same_field(p: DiagonalForm, q: DiagonalForm) -> None:
    if p.field != q.field:
        raise MixedFieldsError(f"forms over {p.field} and {q.field}")


def perp(p: DiagonalForm, q: DiagonalForm) -> DiagonalForm:
    _same_field(p, q)
    return DiagonalForm(p.field, p.coeffs + q.coeffs)


def tensor(p: DiagonalForm, q: DiagonalForm) -> DiagonalForm:
    """All products a_i b_j, the index into p varying slowest.

    ``tensor(<1,a>, <1,b>) = <1, b, a, ab>``.
    """
    _same_field(p, q)
    return DiagonalForm(p.field, tuple(a * b for a in p.coeffs for b in q.coeffs))


def scale(c: Scalar, q: DiagonalForm) -> DiagonalForm:
    c = q.field(c)
    if c.is_zero():
        raise ZeroScaleError("cannot scale a form by zero")
    return DiagonalForm(q.field, tuple(c * a for a in q.coeffs))


def times(n: int, q: DiagonalForm) -> DiagonalForm:
    """n x q, the orthogonal sum of n copies."""
    if n < 1:
        raise DegenerateResultError("n x q needs n >= 1")
    return DiagonalForm(q.field, q.coeffs * n)


def pfister(*params: Scalar) -> DiagonalForm:
    """<<a1,...,ak>>: coefficients are the subset products, subset k encoded in binary.

    Bit i of the subset index selects a_{i+1}, so ``pfister(a, b) = <1, a, b, ab>``;
    this is the same list as ``tensor(<1,a_k>, ..., <1,a_1>)``.
    """
    if not params:
        raise ZeroParameterError("a Pfister form needs at least one parameter")
    F = params[0].field
    params = [F(a) for a in params]
    if any(a.is_zero() for a in params):
        raise ZeroParameterError("Pfister parameters must be nonzero")
    coeffs = [F.one()]
    for a in params:
        coeffs = coeffs + [a * c for c in coeffs]
    return DiagonalForm(F, tuple(coeffs))


def pure_subform(phi: DiagonalForm) -> DiagonalForm:
    if phi.coeffs[0] != 1:
        raise NoLeadingOneError(f"{phi} is not of the shape <1> + phi'")
    if phi.dim == 1:
        raise DegenerateResultError("the pure subform of <1> is zero-dimensional")
    return DiagonalForm(phi.field, phi.coeffs[1:])


def evaluate(phi: DiagonalForm, v: Sequence) -> Scalar:
    if len(v) != phi.dim:
        raise DimensionMismatchError(f"vector of length {len(v)} for a form of dimension {phi.dim}")
    F = phi.field
    vals = [F(x).v for x in v]
    return Scalar(F, F.rsum(F.rmul(a.v, F.rmul(x, x)) for a, x in zip(phi.coeffs, vals)))


def same_square_classes(p: DiagonalForm, q: DiagonalForm) -> bool:
    """Equal as multisets of square classes (a permutation-and-rescaling isometry)."""
    _same_field(p, q)
    if p.dim != q.dim:
        return False
    key = lambda a: str(square_decompose(a)[0])  # noqa: E731
    return Counter(map(key, p)) == Counter(map(key, q))


# ---------------------------------------------------------------------------
# Orderings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignAssignment:
    """An ordering of Q(X1..Xt) extending the standard ordering of Q, by the signs of the X_j."""

    var_signs: tuple[int, ...] = ()
    base_sign: int = 1

    def __post_init__(self):
        if self.base_sign != 1:
            raise ValueError("Q has only its standard ordering")
        if any(s not in (1, -1) for s in self.var_signs):
            raise ValueError("signs must be +1 or -1")

    def sign(self, a: Scalar) -> int:
        F = a.field
        if F.ground.kind != "Q":
            raise SignUndeterminedError(f"{F} is not formally real")
        if F.kind == "Q":
            return 1 if a.v > 0 else -1
        if len(self.var_signs) != F.nvars:
            raise SignUndeterminedError("sign assignment has the wrong number of variables")
        mono = monomial_parts(a)
        if mono is None:
            raise SignUndeterminedError(f"{a} is not a signed monomial")
        coeff, exps = mono
        s = 1 if coeff > 0 else -1
        for sg, e in zip(self.var_signs, exps):
            if e % 2:
                s *= sg
        return s


def signature(phi: DiagonalForm, P: SignAssignment = SignAssignment()) -> int:
    return sum(P.sign(a) for a in phi.coeffs)


def is_indefinite(phi: DiagonalForm, P: SignAssignment = SignAssignment()) -> bool:
    return phi.dim > abs(signature(phi, P))


# ---------------------------------------------------------------------------
# Isotropy verdicts
# ---------------------------------------------------------------------------


class Status(str, enum.Enum):
    ISOTROPIC = "Isotropic"
    ANISOTROPIC = "Anisotropic"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class IsotropyVerdict:
    status: Status
    witness: Optional[tuple[Scalar, ...]] = None
    method: str = ""
    diagnostic: Optional[str] = None

    @property
    def isotropic(self) -> bool:
        return self.status is Status.ISOTROPIC

    @property
    def anisotropic(self) -> bool:
        return self.status is Status.ANISOTROPIC


def _checked(phi: DiagonalForm, verdict: IsotropyVerdict) -> IsotropyVerdict:
    if verdict.witness is not None:
        w = verdict.witness
        if verdict.status is not Status.ISOTROPIC:
            raise AssertionError("only isotropic verdicts carry witnesses")
        if all(x.is_zero() for x in w) or not evaluate(phi, w).is_zero():
            raise AssertionError(f"witness {[str(x) for x in w]} does not verify on {phi}")
    return verdict


# -- F_p ---------------------------------------------------------------------


def _fp_pair_witness(a: int, b: int, p: int) -> Optional[tuple[int, int]]:
    """(x, 1) with a x^2 + b = 0, least x, or None."""
    r = arith.sqrt_mod(-b * pow(a, -1, p), p)
    if r is None:
        return None
    return min(r, p - r), 1


def isotropic_fp(phi: DiagonalForm) -> IsotropyVerdict:
    F = phi.field
    if F.kind != "Fp":
        raise WrongFieldError(f"isotropic_fp needs a prime field, got {F}")
    p = F.p
    a = [c.v for c in phi.coeffs]
    n = len(a)
    if n == 1:
        return IsotropyVerdict(Status.ANISOTROPIC, method="F_p: dimension 1")
    if n == 2:
        w = _fp_pair_witness(a[0], a[1], p)
        if w is None:
            return IsotropyVerdict(Status.ANISOTROPIC, method="F_p: -a1*a2 is a non-residue")
        return _checked(phi, IsotropyVerdict(Status.ISOTROPIC, tuple(F(x) for x in w),
                                             "F_p: -a1*a2 is a square"))
    # a ternary conic over F_p has p+1 points, at most two with x = 0
    for y in range(p):
        rhs = -(a[0] + a[1] * y * y) * pow(a[2], -1, p) % p
        z = arith.sqrt_mod(rhs, p)
        if z is not None:
            z = min(z, p - z)
            w = (1, y, z) + (0,) * (n - 3)
            return _checked(phi, IsotropyVerdict(Status.ISOTROPIC, tuple(F(x) for x in w),
                                                 "F_p: dimension >= 3 (Chevalley-Warning)"))
    raise AssertionError("ternary form over F_p without a point")  # pragma: no cover


def witt_index_fp(phi: DiagonalForm) -> int:
    """Witt index over F_p from the dimension and the signed discriminant."""
    F = phi.field
    if F.kind != "Fp":
        raise WrongFieldError(f"witt_index_fp needs a prime field, got {F}")
    n = phi.dim
    if n % 2:
        return (n - 1) // 2
    det = 1
    for c in phi.coeffs:
        det = det * c.v % F.p
    disc = (-1) ** (n // 2) * det % F.p
    return n // 2 if arith.legendre(disc, F.p) == 1 else n // 2 - 1


def witt_index_fp_by_splitting(phi: DiagonalForm) -> int:
    """Witt index by repeatedly splitting off hyperbolic planes spanned by isotropic witnesses."""
    F = phi.field
    if F.kind != "Fp":
        raise WrongFieldError(f"witt index needs a prime field, got {F}")
    form = phi
    count = 0
    while form.dim >= 2:
        verdict = isotropic_fp(form)
        if not verdict.isotropic:
            break
        a = [c.v for c in form.coeffs]
        v = [x.v for x in verdict.witness]
        i = next(k for k, x in enumerate(v) if x)
        w = [0] * form.dim
        w[i] = 1
        # bilinear functionals B(v, .) and B(w, .)
        rows = [[F.rmul(ak, vk) for ak, vk in zip(a, v)], [F.rmul(ak, wk) for ak, wk in zip(a, w)]]
        comp = nullspace(F, rows)
        count += 1
        if not comp:
            break
        gram = [[F.rsum(F.rmul(ak, F.rmul(x[k], y[k])) for k, ak in enumerate(a)) for y in comp]
                for x in comp]
        diag = diagonalize_symmetric(F, gram)
        if any(F.ris_zero(d) for d in diag):
            raise AssertionError("complement of a hyperbolic plane is degenerate")  # pragma: no cover
        form = DiagonalForm(F, tuple(Scalar(F, d) for d in diag))
    return count


# -- Q -------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _prime_factors(n: int, bound: int) -> tuple[int, ...]:
    return tuple(sorted(arith.factor(n, bound)))


def _local_isotropic(s: Sequence[int], p: int) -> bool:
    """Isotropy of <s1..sn> over Q_p (p = 0: over R), n in {3, 4}."""
    n = len(s)
    if p == 0:
        return any(x > 0 for x in s) and any(x < 0 for x in s)
    d = math.prod(s)
    eps = 1
    for i in range(n):
        for j in range(i + 1, n):
            eps *= arith.hilbert_symbol(s[i], s[j], p)
    if n == 3:
        return arith.hilbert_symbol(-1, -d, p) == eps
    if n == 4:
        if not arith.is_local_square(d, p):
            return True
        return eps == arith.hilbert_symbol(-1, -1, p)
    raise ValueError("local test implemented for dimensions 3 and 4")


def hm_isotropic(s: Sequence[int], factor_bound: int = arith.DEFAULT_FACTOR_BOUND) -> bool:
    """Hasse-Minkowski decision for <s1..sn> with nonzero square-free integers."""
    n = len(s)
    if n == 1:
        return False
    vals = set(s)
    if any(-x in vals for x in vals):
        return True
    if n == 2:
        return False
    if not (any(x > 0 for x in s) and any(x < 0 for x in s)):
        return False
    if n >= 5:
        return True
    primes = {2}
    for x in s:
        primes.update(_prime_factors(abs(x), factor_bound))
    return all(_local_isotropic(s, p) for p in sorted(primes) + [0])


def _search_block(s: Sequence[int], lo: int, hi: int) -> Optional[tuple[int, ...]]:
    """Best integer zero of <s> with all coordinates in [0, hi] and height in (lo, hi].

    The last coordinate is solved for; the others are enumerated, the leading one in
    a Python loop and the rest vectorized.
    """
    k = len(s)
    rng = np.arange(hi + 1, dtype=np.int64)
    if k > 2:
        grids = np.meshgrid(*[rng] * (k - 2), indexing="ij")
        rest = [g.ravel() for g in grids]
    else:
        rest = []
    partial = np.zeros(rest[0].shape if rest else (1,), dtype=np.int64)
    for c, col in zip(s[1:-1], rest):
        partial += c * col * col
    rest_height = np.maximum.reduce(rest) if rest else np.zeros(1, dtype=np.int64)
    cand = []
    for x0 in range(hi + 1):
        total = partial + s[0] * x0 * x0
        q, r = np.divmod(-total, s[-1])
        ok = (r == 0) & (q >= 0)
        root = np.rint(np.sqrt(np.where(ok, q, 0).astype(np.float64))).astype(np.int64)
        ok &= root * root == q
        ok &= root <= hi
        height = np.maximum(np.maximum(rest_height, root), x0)
        ok &= (height > lo) & (height > 0)
        for i in np.nonzero(ok)[0]:
            cand.append((x0,) + tuple(int(c[i]) for c in rest) + (int(root[i]),))
    if not cand:
        return None
    return min(cand, key=lambda w: (max(w), sum(x * x for x in w), tuple(-x for x in w)))


def find_integer_zero(s: Sequence[int], height: int = DEFAULT_WITNESS_HEIGHT) -> Optional[tuple[int, ...]]:
    """Nonzero integer vector of height <= ``height`` with sum s_i w_i^2 = 0, searching shells outward."""
    lo = 0
    hi = 1
    while lo < height:
        hi = min(hi, height)
        w = _search_block(s, lo, hi)
        if w is not None:
            return w
        lo, hi = hi, hi * 2
    return None


def _isotropic_subform(s: Sequence[int], factor_bound: int) -> list[int]:
    """Indices of a smallest isotropic subform of an isotropic form over Q."""
    n = len(s)
    pos = {}
    for i, x in enumerate(s):
        pos.setdefault(x, []).append(i)
    for x, ix in pos.items():
        if -x in pos:
            return [ix[0], pos[-x][0]]
    # choose up to three copies of each distinct value
    pool = [i for ix in pos.values() for i in ix[:3]]
    seen = set()
    for size in (3, 4):
        for combo in itertools.combinations(pool, size):
            key = tuple(sorted(s[i] for i in combo))
            if key in seen:
                continue
            seen.add(key)
            if hm_isotropic(key, factor_bound):
                return list(combo)
    posi = [i for i in range(n) if s[i] > 0]
    negi = [i for i in range(n) if s[i] < 0]
    rest = [i for i in range(n) if i not in (posi[0], negi[0])]
    return sorted([posi[0], negi[0]] + rest[:3])


def isotropic_q(phi: DiagonalForm, factor_bound: int = arith.DEFAULT_FACTOR_BOUND,
                witness_height: int = DEFAULT_WITNESS_HEIGHT) -> IsotropyVerdict:
    F = phi.field
    if F.kind != "Q":
        raise WrongFieldError(f"isotropic_q needs Q, got {F}")
    try:
        decomp = [square_decompose(a, factor_bound) for a in phi.coeffs]
    except FactorizationBudgetExceeded as exc:
        return IsotropyVerdict(Status.UNKNOWN, method="Q: Hasse-Minkowski",
                               diagnostic=f"factorization budget exceeded: {exc}")
    s = [int(cls.v) for cls, _ in decomp]
    try:
        iso = hm_isotropic(s, factor_bound)
    except FactorizationBudgetExceeded as exc:  # pragma: no cover - square-free parts already factored
        return IsotropyVerdict(Status.UNKNOWN, method="Q: Hasse-Minkowski", diagnostic=str(exc))
    n = len(s)
    if n == 1:
        method = "Q: dimension 1"
    elif n == 2:
        method = "Q: -a1*a2 square test"
    elif n >= 5:
        method = "Q: dimension >= 5, indefinite over R"
    else:
        method = "Q: Hasse-Minkowski local conditions"
    if not iso:
        return IsotropyVerdict(Status.ANISOTROPIC, method=method)
    sub, w = list(range(n)), None
    if n <= FULL_SEARCH_DIM:
        w = find_integer_zero(s, min(witness_height, FULL_SEARCH_HEIGHT))
    if w is None:
        sub = _isotropic_subform(s, factor_bound)
        w = find_integer_zero([s[i] for i in sub], witness_height)
    if w is None and n <= FULL_SEARCH_DIM and len(sub) < n:
        # a small zero of the whole form can exist when the chosen subform has none
        sub = list(range(n))
        w = find_integer_zero(s, witness_height)
    if w is None:
        return IsotropyVerdict(Status.ISOTROPIC, method=method,
                               diagnostic=f"no witness of height <= {witness_height}")
    vec = [Fraction(0)] * n
    for i, x in zip(sub, w):
        vec[i] = Fraction(x) / decomp[i][1].v
    lcm = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * lcm) for x in vec]
    g = math.gcd(*ints)
    witness = tuple(F(x // g) for x in ints)
    return _checked(phi, IsotropyVerdict(Status.ISOTROPIC, witness, method))


# -- K0(X1..Xt) ----------------------------------------------------------------


def _decide_base(phi: DiagonalForm, factor_bound: int, witness_height: int) -> IsotropyVerdict:
    if phi.field.kind == "Q":
        return isotropic_q(phi, factor_bound, witness_height)
    return isotropic_fp(phi)


def springer_reduce(phi: DiagonalForm, factor_bound: int = arith.DEFAULT_FACTOR_BOUND,
                    witness_height: int = DEFAULT_WITNESS_HEIGHT) -> IsotropyVerdict:
    F = phi.field
    if F.kind != "FF":
        raise WrongFieldError(f"springer_reduce needs a rational function field, got {F}")
    try:
        decomp = [square_decompose(a, factor_bound) for a in phi.coeffs]
    except NotMonomialError as exc:
        raise NotMonomialFormError(str(exc)) from exc
    except FactorizationBudgetExceeded as exc:
        return IsotropyVerdict(Status.UNKNOWN, method="Springer reduction", diagnostic=str(exc))
    entries = []
    for cls, _ in decomp:
        coeff, exps = monomial_parts(cls)
        entries.append((coeff, exps))
    base = F.base

    def rec(indices: list[int], var: int):
        """Return (verdict, {index: base witness coordinate}) for the subform on ``indices``."""
        if var < 0:
            leaf = DiagonalForm(base, tuple(Scalar(base, entries[i][0]) for i in indices))
            v = _decide_base(leaf, factor_bound, witness_height)
            wmap = None
            if v.witness is not None:
                wmap = dict(zip(indices, v.witness))
            return v, wmap, [str(leaf)]
        even = [i for i in indices if entries[i][1][var] % 2 == 0]
        odd = [i for i in indices if entries[i][1][var] % 2]
        results = [rec(part, var - 1) for part in (even, odd) if part]
        leaves = [leaf for r in results for leaf in r[2]]
        for v, wmap, _ in results:
            if v.isotropic:
                return v, wmap, leaves
        if any(v.status is Status.UNKNOWN for v, _, _ in results):
            diag = "; ".join(v.diagnostic or "" for v, _, _ in results if v.status is Status.UNKNOWN)
            return IsotropyVerdict(Status.UNKNOWN, diagnostic=diag), None, leaves
        return IsotropyVerdict(Status.ANISOTROPIC), None, leaves

    verdict, wmap, leaves = rec(list(range(phi.dim)), F.nvars - 1)
    if verdict.isotropic:
        method = f"Springer reduction: isotropic leaf over {base} ({verdict.method})"
    elif verdict.anisotropic:
        method = f"Springer reduction: all {len(leaves)} leaves anisotropic over {base}: " + ", ".join(leaves)
    else:
        method = "Springer reduction"
    if wmap is None:
        return IsotropyVerdict(verdict.status, None, method, verdict.diagnostic)
    witness = []
    for i in range(phi.dim):
        if i in wmap:
            witness.append(F(Fraction(0)) + _embed(F, wmap[i]) / decomp[i][1])
        else:
            witness.append(F.zero())
    return _checked(phi, IsotropyVerdict(Status.ISOTROPIC, tuple(witness), method, verdict.diagnostic))


def _embed(F: FieldDescriptor, c: Scalar) -> Scalar:
    return Scalar(F, F._ff_const(c.v))


def decide_isotropy(phi: DiagonalForm, factor_bound: int = arith.DEFAULT_FACTOR_BOUND,
                    witness_height: int = DEFAULT_WITNESS_HEIGHT) -> IsotropyVerdict:
    kind = phi.field.kind
    if kind == "Fp":
        return isotropic_fp(phi)
    if kind == "Q":
        return isotropic_q(phi, factor_bound, witness_height)
    return springer_reduce(phi, factor_bound, witness_height)


def dim_es(dim: int, i1: int) -> int:
    """Essential dimension dim - i1 + 1; i1 comes from the citation registry."""
    if dim < 1 or not 1 <= i1 <= dim:
        raise BadWittIndexError(f"first Witt index {i1} invalid for dimension {dim}")
    return dim - i1 + 1
