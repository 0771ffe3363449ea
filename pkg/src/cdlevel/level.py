"""Levels and sublevels of Cayley-Dickson algebras.

Level s(A): least n with -1 a sum of n squares in A.
Sublevel s_(A): least n with 0 a sum of n + 1 nonzero squares in A.

Three kinds of evidence are combined into a :class:`LevelReport`:

* exhaustive search over finite fields (``level_bruteforce``, ``sublevel_bruteforce``);
* isotropy criteria relating bounds on s and s_ to forms built from T_P;
* pure dimension counting for the algebras A_t(n) and A_t'(n) obtained by
  extending scalars of Brown's algebra to the function field of
  <1> + n x T_P, respectively (2^k + 1) x <1> + (n - 1) x T_P.  Their base
  fields are not computable here, so exact values for them are looked up in a
  citation registry.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .arith import two_adic_valuation
from .cdalgebra import CDAlgebra, CDElement, multiply
from .config import RunConfig, SublevelReading
from .errors import (
    CertificateContradiction,
    EnumerationBudgetExceeded,
    HypothesisViolation,
    UnknownVerdictError,
    WrongFieldError,
)
from .fields import Scalar
from .quadform import (
    DiagonalForm,
    IsotropyVerdict,
    Status,
    decide_isotropy,
    dim_es,
    perp,
    times,
)

INF = math.inf

CITATIONS = {
    "definition": "level and sublevel are positive integers or infinity by definition",
    "sublevel-below-level": "the sublevel never exceeds the level",
    "isotropy-level-bound": "<1> + n x T_P isotropic implies s(A) <= n",
    "sublevel-isotropy-criterion": "for t >= 2, k > 1: s_(A) <= 2^k - 1 iff <1> + (2^k - 1) x T_P is isotropic",
    "level-isotropy-criterion": "for k >= t: s(A) <= 2^k iff (2^k + 1) x <1> + (2^k - 1) x T_P is isotropic",
    "sublevel-to-level": "s_(A) = 1 gives s(A) <= 2; s_(A) = n with 2^(k-1) <= n < 2^k, k >= 2, gives s(A) <= 2^k - 1",
    "constructive-level-bound": "n = 2^k r, r odd: (2^k + 1) x <1> + (n - 1) x T_P isotropic implies s(A) <= n",
    "prior-interval-bounds": "s(A_t(n)) in [n - [n/2^t], n], s_(A_t(n)) in [n - [(n + 2^t - 1)/2^t], n], t >= 2",
    "essential-dimension-bound": "m x T_C stays anisotropic over K'_n when the dimension inequality holds, so s_, s of A_t'(n) lie in [l, n]",
    "exact-below-dimension": "n <= 2^t - 1: s(A_t(n)) = s_(A_t(n)) = n",
    "exact-at-dimension": "n = 2^t: s(A_t(n)) = s_(A_t(n)) = n",
    "exact-power-of-two": "n = 2^k, k >= 2, t >= 3: s(A_t(n)) = s_(A_t(n)) = n",
    "exact-power-of-two-plus-one": "n = 2^k + 1, t >= 3: s(A_t(n)) = n",
    "exact-power-of-two-prime-variant": "n = 2^k, k >= 2: s(A_t'(n)) = s_(A_t'(n)) = n",
    "first-witt-index-level-form": "i1(<1> + n x T_P) = 1 for t >= 2",
    "first-witt-index-prime-form": "i1((2^k + 1) x <1> + (n - 1) x T_P) = 1 for t >= 2",
    "first-witt-index-multiple-trace-form": "i1(m x T_C) >= 2^r for m = 2^r s, s odd",
}


class CertKind(str, enum.Enum):
    BRUTE_FORCE_WITNESS = "BruteForceWitness"
    ISOTROPY_CRITERION = "IsotropyCriterion"
    DIMENSION_BOUND = "DimensionBound"
    SUBLEVEL_LEVEL_RELATION = "SublevelLevelRelation"
    REGISTRY = "Registry"

    def __str__(self) -> str:
        return self.value


class Variant(str, enum.Enum):
    PLAIN = "plain"  # A_t(n)
    PRIME = "prime"  # A_t'(n)

    def __str__(self) -> str:
        return self.value


Interval = tuple  # (lo, hi), hi may be INF


@dataclass(frozen=True)
class Certificate:
    """A justified claim ``lo <= target <= hi`` with target "level" or "sublevel"."""

    kind: CertKind
    target: str
    interval: Interval
    citation: str = ""
    detail: str = ""
    form: Optional[DiagonalForm] = None
    verdict: Optional[Status] = None
    witness: Optional[tuple[CDElement, ...]] = None
    lhs_dim: Optional[int] = None
    rhs_dim: Optional[int] = None

    def __post_init__(self):
        if self.target not in ("level", "sublevel"):
            raise ValueError(f"unknown certificate target {self.target!r}")
        lo, hi = self.interval
        if lo < 1 or hi < lo:
            raise ValueError(f"bad certificate interval {self.interval}")

    def verify(self, reading: SublevelReading = SublevelReading.LITERAL_NONZERO_SQUARE) -> bool:
        """Re-check an attached witness by multiplication; certificates without one pass."""
        if self.witness is None:
            return True
        if self.target == "level":
            return verify_level_witness(self.witness)
        return verify_sublevel_witness(self.witness, reading)


@dataclass(frozen=True)
class LevelReport:
    level_interval: Interval
    sublevel_interval: Interval
    certificates: tuple[Certificate, ...] = ()

    @property
    def level(self) -> Optional[int]:
        lo, hi = self.level_interval
        return lo if lo == hi else None

    @property
    def sublevel(self) -> Optional[int]:
        lo, hi = self.sublevel_interval
        return lo if lo == hi else None


# ---------------------------------------------------------------------------
# Witness checks
# ---------------------------------------------------------------------------


def _sum_of_squares(elements: Sequence[CDElement]) -> CDElement:
    A = elements[0].algebra
    total = A.zero()
    for x in elements:
        total = total + multiply(x, x)
    return total


def _nonzero(elements: Sequence[CDElement]) -> tuple[CDElement, ...]:
    """Drop zero summands; -1 stays a sum of the remaining squares."""
    return tuple(x for x in elements if not x.is_zero())


def verify_level_witness(elements: Sequence[CDElement]) -> bool:
    if not elements:
        return False
    A = elements[0].algebra
    return _sum_of_squares(elements) == A.scalar(-1)


def verify_sublevel_witness(elements: Sequence[CDElement],
                            reading: SublevelReading = SublevelReading.LITERAL_NONZERO_SQUARE) -> bool:
    if len(elements) < 2:
        return False
    if reading is SublevelReading.LITERAL_NONZERO_SQUARE:
        ok = all(not multiply(x, x).is_zero() for x in elements)
    else:
        ok = all(not x.is_zero() for x in elements)
    return ok and _sum_of_squares(elements).is_zero()


# ---------------------------------------------------------------------------
# Exhaustive search over F_p
# ---------------------------------------------------------------------------


class _FiniteAlgebraTables:
    """All elements of a finite algebra, their squares, and the sumset machinery."""

    def __init__(self, A: CDAlgebra, budget: int):
        F = A.field
        if F.kind != "Fp":
            raise WrongFieldError(f"exhaustive search needs an algebra over F_p, got {F}")
        p, q = F.p, A.dim
        size = p**q
        if size > budget:
            raise EnumerationBudgetExceeded(f"{p}^{q} = {size} elements exceed the enumeration budget {budget}")
        self.A, self.p, self.q, self.size = A, p, q, size
        self.shape = (p,) * q
        elems = np.stack(np.unravel_index(np.arange(size), self.shape), axis=1).astype(np.int64)
        sq = np.zeros_like(elems)
        for i in range(q):
            for j in range(q):
                k, c = A.structure_constant(i, j)
                sq[:, k] = (sq[:, k] + int(c.v) * elems[:, i] * elems[:, j]) % p
        self.elems = elems
        self.square_index = np.ravel_multi_index(tuple(sq.T), self.shape)

    def index_of(self, coords) -> int:
        return int(np.ravel_multi_index(tuple(int(c) % self.p for c in coords), self.shape))

    def coords_of(self, idx: int) -> np.ndarray:
        return self.elems[idx]

    def element(self, idx: int) -> CDElement:
        return self.A.element([int(c) for c in self.elems[idx]])

    def square_set(self, roots_mask: np.ndarray, drop_zero_square: bool):
        """(sorted square indices, one root index per square) over the allowed roots."""
        roots = np.nonzero(roots_mask)[0]
        sq = self.square_index[roots]
        uniq, first = np.unique(sq, return_index=True)
        root_of = roots[first]
        if drop_zero_square:
            keep = uniq != 0
            uniq, root_of = uniq[keep], root_of[keep]
        return uniq, root_of

    def indicator(self, indices) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        out[indices] = True
        return out

    def sumset(self, layer: np.ndarray, f_squares: np.ndarray) -> np.ndarray:
        """Indicator of layer + squares in (Z/p)^q, by FFT convolution."""
        f = np.fft.fftn(layer.reshape(self.shape).astype(np.float64))
        conv = np.fft.ifftn(f * f_squares).real
        return (conv > 0.5).reshape(-1)

    def minus(self, target: int, squares: np.ndarray) -> np.ndarray:
        """Indices of target - s for every square index s."""
        t = self.elems[target]
        diff = (t[None, :] - self.elems[squares]) % self.p
        return np.ravel_multi_index(tuple(diff.T), self.shape)

    def run(self, start: np.ndarray, squares: np.ndarray, target: int, max_layers: int):
        """Least j <= max_layers with target in start + (j - 1) x squares, plus the layers."""
        f_sq = np.fft.fftn(self.indicator(squares).reshape(self.shape).astype(np.float64))
        layers = [start]
        if start[target]:
            return 1, layers
        for j in range(2, max_layers + 1):
            nxt = self.sumset(layers[-1], f_sq)
            layers.append(nxt)
            if nxt[target]:
                return j, layers
            if np.array_equal(nxt, layers[-2]):
                break  # saturated; target unreachable
        return None, layers

    def backtrack(self, layers, squares, root_of, target: int) -> list[int]:
        """Root indices x_1..x_j with sum of squares equal to target, j = len(layers)."""
        roots = []
        cur = target
        for j in range(len(layers) - 1, 0, -1):
            prev = self.minus(cur, squares)
            hit = np.nonzero(layers[j - 1][prev])[0]
            if hit.size == 0:
                raise AssertionError("backtracking lost the witness")  # pragma: no cover
            h = int(hit[0])
            roots.append(int(root_of[h]))
            cur = int(prev[h])
        pos = np.searchsorted(squares, cur)
        if pos >= len(squares) or squares[pos] != cur:
            raise AssertionError("backtracking ended off the square set")  # pragma: no cover
        roots.append(int(root_of[pos]))
        return roots[::-1]


def level_bruteforce(A: CDAlgebra, max_n: int = 8, budget: int = 10**7):
    """(s, witness) with s the least n <= max_n such that -1 is a sum of n squares, or None."""
    tab = _FiniteAlgebraTables(A, budget)
    squares, root_of = tab.square_set(np.ones(tab.size, dtype=bool), drop_zero_square=False)
    target = tab.index_of([-1] + [0] * (tab.q - 1))
    n, layers = tab.run(tab.indicator(squares), squares, target, max_n)
    if n is None:
        return None
    witness = tuple(tab.element(i) for i in tab.backtrack(layers, squares, root_of, target))
    if not verify_level_witness(witness):
        raise AssertionError("level witness failed verification")  # pragma: no cover
    return n, witness


def sublevel_bruteforce(A: CDAlgebra, max_n: int = 8, budget: int = 10**7,
                        reading: SublevelReading = SublevelReading.LITERAL_NONZERO_SQUARE):
    """(s_, witness of n + 1 elements) with s_ the least n in 1..max_n, or None."""
    tab = _FiniteAlgebraTables(A, budget)
    reading = SublevelReading(reading)
    if reading is SublevelReading.LITERAL_NONZERO_SQUARE:
        mask = np.ones(tab.size, dtype=bool)
        squares, root_of = tab.square_set(mask, drop_zero_square=True)
    else:
        mask = np.ones(tab.size, dtype=bool)
        mask[0] = False
        squares, root_of = tab.square_set(mask, drop_zero_square=False)
    if squares.size == 0:
        return None
    f_sq = np.fft.fftn(tab.indicator(squares).reshape(tab.shape).astype(np.float64))
    layers = [tab.indicator(squares)]  # layers[j - 1]: sums of j squares
    n = None
    for j in range(2, max_n + 2):
        layers.append(tab.sumset(layers[-1], f_sq))
        if layers[-1][0]:
            n = j - 1
            break
        if np.array_equal(layers[-1], layers[-2]):
            break
    if n is None:
        return None
    witness = tuple(tab.element(i) for i in tab.backtrack(layers, squares, root_of, 0))
    if len(witness) != n + 1 or not verify_sublevel_witness(witness, reading):
        raise AssertionError("sublevel witness failed verification")  # pragma: no cover
    return n, witness


# ---------------------------------------------------------------------------
# Isotropy criteria
# ---------------------------------------------------------------------------


def _decide(phi: DiagonalForm, config: Optional[RunConfig], what: str) -> IsotropyVerdict:
    kwargs = (config or RunConfig()).decide_kwargs
    verdict = decide_isotropy(phi, **kwargs)
    if verdict.status is Status.UNKNOWN:
        raise UnknownVerdictError(f"{what}: isotropy of {phi} undecided ({verdict.diagnostic})", verdict)
    return verdict


def _ones(A: CDAlgebra, n: int) -> DiagonalForm:
    return DiagonalForm(A.field, (A.field.one(),) * n)


def level_form(A: CDAlgebra, n: int) -> DiagonalForm:
    """<1> + n x T_P."""
    return perp(_ones(A, 1), times(n, A.pure_trace_form()))


def pow2_level_form(A: CDAlgebra, k: int, n: int) -> DiagonalForm:
    """(2^k + 1) x <1> + (n - 1) x T_P; just (2^k + 1) x <1> when n = 1."""
    ones = _ones(A, 2**k + 1)
    if n == 1:
        return ones
    return perp(ones, times(n - 1, A.pure_trace_form()))


def _pure(A: CDAlgebra, coords: Sequence[Scalar]) -> CDElement:
    return A.element([A.field.zero(), *coords])


def _split_blocks(values: Sequence, size: int) -> list[list]:
    return [list(values[i:i + size]) for i in range(0, len(values), size)]


def _witness_from_level_form(A: CDAlgebra, n: int, w: Sequence[Scalar]) -> Optional[tuple[CDElement, ...]]:
    """n pure-part elements with squares summing to -1 from a zero of <1> + n x T_P."""
    F = A.field
    tp = A.pure_trace_form().coeffs
    alpha, rest = F(w[0]), [F(x) for x in w[1:]]
    if alpha.is_zero():
        # n x T_P is isotropic, hence universal; move to a zero with alpha = 1
        coeffs = list(tp) * n
        i = next((i for i, x in enumerate(rest) if not x.is_zero()), None)
        if i is None:
            return None
        a = coeffs[i]
        lam = (F(-1) - a) / (F(2) * a * rest[i])
        rest = [lam * x for x in rest]
        rest[i] = rest[i] + 1
        alpha = F.one()
    blocks = _split_blocks([x / alpha for x in rest], len(tp))
    witness = _nonzero([_pure(A, b) for b in blocks])
    return witness if verify_level_witness(witness) else None


def level_upper_by_isotropy(A: CDAlgebra, n: int, config: Optional[RunConfig] = None) -> Optional[Certificate]:
    if n < 1:
        raise ValueError("n must be positive")
    phi = level_form(A, n)
    verdict = _decide(phi, config, "isotropy level bound")
    if not verdict.isotropic:
        return None
    witness = None
    if verdict.witness is not None:
        witness = _witness_from_level_form(A, n, verdict.witness)
    return Certificate(CertKind.ISOTROPY_CRITERION, "level", (1, n), "isotropy-level-bound",
                       f"{phi} is isotropic ({verdict.method})", phi, verdict.status, witness)


def sublevel_criterion(A: CDAlgebra, k: int, config: Optional[RunConfig] = None) -> Certificate:
    if A.t < 2 or k <= 1:
        raise HypothesisViolation(f"sublevel criterion needs t >= 2 and k > 1 (t = {A.t}, k = {k})")
    n = 2**k - 1
    phi = level_form(A, n)
    verdict = _decide(phi, config, "sublevel criterion")
    interval = (1, n) if verdict.isotropic else (n + 1, INF)
    rel = "isotropic" if verdict.isotropic else "anisotropic"
    return Certificate(CertKind.ISOTROPY_CRITERION, "sublevel", interval, "sublevel-isotropy-criterion",
                       f"{phi} is {rel} ({verdict.method})", phi, verdict.status)


def level_criterion_pow2(A: CDAlgebra, k: int, config: Optional[RunConfig] = None) -> Certificate:
    if k < A.t:
        raise HypothesisViolation(f"level criterion needs k >= t (t = {A.t}, k = {k})")
    n = 2**k
    phi = pow2_level_form(A, k, n)
    verdict = _decide(phi, config, "power-of-two level criterion")
    witness = None
    if verdict.isotropic and verdict.witness is not None:
        witness = constructive_witness(A, n, verdict.witness)
    interval = (1, n) if verdict.isotropic else (n + 1, INF)
    rel = "isotropic" if verdict.isotropic else "anisotropic"
    return Certificate(CertKind.ISOTROPY_CRITERION, "level", interval, "level-isotropy-criterion",
                       f"{phi} is {rel} ({verdict.method})", phi, verdict.status, witness)


def sublevel_to_level(sublevel: int) -> int:
    """Upper bound on the level implied by an exact sublevel."""
    if sublevel < 1:
        raise ValueError("sublevel must be positive")
    if sublevel == 1:
        return 2
    k = sublevel.bit_length()  # 2^(k-1) <= n < 2^k, k >= 2
    return 2**k - 1


def sublevel_to_level_certificate(sublevel: int) -> Certificate:
    bound = sublevel_to_level(sublevel)
    return Certificate(CertKind.SUBLEVEL_LEVEL_RELATION, "level", (1, bound), "sublevel-to-level",
                       f"sublevel {sublevel} gives level <= {bound}")


# -- constructive bound --------------------------------------------------------


def _dot(u, v):
    total = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        total = total + a * b
    return total


def _matmul(X, Y):
    cols = list(zip(*Y))
    return [[_dot(row, col) for col in cols] for row in X]


def _transpose(X):
    return [list(r) for r in zip(*X)]


def _scale_matrix(c, X):
    return [[c * x for x in row] for row in X]


def _similarity_matrix(u: list) -> Optional[list]:
    """Square matrix M with first row u and M M^T = |u|^2 I, for len(u) a power of two.

    Built recursively from the halves u = (a, b) as [[A, B], [C, D]].
    Returns None when both halves are isotropic vectors (possible over F_p).
    """
    if len(u) == 1:
        return [[u[0]]]
    if all(x.is_zero() for x in u):
        return [[x for x in u] for _ in u]
    h = len(u) // 2
    a, b = u[:h], u[h:]
    A, B = _similarity_matrix(a), _similarity_matrix(b)
    if A is None or B is None:
        return None
    na, nb = _dot(a, a), _dot(b, b)
    if not na.is_zero():
        C = _scale_matrix(-1 / na, _matmul(_matmul(A, _transpose(B)), A))
        D = A
    elif not nb.is_zero():
        C = B
        D = _scale_matrix(-1 / nb, _matmul(_matmul(B, _transpose(A)), B))
    else:
        return None
    M = [ra + rb for ra, rb in zip(A, B)] + [rc + rd for rc, rd in zip(C, D)]
    nu = na + nb
    gram = _matmul(M, _transpose(M))
    for i, row in enumerate(gram):
        for j, g in enumerate(row):
            if g != (nu if i == j else 0):
                return None
    return M


def constructive_witness(A: CDAlgebra, n: int, w: Sequence[Scalar]) -> Optional[tuple[CDElement, ...]]:
    """At most n elements whose squares sum to -1, from a zero of (2^k+1) x <1> + (n-1) x T_P.

    With V the value of the first 2^k coordinates u_1 under 2^k x <1>, one finds
    vectors y_j orthogonal to (u_1, 0, ...) of squared length V times the j-th
    column sum of squares, using the multiplicativity of 2^k x <1>.  Then
    sum_i (alpha y_1i / V + sum_j y_ji / V f_j)^2 = -1.  None if a degenerate
    configuration over F_p blocks the construction.
    """
    F = A.field
    k = two_adic_valuation(n)
    m = 2**k
    w = [F(x) for x in w]
    y1, alpha, tail = w[:m], w[m], w[m + 1:]
    q1 = A.dim - 1
    V = _dot(y1, y1)
    if all(x.is_zero() for x in y1):
        if n == 1:
            return None
        return _witness_from_level_form(A, n - 1, [alpha, *tail])
    if V.is_zero():
        # 2^k x <1> is isotropic: -1 is already a sum of 2^k - 1 square scalars
        i = next(i for i, x in enumerate(y1) if not x.is_zero())
        elems = _nonzero([A.scalar(x / y1[i]) for j, x in enumerate(y1) if j != i])
        return elems if elems and verify_level_witness(elems) else None
    M = _similarity_matrix(y1)
    if M is None:
        return None
    rows = _split_blocks(tail, q1)  # n - 1 copies of T_P
    ys = []
    for j in range(q1):
        xs = [F.zero()] + [rows[i][j] for i in range(n - 1)]
        y = []
        for block in _split_blocks(xs, m):
            y.extend(_matmul([block], M)[0])
        ys.append(y)
    y1_full = y1 + [F.zero()] * (n - m)
    elems = []
    for i in range(n):
        coords = [alpha * y1_full[i] / V] + [ys[j][i] / V for j in range(q1)]
        elems.append(A.element(coords))
    elems = _nonzero(elems)
    return elems if verify_level_witness(elems) else None


def constructive_level_bound(A: CDAlgebra, n: int, config: Optional[RunConfig] = None) -> Optional[Certificate]:
    if n < 1:
        raise ValueError("n must be positive")
    k = two_adic_valuation(n)
    phi = pow2_level_form(A, k, n)
    verdict = _decide(phi, config, "constructive level bound")
    if not verdict.isotropic:
        return None
    witness = None
    if verdict.witness is not None:
        witness = constructive_witness(A, n, verdict.witness)
    return Certificate(CertKind.ISOTROPY_CRITERION, "level", (1, n), "constructive-level-bound",
                       f"{phi} is isotropic ({verdict.method})", phi, verdict.status, witness)


# ---------------------------------------------------------------------------
# Dimension counts for A_t(n) and A_t'(n)
# ---------------------------------------------------------------------------


def prior_interval(n: int, t: int) -> LevelReport:
    """Prior level/sublevel intervals for A_t(n); the sublevel floor is clamped at 1."""
    if n < 1 or t < 2:
        raise ValueError("need n >= 1 and t >= 2")
    q = 2**t
    level = (n - n // q, n)
    sub_lo = n - (n + q - 1) // q
    sublevel = (max(1, sub_lo), n)
    detail = f"n = {n}, t = {t}: [n/2^t] = {n // q}, [(n + 2^t - 1)/2^t] = {(n + q - 1) // q}"
    certs = (
        Certificate(CertKind.REGISTRY, "level", level, "prior-interval-bounds", detail),
        Certificate(CertKind.REGISTRY, "sublevel", sublevel, "prior-interval-bounds",
                    detail + ("" if sub_lo >= 1 else "; lower end raised to 1 by definition")),
    )
    return LevelReport(level, sublevel, certs)


def dim_lhs(n: int, t: int) -> int:
    """dim((2^k + 1) x <1> + (n - 1) x T_P) with k = v2(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    k = two_adic_valuation(n)
    return 2**k + 1 + (n - 1) * (2**t - 1)


def dim_rhs(m: int, t: int) -> int:
    """dim(m x T_C) - 2^r + 1 with r = v2(m)."""
    if m < 1:
        raise ValueError("m must be positive")
    r = two_adic_valuation(m)
    return m * 2**t - 2**r + 1


def relation_holds(n: int, m: int, t: int) -> bool:
    return dim_lhs(n, t) > dim_rhs(m, t)


@dataclass(frozen=True)
class LeastMResult:
    l: Optional[int]
    interval: Interval
    report: LevelReport
    diagnostic: Optional[str] = None


def least_m_bound(n: int, t: int, scan: str = "down") -> LeastMResult:
    """Lower bound l for s_ and s of A_t'(n).

    The best bound is the largest m <= n for which the dimension inequality
    holds; the inequality is not monotone in m (it depends on v2(m)).
    ``scan`` selects the search direction, both give the same l.
    """
    if n < 1 or t < 2:
        raise ValueError("need n >= 1 and t >= 2")
    if scan == "down":
        l = next((m for m in range(n, 0, -1) if relation_holds(n, m, t)), None)
    elif scan == "up":
        l = None
        for m in range(1, n + 1):
            if relation_holds(n, m, t):
                l = m
    else:
        raise ValueError("scan must be 'up' or 'down'")
    diagnostic = None
    lo = l
    if l is None:
        diagnostic = f"NoSuchM: no m <= {n} satisfies dim_lhs > dim_rhs for t = {t}"
        lo = 1
    interval = (lo, n)
    k = two_adic_valuation(n)
    lhs = dim_lhs(n, t)
    rhs = dim_rhs(l, t) if l is not None else None
    detail = (f"dim((2^{k} + 1) x <1> + {n - 1} x T_P) = {lhs}"
              + (f" > dim({l} x T_C) - 2^{two_adic_valuation(l)} + 1 = {rhs}" if l is not None else "")
              + f"; upper end n = {n}")
    certs = tuple(
        Certificate(CertKind.DIMENSION_BOUND, target, interval, "essential-dimension-bound",
                    detail if diagnostic is None else diagnostic, lhs_dim=lhs, rhs_dim=rhs)
        for target in ("level", "sublevel")
    )
    return LeastMResult(l, interval, LevelReport(interval, interval, certs), diagnostic)


def essential_dimension_of_prime_form(n: int, t: int) -> int:
    """dim_es of (2^k + 1) x <1> + (n - 1) x T_P, with its first Witt index 1 from the registry."""
    return dim_es(dim_lhs(n, t), first_witt_index("prime-form", n=n, t=t))


def first_witt_index(form: str, n: int = 1, t: int = 2, k: int = 0, m: int = 1) -> int:
    """First Witt indices known from the literature (lower bound for the trace-form multiple).

    form: "level-form" for <1> + n x T_P, "prime-form" for (2^k + 1) x <1> + (n - 1) x T_P,
    "power-form" for 2^k x <1> + (n - 1) x T_P over the (t-1)-step algebra,
    "multiple-trace-form" for m x T_C (returns the lower bound 2^v2(m)).
    """
    if t < 2 and form != "multiple-trace-form":
        raise HypothesisViolation("first Witt index entries need t >= 2")
    if form in ("level-form", "prime-form"):
        return 1
    if form == "power-form":
        return 2**k
    if form == "multiple-trace-form":
        return 2 ** two_adic_valuation(m)
    raise ValueError(f"no registry entry for {form!r}")


# ---------------------------------------------------------------------------
# Registry of exact values over function fields of quadrics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactStatement:
    variant: Variant
    n: int
    t: int
    level: int
    sublevel: Optional[int]
    citation: str

    def certificates(self) -> tuple[Certificate, ...]:
        detail = CITATIONS[self.citation]
        certs = [Certificate(CertKind.REGISTRY, "level", (self.level, self.level), self.citation, detail)]
        if self.sublevel is not None:
            certs.append(Certificate(CertKind.REGISTRY, "sublevel", (self.sublevel, self.sublevel),
                                     self.citation, detail))
        return tuple(certs)


def _is_pow2(n: int) -> Optional[int]:
    return n.bit_length() - 1 if n > 0 and n & (n - 1) == 0 else None


def exact_values_registry(n: int, t: int, variant: Variant | str = Variant.PLAIN) -> Optional[ExactStatement]:
    """Literature values for A_t(n) or A_t'(n); a lookup, never a computation."""
    variant = Variant(variant)
    if n < 1 or t < 2:
        return None
    k = _is_pow2(n)
    if variant is Variant.PRIME:
        if k is not None and k >= 2:
            return ExactStatement(variant, n, t, n, n, "exact-power-of-two-prime-variant")
        return None
    if n <= 2**t - 1:
        return ExactStatement(variant, n, t, n, n, "exact-below-dimension")
    if n == 2**t:
        return ExactStatement(variant, n, t, n, n, "exact-at-dimension")
    if t >= 3 and k is not None and k >= 2:
        return ExactStatement(variant, n, t, n, n, "exact-power-of-two")
    if t >= 3 and n >= 2 and _is_pow2(n - 1) is not None:
        return ExactStatement(variant, n, t, n, None, "exact-power-of-two-plus-one")
    return None


# ---------------------------------------------------------------------------
# Report assembly
# ---------------------------------------------------------------------------


def _intersect(certs: Sequence[Certificate], target: str) -> Interval:
    lo, hi = 1, INF
    for c in certs:
        if c.target != target:
            continue
        lo, hi = max(lo, c.interval[0]), min(hi, c.interval[1])
    if lo > hi:
        raise CertificateContradiction(f"{target} certificates have empty intersection: "
                                       + "; ".join(f"{c.citation} {c.interval}" for c in certs if c.target == target))
    return lo, hi


def assemble_report(certificates: Sequence[Certificate]) -> LevelReport:
    """Intersect certificate intervals; an empty intersection raises CertificateContradiction.

    Also checks that the sublevel's lower end does not exceed the level's upper end.
    """
    certs = list(certificates)
    level = _intersect(certs, "level")
    sublevel = _intersect(certs, "sublevel")
    if sublevel[0] > level[1]:
        raise CertificateContradiction(f"sublevel >= {sublevel[0]} but level <= {level[1]}")
    for target, interval in (("level", level), ("sublevel", sublevel)):
        ends = [c for c in certs if c.target == target]
        if not any(c.interval[0] == interval[0] for c in ends) or not any(c.interval[1] == interval[1] for c in ends):
            certs.append(Certificate(CertKind.REGISTRY, target, (1, INF), "definition", CITATIONS["definition"]))
    return LevelReport(level, sublevel, tuple(certs))


def brute_force_certificates(A: CDAlgebra, max_n: int = 8, config: Optional[RunConfig] = None) -> list[Certificate]:
    cfg = config or RunConfig()
    certs = []
    lv = level_bruteforce(A, max_n, cfg.enumeration_budget)
    if lv is not None:
        s, wit = lv
        certs.append(Certificate(CertKind.BRUTE_FORCE_WITNESS, "level", (s, s), "exhaustive search",
                                 f"-1 is a sum of {s} squares and of no fewer", witness=wit))
    else:
        certs.append(Certificate(CertKind.BRUTE_FORCE_WITNESS, "level", (max_n + 1, INF), "exhaustive search",
                                 f"-1 is not a sum of {max_n} or fewer squares"))
    sl = sublevel_bruteforce(A, max_n, cfg.enumeration_budget, cfg.sublevel_reading)
    if sl is not None:
        s, wit = sl
        certs.append(Certificate(CertKind.BRUTE_FORCE_WITNESS, "sublevel", (s, s), "exhaustive search",
                                 f"0 is a sum of {s + 1} nonzero squares and of no fewer "
                                 f"(reading: {cfg.sublevel_reading})", witness=wit))
        certs.append(sublevel_to_level_certificate(s))
    else:
        certs.append(Certificate(CertKind.BRUTE_FORCE_WITNESS, "sublevel", (max_n + 1, INF), "exhaustive search",
                                 f"0 is not a sum of {max_n + 1} or fewer nonzero squares"))
    return certs


@dataclass
class CriteriaRun:
    certificates: list[Certificate] = field(default_factory=list)
    unknown: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)


def criteria_certificates(A: CDAlgebra, max_n: int = 4, config: Optional[RunConfig] = None,
                          max_k: Optional[int] = None) -> CriteriaRun:
    """Every applicable isotropy criterion for n <= max_n and k <= max_k."""
    run = CriteriaRun()
    if max_k is None:
        max_k = max(A.t, max(2, max_n.bit_length()))

    def attempt(label, fn, *args):
        try:
            cert = fn(A, *args, config)
        except UnknownVerdictError as exc:
            run.unknown.append(f"{label}: {exc}")
            return
        except HypothesisViolation as exc:
            run.skipped.append(f"{label}: {exc}")
            return
        if cert is not None:
            run.certificates.append(cert)

    for n in range(1, max_n + 1):
        attempt(f"isotropy-level-bound n={n}", level_upper_by_isotropy, n)
        attempt(f"constructive-level-bound n={n}", constructive_level_bound, n)
    for k in range(2, max_k + 1):
        attempt(f"sublevel-isotropy-criterion k={k}", sublevel_criterion, k)
    for k in range(A.t, max_k + 1):
        attempt(f"level-isotropy-criterion k={k}", level_criterion_pow2, k)
    return run


def registry_report(n: int, t: int, variant: Variant | str = Variant.PLAIN) -> LevelReport:
    """Registry exact value (if any) intersected with the dimension-count interval."""
    variant = Variant(variant)
    if variant is Variant.PLAIN:
        base = prior_interval(n, t)
        certs = list(base.certificates)
    else:
        certs = list(least_m_bound(n, t).report.certificates)
    stmt = exact_values_registry(n, t, variant)
    if stmt is not None:
        certs.extend(stmt.certificates())
    return assemble_report(certs)


__all__ = [
    "INF", "CITATIONS", "CertKind", "Variant", "Certificate", "LevelReport", "level_bruteforce",
    "sublevel_bruteforce", "level_upper_by_isotropy", "sublevel_criterion", "level_criterion_pow2",
    "sublevel_to_level", "sublevel_to_level_certificate", "constructive_level_bound", "constructive_witness",
    "prior_interval", "dim_lhs", "dim_rhs", "least_m_bound", "exact_values_registry", "assemble_report",
    "brute_force_certificates", "criteria_certificates", "registry_report", "verify_level_witness",
    "verify_sublevel_witness", "first_witt_index", "level_form", "pow2_level_form",
]
