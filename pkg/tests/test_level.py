import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from cdlevel.cdalgebra import brown_algebra, construct, multiply_recursive
from cdlevel.config import RunConfig, SublevelReading
from cdlevel.errors import (
    CertificateContradiction,
    EnumerationBudgetExceeded,
    HypothesisViolation,
    WrongFieldError,
)
from cdlevel.fields import QQ, prime_field
from cdlevel.level import (
    INF,
    CertKind,
    Certificate,
    Variant,
    assemble_report,
    brute_force_certificates,
    constructive_level_bound,
    constructive_witness,
    criteria_certificates,
    dim_lhs,
    dim_rhs,
    essential_dimension_of_prime_form,
    exact_values_registry,
    first_witt_index,
    least_m_bound,
    level_bruteforce,
    level_criterion_pow2,
    level_form,
    level_upper_by_isotropy,
    pow2_level_form,
    prior_interval,
    registry_report,
    sublevel_bruteforce,
    sublevel_criterion,
    sublevel_to_level,
    verify_level_witness,
    verify_sublevel_witness,
)
from cdlevel.quadform import evaluate

F3, F5, F7 = prime_field(3), prime_field(5), prime_field(7)


# -- naive oracle ------------------------------------------------------------------


def _oracle(A, max_n, reading=None):
    """(level, sublevel) by plain set arithmetic over all elements, squares via the doubling recursion."""
    elems = list(A.elements())
    sq = [multiply_recursive(x, x).raw for x in elems]
    p = A.field.p
    add = lambda u, v: tuple((a + b) % p for a, b in zip(u, v))  # noqa: E731
    zero = tuple([0] * A.dim)
    minus_one = tuple([p - 1] + [0] * (A.dim - 1))

    all_sq = set(sq)
    level, reach = None, set(all_sq)
    for n in range(1, max_n + 1):
        if minus_one in reach:
            level = n
            break
        reach = {add(u, v) for u in reach for v in all_sq}

    if reading is SublevelReading.NONZERO_ELEMENT:
        terms = {s for x, s in zip(elems, sq) if any(x.raw)}
    else:
        terms = {s for s in sq if s != zero}
    sublevel, reach = None, set(terms)
    for n in range(1, max_n + 1):
        reach = {add(u, v) for u in reach for v in terms}
        if zero in reach:
            sublevel = n
            break
    return level, sublevel


SMALL = [
    (F3, (1,)), (F3, (2,)), (F5, (2,)), (F7, (3,)), (F7, (6,)),
    (F3, (1, 1)), (F3, (2, 2)), (F3, (1, 2)), (F5, (2, 3)), (F5, (1, 1)),
]


@pytest.mark.parametrize("F,gammas", SMALL, ids=lambda v: str(v))
@pytest.mark.parametrize("reading", list(SublevelReading))
def test_bruteforce_matches_naive_oracle(F, gammas, reading):
    A = construct(F, gammas)
    level, sublevel = _oracle(A, 4, reading)
    lv = level_bruteforce(A, 4)
    sl = sublevel_bruteforce(A, 4, reading=reading)
    assert (lv and lv[0]) == level
    assert (sl and sl[0]) == sublevel
    if lv:
        assert verify_level_witness(lv[1]) and len(lv[1]) == level
    if sl:
        assert verify_sublevel_witness(sl[1], reading) and len(sl[1]) == sublevel + 1


def test_bruteforce_matches_oracle_octonions_f3():
    A = construct(F3, (1, 2, 2))
    level, sublevel = _oracle(A, 2)
    assert (level_bruteforce(A, 2) or (None,))[0] == level
    assert (sublevel_bruteforce(A, 2) or (None,))[0] == sublevel


def test_bruteforce_examples():
    A = construct(F3, (1, 1))
    s, wit = level_bruteforce(A)
    assert s == 1 and wit[0] == A.basis(3)
    s, wit = sublevel_bruteforce(A)
    assert s == 1 and len(wit) == 2
    assert level_bruteforce(construct(F5, (1, 1)))[0] == 1
    assert sublevel_bruteforce(construct(F5, (1, 1)))[0] == 1
    assert level_bruteforce(construct(F3, (-1, -1)))[0] == 1


def test_bruteforce_budget_and_field():
    with pytest.raises(EnumerationBudgetExceeded):
        level_bruteforce(construct(F7, (1, 1, 1)), budget=1000)
    with pytest.raises(WrongFieldError):
        level_bruteforce(construct(QQ, (-1,)))


def test_witness_checks():
    A = construct(F3, (1, 1))
    assert verify_level_witness([A.basis(3)])
    assert not verify_level_witness([A.basis(1)])
    assert not verify_level_witness([])
    u = A.one() + A.basis(1)  # u^2 = 2u, nonzero, u is a zero divisor
    assert verify_sublevel_witness([A.basis(3), A.one()])
    assert not verify_sublevel_witness([A.one()])
    assert not verify_sublevel_witness([A.zero(), A.zero()], SublevelReading.NONZERO_ELEMENT)
    assert not (u * u).is_zero()


# -- isotropy criteria -------------------------------------------------------------------


def test_level_upper_by_isotropy_examples():
    A = construct(F3, (1, 1))
    c = level_upper_by_isotropy(A, 1)
    assert c.interval == (1, 1) and c.verify() and c.witness
    assert level_form(A, 1).coeffs == (1, 1, 1, -1)
    assert level_upper_by_isotropy(brown_algebra(2, QQ), 1) is None
    assert level_upper_by_isotropy(brown_algebra(2, QQ), 3) is None
    c = level_upper_by_isotropy(construct(QQ, (-1, -1)), 1)
    assert c.interval == (1, 1) and c.verify()


def test_sublevel_criterion_examples():
    c = sublevel_criterion(brown_algebra(2, QQ), 2)
    assert c.interval == (4, INF)
    c = sublevel_criterion(construct(F3, (1, 1)), 2)
    assert c.interval == (1, 3)
    assert sublevel_criterion(construct(QQ, (-1, -1)), 2).interval == (1, 3)
    with pytest.raises(HypothesisViolation):
        sublevel_criterion(construct(QQ, (-1,)), 2)
    with pytest.raises(HypothesisViolation):
        sublevel_criterion(construct(QQ, (-1, -1)), 1)


def test_level_criterion_pow2_examples():
    assert level_criterion_pow2(brown_algebra(2, QQ), 2).interval == (5, INF)
    c = level_criterion_pow2(construct(F3, (1, 1)), 2)
    assert c.interval == (1, 4) and c.verify()
    c = level_criterion_pow2(construct(QQ, (1, 1)), 2)
    assert c.interval == (1, 4)
    assert pow2_level_form(construct(QQ, (1, 1)), 2, 4).coeffs == (1,) * 5 + (1, 1, -1) * 3
    with pytest.raises(HypothesisViolation):
        level_criterion_pow2(construct(QQ, (1, 1, 1)), 2)


@pytest.mark.parametrize("s,bound", [(1, 2), (2, 3), (3, 3), (4, 7), (5, 7), (7, 7), (8, 15)])
def test_sublevel_to_level(s, bound):
    assert sublevel_to_level(s) == bound


def test_constructive_bound_examples():
    c = constructive_level_bound(construct(F3, (1, 1)), 2)
    assert c.interval == (1, 2) and c.witness and c.verify()
    assert pow2_level_form(construct(F3, (1, 1)), 1, 2).coeffs == (1, 1, 1) + (1, 1, -1)
    assert constructive_level_bound(brown_algebra(3, QQ), 6) is None
    assert constructive_level_bound(construct(QQ, (-1, -1)), 1) is None


def _random_zero(phi, rng):
    """A uniformly-ish random nonzero zero of a diagonal form over F_p, or None after many tries."""
    F = phi.field
    p = F.p
    c = [x.v for x in phi.coeffs]
    for _ in range(2000):
        v = [rng.randrange(p) for _ in c]
        i = rng.randrange(len(c))
        rest = sum(cj * vj * vj for j, (cj, vj) in enumerate(zip(c, v)) if j != i) % p
        target = (-rest * pow(c[i], -1, p)) % p
        roots = [x for x in range(p) if x * x % p == target]
        if not roots:
            continue
        v[i] = rng.choice(roots)
        if any(v):
            return [F(x) for x in v]
    return None


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from([5, 7, 11, 13]),
    st.lists(st.integers(1, 12), min_size=1, max_size=3),
    st.integers(2, 6),
    st.integers(0, 2**32),
)
def test_constructive_witness_from_random_zeros(p, gammas, n, seed):
    F = prime_field(p)
    A = construct(F, [g % p or 1 for g in gammas])
    k = (n & -n).bit_length() - 1
    phi = pow2_level_form(A, k, n)
    w = _random_zero(phi, random.Random(seed))
    if w is None:
        return
    assert evaluate(phi, w) == 0
    wit = constructive_witness(A, n, w)
    assert wit is not None
    assert 1 <= len(wit) <= n and verify_level_witness(wit)


def test_constructive_witness_degenerate_branches():
    A = construct(F5, (2, 3))
    # first block isotropic: 1^2 + 2^2 = 0 in F_5
    w = [F5(1), F5(2), F5(0)] + [F5(0)] * 3
    wit = constructive_witness(A, 2, w)
    assert wit and verify_level_witness(wit)
    # first block zero: a zero of <1> + T_P sits in the rest
    phi = level_form(A, 1)
    z = _random_zero(phi, random.Random(1))
    wit = constructive_witness(A, 2, [F5(0), F5(0)] + z)
    assert wit and verify_level_witness(wit)


# -- dimension counts --------------------------------------------------------------------------


def test_prior_interval_examples():
    r = prior_interval(34, 3)
    assert r.level_interval == (30, 34) and r.sublevel_interval == (29, 34)
    assert prior_interval(5, 3).level_interval == (5, 5)
    assert prior_interval(8, 3).level_interval == (7, 8)
    assert prior_interval(1, 2).sublevel_interval == (1, 1)
    with pytest.raises(ValueError):
        prior_interval(3, 1)


def test_dim_examples():
    assert dim_lhs(34, 3) == 234 == 2**8 - 2**5 + 2**3 + 2
    assert dim_rhs(32, 3) == 225
    assert dim_rhs(1, 2) == 4


def test_least_m_examples():
    r = least_m_bound(34, 3)
    assert r.l == 32 and r.interval == (32, 34) and r.diagnostic is None
    assert r.report.certificates[0].lhs_dim == 234 and r.report.certificates[0].rhs_dim == 225
    for t in range(2, 7):
        n = 2 ** (t + 2) + 2
        assert least_m_bound(n, t).interval == (2 ** (t + 2), n)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 300), st.integers(2, 6))
def test_least_m_scan_directions_agree(n, t):
    down, up = least_m_bound(n, t, "down"), least_m_bound(n, t, "up")
    assert down.l == up.l and down.interval == up.interval
    if down.l is not None:
        assert dim_lhs(n, t) > dim_rhs(down.l, t)
        assert all(dim_lhs(n, t) <= dim_rhs(m, t) for m in range(down.l + 1, n + 1))
    else:
        assert down.diagnostic.startswith("NoSuchM") and down.interval == (1, n)


def test_first_witt_index_and_essential_dimension():
    assert first_witt_index("level-form") == 1
    assert first_witt_index("power-form", k=3) == 8
    assert first_witt_index("multiple-trace-form", m=12) == 4
    assert essential_dimension_of_prime_form(34, 3) == 234 - 1 + 1
    with pytest.raises(ValueError):
        first_witt_index("other")


# -- registry and assembly -------------------------------------------------------------------


def test_registry_examples():
    e = exact_values_registry(6, 3, Variant.PLAIN)
    assert e.level == e.sublevel == 6 and e.citation == "exact-below-dimension"
    e = exact_values_registry(16, 4, "prime")
    assert e.level == e.sublevel == 16
    assert exact_values_registry(5, 2) is None
    assert exact_values_registry(9, 3).sublevel is None
    assert exact_values_registry(3, 3, Variant.PRIME) is None


@pytest.mark.parametrize("n,t", [(n, t) for t in (2, 3, 4) for n in range(1, 40)])
def test_registry_report_is_consistent(n, t):
    for variant in Variant:
        r = registry_report(n, t, variant)
        lo, hi = r.level_interval
        assert 1 <= lo <= hi <= n
        for target, iv in (("level", r.level_interval), ("sublevel", r.sublevel_interval)):
            ends = [c for c in r.certificates if c.target == target]
            assert any(c.interval[0] == iv[0] for c in ends) and any(c.interval[1] == iv[1] for c in ends)


def test_assemble_report_contradiction():
    a = Certificate(CertKind.REGISTRY, "level", (1, 3), "x")
    b = Certificate(CertKind.REGISTRY, "level", (5, INF), "y")
    with pytest.raises(CertificateContradiction):
        assemble_report([a, b])
    s = Certificate(CertKind.REGISTRY, "sublevel", (4, INF), "z")
    with pytest.raises(CertificateContradiction):
        assemble_report([a, s])
    r = assemble_report([a])
    assert r.level_interval == (1, 3) and r.sublevel_interval == (1, INF)
    assert any(c.citation == "definition" for c in r.certificates)
    with pytest.raises(ValueError):
        Certificate(CertKind.REGISTRY, "level", (0, 3))


@pytest.mark.parametrize("F,gammas", [(F3, (1, 1)), (F5, (2, 3)), (F7, (3, 5)), (F3, (2,))], ids=str)
def test_all_certificates_agree_with_bruteforce(F, gammas):
    A = construct(F, gammas)
    brute = brute_force_certificates(A, 6)
    crit = criteria_certificates(A, 4)
    assert not crit.unknown
    r = assemble_report(brute + crit.certificates)
    assert r.level is not None and r.sublevel is not None and r.sublevel <= r.level
    for c in brute + crit.certificates:
        value = r.level if c.target == "level" else r.sublevel
        assert c.interval[0] <= value <= c.interval[1]
        assert c.verify()


def test_config_reading_reaches_bruteforce():
    A = construct(F3, (1, 1))
    cfg = RunConfig(sublevel_reading=SublevelReading.NONZERO_ELEMENT)
    certs = brute_force_certificates(A, 4, cfg)
    assert any("nonzero_element" in c.detail for c in certs)


def test_criteria_records_skips():
    run = criteria_certificates(construct(F3, (1,)), 2)
    assert run.skipped and not run.unknown
    assert all(isinstance(c, Certificate) for c in run.certificates)


def test_small_levels_against_tuple_enumeration():
    """Tiny case checked by literally enumerating tuples of elements."""
    A = construct(F3, (2,))
    elems = list(A.elements())
    minus_one = A.scalar(-1)
    direct = next(n for n in itertools.count(1)
                  if any(sum((x * x for x in tup), A.zero()) == minus_one
                         for tup in itertools.product(elems, repeat=n)))
    assert level_bruteforce(A)[0] == direct
