"""Integer helpers: primality, trial-division factoring, residues, Hilbert symbols."""

from __future__ import annotations

from math import isqrt

DEFAULT_FACTOR_BOUND = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    # Miller-Rabin with fixed bases; deterministic for n < 3.3e24
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def factor(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Factor ``|n|`` by trial division up to ``bound``.

    A leftover cofactor c is accepted as prime when c < bound**2; otherwise
    :class:`FactorizationBudgetExceeded` is raised.
    """
    from .errors import FactorizationBudgetExceeded

    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    step = 2
    while q <= bound and q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        if n < bound * bound or q * q > n:
            out[n] = out.get(n, 0) + 1
        elif is_perfect_square(n) and isqrt(n) < bound * bound:
            out[isqrt(n)] = out.get(isqrt(n), 0) + 2
        else:
            raise FactorizationBudgetExceeded(n, bound)
    return out


def squarefree_part(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """Signed square-free integer s with n = s * m**2."""
    if n == 0:
        raise ValueError("0 has no square class")
    s = -1 if n < 0 else 1
    for q, e in factor(n, bound).items():
        if e % 2:
            s *= q
    return s


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo the odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def least_nonresidue(p: int) -> int:
    z = 2
    while legendre(z, p) != -1:
        z += 1
    return z


def valuation(n: int, p: int) -> tuple[int, int]:
    """Return (v, u) with n = p**v * u and p not dividing u."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def two_adic_valuation(n: int) -> int:
    if n <= 0:
        raise ValueError("n must be positive")
    return (n & -n).bit_length() - 1


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol (a, b)_p for nonzero integers; p = 0 means the real place."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = valuation(a, p)
    beta, v = valuation(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_v = ((v - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_v = ((v * v - 1) // 8) % 2
        e = (eps_u * eps_v + alpha * om_v + beta * om_u) % 2
        return -1 if e else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    lu = legendre(u, p) if beta % 2 else 1
    lv = legendre(v, p) if alpha % 2 else 1
    return sign * lu * lv


def is_local_square(n: int, p: int) -> bool:
    """Whether the nonzero integer n is a square in Q_p (p = 0: in R)."""
    if p == 0:
        return n > 0
    v, u = valuation(n, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1
