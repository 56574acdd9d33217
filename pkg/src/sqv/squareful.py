"""Squareful (powerful) numbers: recognition, enumeration, counting.

A positive integer is squareful when every prime in its factorization
appears with exponent >= 2; equivalently when it can be written as
s^2 * t^3 with t squarefree, and that representation is unique.  1 is
squareful (empty factorization).
"""

from dataclasses import dataclass
from math import isqrt, sqrt

import numpy as np

from .arith import _SMALL_PRIMES, factorize
from .bitmap import PackedBitmap
from .errors import DomainError, ParameterError, ResourceBudgetError

# Largest sieve limit built by default: packed bitmap of 1 bit per integer,
# i.e. limit/8 bytes (150 MB at the cap).  Raise via the max_limit argument.
DEFAULT_SIEVE_BUDGET = 1_200_000_000

_TRIAL_CUTOFF = 30_000  # beyond cutoff^3, fall back to full factorization


def is_squareful(n: int) -> bool:
    """True iff every prime exponent of n is >= 2 (n = 1 qualifies).

    Early-exit trial division: any prime dividing n exactly once rejects
    immediately.  Once the trial bound passes the cube root of the
    remaining cofactor, that cofactor has at most two prime factors and is
    squareful iff it is 1 or a perfect square.
    """
    if n < 1:
        raise ParameterError(f"is_squareful needs n >= 1, got {n}")
    m = n
    for p in _SMALL_PRIMES:
        if p > _TRIAL_CUTOFF or p * p * p > m:
            break
        if m % p == 0:
            m //= p
            if m % p:
                return False
            m //= p
            while m % p == 0:
                m //= p
    if m == 1:
        return True
    if m <= _TRIAL_CUTOFF ** 3:
        # at most two prime factors remain, both above the trial bound
        r = isqrt(m)
        return r * r == m
    return all(e >= 2 for _, e in factorize(m).factors)


def _squarefree_flags(limit: int) -> np.ndarray:
    """Bool array sf[0..limit] with sf[b] = True iff b is squarefree."""
    sf = np.ones(limit + 1, dtype=bool)
    sf[0] = False
    for p in range(2, isqrt(limit) + 1):
        sf[p * p:: p * p] = False
    return sf


@dataclass(frozen=True)
class SquarefulSieve:
    """Membership bitmap of squareful numbers on [1, limit]."""

    limit: int
    bits: PackedBitmap
    count: int
    members: np.ndarray  # sorted int64 array, redundant with bits but handy

    def __contains__(self, n: int) -> bool:
        return self.bits.test(n)


def build_sieve(x: int, max_limit: int = DEFAULT_SIEVE_BUDGET) -> SquarefulSieve:
    """Enumerate all squareful numbers <= x into a packed bitmap.

    Generates a^2 * b^3 <= x over squarefree b only, so every squareful
    number is produced exactly once (uniqueness of the s^2 t^3 form) and no
    dedup pass is needed.  Memory: the packed bitmap (x/8 bytes) plus the
    member list (~2.18 sqrt(x) entries).
    """
    if x < 1:
        raise ParameterError(f"build_sieve needs x >= 1, got {x}")
    if x > max_limit:
        raise ResourceBudgetError(
            f"sieve limit {x} exceeds budget {max_limit}; pass max_limit to override"
        )
    bmax = int(round(x ** (1 / 3))) + 2
    while bmax ** 3 > x:
        bmax -= 1
    sf = _squarefree_flags(max(bmax, 1))
    out = []
    for b in range(1, bmax + 1):
        if not sf[b]:
            continue
        b3 = b * b * b
        amax = isqrt(x // b3)
        if amax:
            a = np.arange(1, amax + 1, dtype=np.int64)
            out.append(a * a * b3)
    members = np.sort(np.concatenate(out)) if out else np.array([], dtype=np.int64)
    bits = PackedBitmap.from_members(x, members)
    count = int(members.size)
    assert bits.count() == count
    return SquarefulSieve(limit=x, bits=bits, count=count, members=members)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """The unique (s, t) with n = s^2 * t^3 and t squarefree."""

    s: int
    t: int


def decompose(n: int) -> CanonicalDecomposition:
    """Split a squareful n as s^2 * t^3 with t squarefree.

    t collects exactly the primes of odd exponent; raises DomainError when
    n is not squareful.
    """
    if n < 1:
        raise ParameterError(f"decompose needs n >= 1, got {n}")
    fac = factorize(n)
    t = 1
    for p, e in fac.factors:
        if e < 2:
            raise DomainError(f"{n} is not squareful (prime {p} has exponent {e})")
        if e & 1:
            t *= p
    s = isqrt(n // t ** 3)
    assert s * s * t ** 3 == n
    return CanonicalDecomposition(s=s, t=t)


def zeta_series(s: float, terms: int = 10_000) -> float:
    """Riemann zeta via a partial sum plus Euler-Maclaurin tail corrections.

    With N = terms, the truncation error is far below 1e-12 for s >= 1.5,
    so the result is good to at least 10 decimal digits.
    """
    if s <= 1:
        raise ParameterError("zeta_series needs s > 1")
    N = terms
    acc = 0.0
    for n in range(N, 0, -1):  # ascending magnitude for float accuracy
        acc += n ** -s
    acc += N ** (1 - s) / (s - 1)
    acc -= 0.5 * N ** -s
    acc += s / 12.0 * N ** -(s + 1)
    acc -= s * (s + 1) * (s + 2) / 720.0 * N ** -(s + 3)
    return acc


def density_constant() -> float:
    """zeta(3/2)/zeta(3), the constant in k(x) ~ const * sqrt(x)."""
    return zeta_series(1.5) / zeta_series(3.0)


@dataclass(frozen=True)
class AsymptoticReport:
    count: int
    ratio: float  # k(x) / sqrt(x)
    reference: float  # zeta(3/2)/zeta(3)


def asymptotic_report(x: int, sieve: SquarefulSieve = None) -> AsymptoticReport:
    """Exact k(x), the normalized ratio k(x)/sqrt(x), and the limit constant."""
    if x < 4:
        raise ParameterError(f"asymptotic_report needs x >= 4, got {x}")
    if sieve is None or sieve.limit != x:
        sieve = build_sieve(x)
    return AsymptoticReport(
        count=sieve.count,
        ratio=sieve.count / sqrt(x),
        reference=density_constant(),
    )
