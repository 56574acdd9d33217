"""Integer arithmetic primitives: primality, prime windows, quadratic symbols,
factorization, squarefree parts, and big-integer CRT.

All functions are pure; returned containers are immutable and safe to share.
"""

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from .errors import ParameterError

# Miller-Rabin witnesses proven deterministic for n < 3.317e24, which covers
# the full supported 64-bit range with margin.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 100_000


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (simple sieve, O(n) memory)."""
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


_SMALL_PRIMES = primes_upto(_TRIAL_LIMIT).tolist()


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Trial division by a handful of small primes, then Miller-Rabin with a
    fixed witness set that is deterministic for all n < 3.3e24 (in
    particular for the whole 64-bit range).
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeWindow:
    """All primes in the half-open window (lo, hi], in increasing order."""

    lo: int
    hi: int
    primes: tuple

    def __len__(self):
        return len(self.primes)


def sieve_window(lo: int, hi: int, segment_size: int = 1 << 20) -> PrimeWindow:
    """Primes in (lo, hi], sieved segment by segment.

    Memory is O(segment_size + sqrt(hi)), independent of hi - lo.
    """
    if not (2 <= lo < hi):
        raise ParameterError(f"need 2 <= lo < hi, got lo={lo}, hi={hi}")
    base = primes_upto(isqrt(hi))
    out = []
    start = lo + 1
    while start <= hi:
        stop = min(start + segment_size - 1, hi)
        seg = np.ones(stop - start + 1, dtype=bool)
        for p in base:
            p = int(p)
            first = max(p * p, (start + p - 1) // p * p)
            if first > stop:
                continue
            seg[first - start:: p] = False
        if start <= 1:
            seg[: 2 - start] = False
        out.extend((np.flatnonzero(seg) + start).tolist())
        start = stop + 1
    return PrimeWindow(lo=lo, hi=hi, primes=tuple(out))


def quadratic_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n); Jacobi for odd positive n, Legendre for odd prime n.

    Conventions: (a/2) is 0 for even a, +1 for a = +-1 (mod 8), -1 for
    a = +-3 (mod 8); (a/-1) is +1 for a >= 0 and -1 for a < 0; (a/1) = 1.
    The result is 0 exactly when gcd(a, n) > 1.
    """
    if n == 0:
        raise ParameterError("quadratic_symbol undefined for modulus 0")
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        t = (n & -n).bit_length() - 1
        n >>= t
        if t & 1 and a & 7 in (3, 5):
            res = -res
    a %= n
    while a:
        while a % 2 == 0:
            a >>= 1
            if n & 7 in (3, 5):
                res = -res
        a, n = n, a
        if a & 3 == 3 and n & 3 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ((p1, e1), (p2, e2), ...) with p1 < p2 < ..."""

    factors: tuple

    def product(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p ** e
        return n


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite n (deterministic Brent cycle search)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to factor {n}")  # pragma: no cover


def _factor_into(n: int, acc: dict):
    """Accumulate the factorization of n (> 1, no factors <= _TRIAL_LIMIT)."""
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        # perfect square: factor the root once and double its exponents
        tmp: dict = {}
        _factor_into(r, tmp)
        for p, e in tmp.items():
            acc[p] = acc.get(p, 0) + 2 * e
        return
    d = _brent_rho(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1 (empty for n = 1).

    Trial division by primes up to 1e5, a perfect-square shortcut, then
    Brent's rho for any remaining composite cofactor.
    """
    if n < 1:
        raise ParameterError(f"factorize needs n >= 1, got {n}")
    acc: dict = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            acc[p] = e
    if m > 1:
        if m <= _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            acc[m] = acc.get(m, 0) + 1
        else:
            _factor_into(m, acc)
    return Factorization(factors=tuple(sorted(acc.items())))


def squarefree_part(n: int) -> int:
    """Product of the primes dividing n to an odd power.

    The result t is squarefree and n / t is a perfect square.
    """
    if n < 1:
        raise ParameterError(f"squarefree_part needs n >= 1, got {n}")
    t = 1
    for p, e in factorize(n).factors:
        if e & 1:
            t *= p
    return t


def is_squarefree(n: int) -> bool:
    """True iff no prime divides n twice."""
    if n < 1:
        raise ParameterError(f"is_squarefree needs n >= 1, got {n}")
    return squarefree_part(n) == n


def crt_combine(congruences) -> tuple:
    """Solve a system u = r_i (mod m_i) with pairwise coprime moduli m_i >= 2.

    Returns (u, P) with P the product of the moduli and 0 <= u < P.
    Arbitrary precision: P may have thousands of bits.  Raises
    ParameterError naming an offending pair if two moduli share a factor.
    """
    pairs = [(int(r), int(m)) for r, m in congruences]
    if not pairs:
        raise ParameterError("crt_combine needs at least one congruence")
    for _, m in pairs:
        if m < 2:
            raise ParameterError(f"modulus {m} < 2")
    u, P = 0, 1
    for i, (r, m) in enumerate(pairs):
        if gcd(P, m) != 1:
            for j in range(i):
                if gcd(pairs[j][1], m) != 1:
                    raise ParameterError(
                        f"moduli not coprime: {pairs[j][1]} (index {j}) and {m} (index {i})"
                    )
        diff = (r - u) % m
        u += P * (diff * pow(P % m, -1, m) % m)
        P *= m
    return u % P, P
