"""Real primitive characters via Kronecker symbols of fundamental
discriminants, obstruction-prime densities, and windowed Chebyshev psi sums.

For positive squarefree c the character attached to c is the Kronecker
symbol of the fundamental discriminant D of the field generated by
sqrt(-c):

    D = -c   when -c = 1 (mod 4),  else  D = -4c,

so the modulus q = |D| is at most 4c and the value at every odd prime
p not dividing 2c equals the Legendre symbol (-c/p).  This is the standard
construction of the primitive real character with that property.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .arith import PrimeWindow, is_squarefree, primes_upto, quadratic_symbol
from .errors import DomainError, ParameterError, ResourceBudgetError

# psi_window sieves up to 2x; bool sieve memory is 2x bytes.
PSI_BUDGET = 100_000_000


def is_fundamental_discriminant(D: int) -> bool:
    """True iff D is the discriminant of a quadratic field (1 counts, 0 not)."""
    if D == 0:
        return False
    if D == 1:
        return True
    if D % 4 == 1:
        return is_squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(abs(m))
    return False


def fundamental_discriminants(bound: int):
    """All fundamental discriminants D with 1 < |D| <= bound, by |D| then sign."""
    out = []
    for q in range(2, bound + 1):
        for D in (-q, q):
            if is_fundamental_discriminant(D):
                out.append(D)
    return out


@dataclass(frozen=True)
class RealCharacter:
    """Primitive real character of modulus q = |discriminant|.

    c is the positive squarefree coefficient the character was derived
    from, or None when built directly from a discriminant.
    """

    discriminant: int
    modulus: int
    c: int = None

    def value(self, n: int) -> int:
        """Character value at n (periodic mod q, 0 when gcd(n, q) > 1)."""
        m = n % self.modulus
        if m == 0:
            return 0
        return quadratic_symbol(self.discriminant, m)


def chi_c(c: int) -> RealCharacter:
    """The primitive real character whose value at odd p not dividing 2c
    is the Legendre symbol (-c/p); modulus q <= 4c."""
    if c < 1:
        raise ParameterError(f"chi_c needs c >= 1, got {c}")
    if not is_squarefree(c):
        raise DomainError(f"c = {c} is not squarefree")
    D = -c if (-c) % 4 == 1 else -4 * c
    return RealCharacter(discriminant=D, modulus=abs(D), c=c)


def from_discriminant(D: int) -> RealCharacter:
    """Character for an arbitrary fundamental discriminant (either sign).

    D = 1 (the principal character of modulus 1) is rejected: every
    statement this module checks concerns non-principal characters.
    """
    if D == 1:
        raise DomainError("D = 1 gives the principal character; not supported")
    if not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a fundamental discriminant")
    c = None
    if D < 0:
        c = -D if D % 4 == 1 else -D // 4
        if not (c >= 1 and is_squarefree(c) and (-c if (-c) % 4 == 1 else -4 * c) == D):
            c = None
    return RealCharacter(discriminant=D, modulus=abs(D), c=c)


@dataclass(frozen=True)
class ObstructionPrimes:
    """Primes p of a window with (-c/p) = -1, plus their density."""

    c: int
    window: PrimeWindow
    primes: tuple
    density: Fraction


def residue_set(c: int, window: PrimeWindow) -> ObstructionPrimes:
    """Filter a prime window down to the primes with (-c/p) = -1.

    Primes dividing 2c have symbol 0 and are never included.
    """
    if len(window) == 0:
        raise ParameterError("window is empty")
    sel = tuple(p for p in window.primes if quadratic_symbol(-c, p) == -1)
    return ObstructionPrimes(
        c=c, window=window, primes=sel, density=Fraction(len(sel), len(window))
    )


@dataclass(frozen=True)
class DensityRow:
    c: int
    count: int
    density: Fraction
    passed: bool


@dataclass(frozen=True)
class DensityReport:
    rows: tuple
    threshold: Fraction
    all_pass: bool


def density_check(c_max: int, window: PrimeWindow, threshold=Fraction(45, 100)) -> DensityReport:
    """Per squarefree c <= c_max: density of (-c/p) = -1 in the window,
    compared against the threshold (pass iff density >= threshold)."""
    thr = Fraction(threshold)
    if not 0 < thr <= 1:
        raise ParameterError(f"threshold must be in (0, 1], got {threshold}")
    if c_max < 1:
        raise ParameterError(f"c_max must be >= 1, got {c_max}")
    rows = []
    for c in range(1, c_max + 1):
        if not is_squarefree(c):
            continue
        rs = residue_set(c, window)
        rows.append(
            DensityRow(c=c, count=len(rs.primes), density=rs.density, passed=rs.density >= thr)
        )
    return DensityReport(rows=tuple(rows), threshold=thr, all_pass=all(r.passed for r in rows))


@dataclass(frozen=True)
class PsiWindowReport:
    x: int
    value: float  # psi(2x; chi) - psi(x; chi)
    bound: float  # 0.1 * x
    passed: bool  # value <= bound
    terms: int  # prime powers in (x, 2x]


def psi_window(x: int, chi: RealCharacter) -> PsiWindowReport:
    """Sum of Lambda(n) chi(n) over x < n <= 2x by direct enumeration.

    Lambda is the von Mangoldt function (ln p at prime powers p^k, else 0);
    prime powers are enumerated for all k >= 1.  Accumulation uses Kahan
    compensated summation, keeping the result accurate to ~1e-9 relative.
    """
    if x < 100:
        raise ParameterError(f"psi_window needs x >= 100, got {x}")
    if 2 * x > PSI_BUDGET:
        raise ResourceBudgetError(f"2x = {2 * x} over enumeration budget {PSI_BUDGET}")
    total = 0.0
    comp = 0.0
    terms = 0
    for p in primes_upto(2 * x).tolist():
        lp = log(p)
        q = p
        while q <= 2 * x:
            if q > x:
                terms += 1
                term = chi.value(q) * lp
                y = term - comp
                t = total + y
                comp = (t - total) - y
                total = t
            q *= p
    return PsiWindowReport(x=x, value=total, bound=0.1 * x, passed=total <= 0.1 * x, terms=terms)
