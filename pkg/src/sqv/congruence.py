"""Exact solution counts for A x^2 + B y^2 = u (mod P), squarefree P.

Per odd prime p with gcd(AB, p) = 1 the count has a closed form in terms
of the Legendre symbol chi = (-AB/p):

    p | u:   S_p = p + chi * (p - 1)
    p ! u:   S_p = p - chi

(both branches verified exhaustively against enumeration; see the tests).
For squarefree P the total count is the product of the per-prime counts.
When gcd(u, P) = 1 every S_p is at most p + 1, so the count is bounded by
sigma_1(P) = prod (p + 1); when some p | u the bound can fail (S_p can
reach 2p - 1), which the result flags via bound_applicable.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .arith import factorize, quadratic_symbol
from .errors import DomainError, ParameterError, ResourceBudgetError

BRUTE_FORCE_BUDGET = 30_000


@dataclass(frozen=True)
class CongruenceInstance:
    A: int
    B: int
    u: int
    P: int


@dataclass(frozen=True)
class CountResult:
    count: int
    per_prime: tuple  # ((p, S_p), ...)
    sigma_bound: int  # sigma_1(P)
    bound_applicable: bool  # gcd(u, P) == 1


def sigma1(P: int) -> int:
    """Divisor sum sigma_1(P); for squarefree P this is prod (p + 1)."""
    if P < 1:
        raise ParameterError(f"sigma1 needs P >= 1, got {P}")
    total = 1
    for p, e in factorize(P).factors:
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def count_mod_prime(A: int, B: int, u: int, p: int) -> int:
    """Number of pairs (x, y) in [0, p)^2 with A x^2 + B y^2 = u (mod p).

    Requires p prime and gcd(AB, p) = 1 (the closed form is invalid
    otherwise).  p = 2 is enumerated directly.
    """
    if gcd(A * B, p) != 1:
        raise DomainError(f"closed form needs gcd(AB, p) = 1, got A={A}, B={B}, p={p}")
    if p == 2:
        return sum(
            1 for x in range(2) for y in range(2) if (A * x * x + B * y * y - u) % 2 == 0
        )
    chi = quadratic_symbol(-A * B, p)
    if u % p == 0:
        return p + chi * (p - 1)
    return p - chi


def count_mod_squarefree(instance: CongruenceInstance) -> CountResult:
    """Exact count modulo squarefree P via per-prime counts and CRT.

    Validates that P is squarefree and coprime to AB; the sigma_1 bound is
    asserted whenever gcd(u, P) = 1 and only flagged otherwise.
    """
    A, B, u, P = instance.A, instance.B, instance.u, instance.P
    if P < 1:
        raise ParameterError(f"modulus must be >= 1, got {P}")
    fac = factorize(P).factors
    if any(e > 1 for _, e in fac):
        raise DomainError(f"modulus {P} is not squarefree")
    if gcd(A * B, P) != 1:
        raise DomainError(f"need gcd(AB, P) = 1, got gcd={gcd(A * B, P)}")
    per_prime = tuple((p, count_mod_prime(A, B, u, p)) for p, _ in fac)
    count = 1
    for _, s in per_prime:
        count *= s
    bound = sigma1(P)
    applicable = gcd(u, P) == 1
    if applicable:
        assert count <= bound, (instance, count, bound)
    return CountResult(
        count=count, per_prime=per_prime, sigma_bound=bound, bound_applicable=applicable
    )


def brute_force_count(A: int, B: int, u: int, P: int) -> int:
    """Oracle count by exhaustive enumeration of all x and all y mod P.

    No structural assumptions: P may be anything >= 1, gcd(AB, P) > 1 is
    fine.  The pairing over (x, y) is organized as two residue histograms
    plus a convolution, which counts exactly the same pairs as the literal
    double loop at O(P) instead of O(P^2) cost (the double-loop equivalence
    is itself covered by a test).
    """
    if P < 1:
        raise ParameterError(f"modulus must be >= 1, got {P}")
    if P > BRUTE_FORCE_BUDGET:
        raise ResourceBudgetError(f"P={P} over exhaustive budget {BRUTE_FORCE_BUDGET}")
    x = np.arange(P, dtype=np.int64)
    sq = x * x % P
    ca = np.bincount((A % P) * sq % P, minlength=P)
    cb = np.bincount((B % P) * sq % P, minlength=P)
    idx = (u % P - x) % P
    return int(ca @ cb[idx])
