"""Randomized construction of an interval free of sums of two squareful
numbers: sample disjoint obstruction prime sets covering every small
coefficient class, combine the congruences u + j = 0 (mod p) into a CRT
witness, then scan the residue class of u for a certified interval.

Parameter conventions: given a target interval length M, the prime window
is (N, 2N] with N = ceil(M^D), and each of the M sets has K = floor(B ln M)
elements (at least 1).  The theoretically motivated choices of D and B are
astronomically out of reach (they make N gigantic), so D, B and the
coefficient cap c_max are exposed as knobs with small defaults and runs in
the feasible regime report their success or failure honestly.
"""

from dataclasses import dataclass, replace
from math import ceil, floor, log

from .arith import crt_combine, is_prime, is_squarefree, quadratic_symbol, sieve_window, squarefree_part
from .errors import ConstructionError, DomainError, ParameterError
from .rng import SplitMix64
from .sumset import is_member

# Exact certification enumerates ~2.18 sqrt(n/2) squareful candidates per
# interval element; beyond this magnitude a scan is refused as infeasible.
DEFAULT_CERTIFY_LIMIT = 10 ** 12

DEFAULT_RETRY_BUDGET = 1000
DEFAULT_SCAN_BUDGET = 10 ** 6
DEFAULT_C_MAX_CAP = 50


@dataclass(frozen=True)
class ConstructionParams:
    M: int
    D: float
    B: float
    c_max: int
    N: int
    K: int
    retry_budget: int
    scan_budget: int
    seed: int
    window_size: int = 0  # measured |primes in (N, 2N]|


def derive_params(
    M: int,
    D: float = 3.0,
    B: float = 1.0,
    c_max: int = None,
    seed: int = 0,
    retry_budget: int = DEFAULT_RETRY_BUDGET,
    scan_budget: int = DEFAULT_SCAN_BUDGET,
) -> ConstructionParams:
    """Compute N = ceil(M^D) and K = max(1, floor(B ln M)) and check that the
    prime window (N, 2N] is large enough to hold M disjoint K-sets.

    c_max defaults to min(M^4, 50).  Raises ParameterError with the
    measured window size when K*M primes cannot fit.
    """
    if M < 2:
        raise ParameterError(f"M must be >= 2, got {M}")
    if D <= 0 or B <= 0:
        raise ParameterError(f"D and B must be positive, got D={D}, B={B}")
    if float(D).is_integer():
        N = M ** int(D)
    else:
        N = ceil(M ** float(D))
    K = max(1, floor(B * log(M)))
    if c_max is None:
        c_max = min(M ** 4, DEFAULT_C_MAX_CAP)
    if c_max < 1:
        raise ParameterError(f"c_max must be >= 1, got {c_max}")
    window = sieve_window(N, 2 * N)
    if K * M > len(window):
        raise ParameterError(
            f"infeasible: need {K * M} primes but ({N}, {2 * N}] holds only {len(window)}"
        )
    return ConstructionParams(
        M=M, D=float(D), B=float(B), c_max=c_max, N=N, K=K,
        retry_budget=retry_budget, scan_budget=scan_budget, seed=seed,
        window_size=len(window),
    )


def check_disjoint(sets) -> bool:
    """True iff no prime occurs in two of the sets."""
    seen = set()
    for s in sets:
        for p in s:
            if p in seen:
                return False
            seen.add(p)
    return True


def squarefree_values(c_max: int) -> tuple:
    """The squarefree integers in [1, c_max]."""
    return tuple(c for c in range(1, c_max + 1) if is_squarefree(c))


@dataclass(frozen=True)
class CoverageReport:
    failures: tuple  # ((c, j), ...) with j 1-based
    passed: bool


def check_coverage(sets, c_max: int) -> CoverageReport:
    """For every squarefree c <= c_max and every set j, verify that the set
    holds a prime p with (-c/p) = -1."""
    failures = []
    for c in squarefree_values(c_max):
        for j, s in enumerate(sets, start=1):
            if not any(quadratic_symbol(-c, p) == -1 for p in s):
                failures.append((c, j))
    return CoverageReport(failures=tuple(failures), passed=not failures)


@dataclass(frozen=True)
class ObstructionSystem:
    params: ConstructionParams
    sets: tuple  # M tuples of K primes each, each tuple sorted
    attempts_used: int
    disjoint_rejections: int = 0
    coverage_rejections: int = 0


def _draw_k_subset(rng: SplitMix64, primes: tuple, k: int) -> tuple:
    """Uniform K-subset by partial Fisher-Yates over the window indices."""
    n = len(primes)
    idx = list(range(n))
    for i in range(k):
        j = i + rng.next_below(n - i)
        idx[i], idx[j] = idx[j], idx[i]
    return tuple(sorted(primes[t] for t in idx[:k]))


def sample_system(params: ConstructionParams) -> ObstructionSystem:
    """Draw M independent K-subsets of the prime window until the family is
    pairwise disjoint and covers every squarefree c <= c_max.

    Rejection resamples the whole family from the continuing seed stream,
    so the result is a pure function of (params, seed).  Raises
    ConstructionError with rejection statistics when the retry budget is
    exhausted.
    """
    window = sieve_window(params.N, 2 * params.N)
    primes = window.primes
    if params.K * params.M > len(primes):
        raise ParameterError(
            f"infeasible: need {params.K * params.M} primes, window holds {len(primes)}"
        )
    cs = squarefree_values(params.c_max)
    # symbol cache: obstructs[c][p] for the window primes, filled lazily
    cache: dict = {}

    def covers(s, c):
        per_c = cache.setdefault(c, {})
        for p in s:
            hit = per_c.get(p)
            if hit is None:
                hit = per_c[p] = quadratic_symbol(-c, p) == -1
            if hit:
                return True
        return False

    rng = SplitMix64(params.seed)
    disjoint_rej = coverage_rej = 0
    for attempt in range(1, params.retry_budget + 1):
        sets = tuple(_draw_k_subset(rng, primes, params.K) for _ in range(params.M))
        if not check_disjoint(sets):
            disjoint_rej += 1
            continue
        if not all(covers(s, c) for s in sets for c in cs):
            coverage_rej += 1
            continue
        return ObstructionSystem(
            params=params, sets=sets, attempts_used=attempt,
            disjoint_rejections=disjoint_rej, coverage_rejections=coverage_rej,
        )
    raise ConstructionError(
        f"no admissible family in {params.retry_budget} attempts "
        f"({disjoint_rej} disjointness rejections, {coverage_rej} coverage rejections)",
        attempts=params.retry_budget,
        disjoint_rejections=disjoint_rej,
        coverage_rejections=coverage_rej,
    )


@dataclass(frozen=True)
class GapWitness:
    """CRT witness u mod P with p | (u + j) for every p in the j-th set,
    optionally extended by a certified interval start v = verified_start."""

    u: int
    P: int
    verified_start: int = None
    certificates: tuple = ()  # per-j RepresentationWitness when certified
    scan_offsets_tried: int = 0
    best_prefix_start: int = None
    best_prefix_len: int = 0
    failure_reason: str = None


def build_witness(system: ObstructionSystem) -> GapWitness:
    """Combine u + j = 0 (mod p) for all j and all p in the j-th set.

    P is the product of all K*M primes; the congruence is re-verified for
    every (j, p) pair after the CRT solve.
    """
    congruences = []
    for j, s in enumerate(system.sets, start=1):
        for p in s:
            congruences.append(((-j) % p, p))
    u, P = crt_combine(congruences)
    for j, s in enumerate(system.sets, start=1):
        for p in s:
            assert (u + j) % p == 0, (j, p)
    return GapWitness(u=u, P=P)


def obstruction_applies(p: int, a: int, b: int) -> tuple:
    """Whether the prime p obstructs representations with cube parts (a, b),
    and whether the obstruction actually holds.

    applies: the symbol (-c/p) is -1 for c = squarefree part of a*b.
    holds:   exhaustively over (x, y) in [0, p)^2, a^3 x^2 + b^3 y^2 = 0
             (mod p) forces x = y = 0.  Whenever applies is True, holds
             must be True: a nontrivial solution would exhibit -c as a
             square mod p.
    """
    if not is_prime(p) or p == 2:
        raise ParameterError(f"p must be an odd prime, got {p}")
    if a < 1 or b < 1:
        raise ParameterError(f"a, b must be positive, got a={a}, b={b}")
    if (a * b) % p == 0:
        raise DomainError(f"p = {p} divides ab = {a * b}")
    c = squarefree_part(a * b)
    applies = quadratic_symbol(-c, p) == -1
    a3 = pow(a, 3, p)
    b3 = pow(b, 3, p)
    nontrivial = False
    for x in range(p):
        lhs = a3 * x * x % p
        for y in range(p):
            if (lhs + b3 * y * y) % p == 0 and (x or y):
                nontrivial = True
                break
        if nontrivial:
            break
    holds = not nontrivial
    if applies:
        assert holds, (p, a, b)
    return applies, holds


def scan_and_certify(
    witness: GapWitness,
    system: ObstructionSystem,
    membership=is_member,
    scan_budget: int = None,
    certify_limit: int = DEFAULT_CERTIFY_LIMIT,
) -> GapWitness:
    """Walk v = u, u + P, u + 2P, ... and certify the first v whose interval
    [v + 1, v + M] has no sums of two squareful numbers.

    Certification calls the membership checker on every interval element
    and requires a complete (exhaustive) absence for each.  Magnitudes
    beyond certify_limit are refused rather than attempted: exact
    certification costs ~2.18 sqrt(v/2) candidates per element, which stops
    being computable long before the CRT modulus of any theoretically
    motivated parameter choice.  Failure is a result, not an exception; the
    returned witness carries the scan statistics and best prefix found.
    """
    M = system.params.M
    budget = system.params.scan_budget if scan_budget is None else scan_budget
    best_start = None
    best_len = 0
    tried = 0
    reason = None
    for t in range(budget):
        v = witness.u + t * witness.P
        if v + M > certify_limit:
            digits = len(str(v + M))
            reason = (
                f"offset {t}: v + M has {digits} digits, beyond the exact-"
                f"certification limit {certify_limit}"
            )
            break
        tried += 1
        certs = []
        for j in range(1, M + 1):
            w = membership(v + j)
            if w.is_member or not w.complete:
                break
            certs.append(w)
        if len(certs) > best_len:
            best_len = len(certs)
            best_start = v
        if len(certs) == M:
            return replace(
                witness,
                verified_start=v,
                certificates=tuple(certs),
                scan_offsets_tried=tried,
                best_prefix_start=v,
                best_prefix_len=M,
            )
    if reason is None:
        reason = f"no certified interval within {budget} offsets"
    return replace(
        witness,
        verified_start=None,
        certificates=(),
        scan_offsets_tried=tried,
        best_prefix_start=best_start,
        best_prefix_len=best_len,
        failure_reason=reason,
    )
