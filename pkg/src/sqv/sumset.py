"""Sums of two squareful numbers: membership bitmap, gap statistics,
single-number membership with witnesses, and count/comparison tables.

The sumset here requires both summands >= 1 (squareful numbers are
positive); the classical two-squares set used for comparison allows 0 as a
summand, so it is not a subset relation in either direction by accident -
the asymmetry is deliberate.
"""

from dataclasses import dataclass
from math import isqrt, log, sqrt

import numpy as np

from .bitmap import PackedBitmap
from .errors import ParameterError, ResourceBudgetError
from .squareful import SquarefulSieve, build_sieve, is_squareful

# Exponent in the count normalization V(x) * (ln x)^ALPHA / x.
ALPHA = 1.0 - 2.0 ** (-1.0 / 3.0)

# Constant in the density of sums of two squares, K x / sqrt(ln x).
LANDAU_RAMANUJAN = 0.7642236535892206

# Temporary bool scratch array costs limit bytes; cap it by default.
DEFAULT_SUMSET_BUDGET = 300_000_000


@dataclass(frozen=True)
class SumsetBitmap:
    """Membership bitmap of {s1 + s2 : s1, s2 squareful} on [1, limit]."""

    limit: int
    bits: PackedBitmap
    count: int

    def __contains__(self, n: int) -> bool:
        return self.bits.test(n)


def build_sumset(
    x: int,
    sieve: SquarefulSieve = None,
    max_limit: int = DEFAULT_SUMSET_BUDGET,
) -> SumsetBitmap:
    """Exact membership bitmap for sums of two squareful numbers <= x.

    Marks s1 + s2 over ordered pairs s1 <= s2 from the squareful sieve;
    each sum is produced at least once, so the bitmap is exact.
    """
    if x < 2:
        raise ParameterError(f"build_sumset needs x >= 2, got {x}")
    if x > max_limit:
        raise ResourceBudgetError(
            f"sumset limit {x} exceeds budget {max_limit}; pass max_limit to override"
        )
    if sieve is None or sieve.limit < x - 1:
        sieve = build_sieve(x)
    members = sieve.members
    flags = np.zeros(x + 1, dtype=bool)
    for s in members:
        s = int(s)
        if 2 * s > x:
            break
        lo = np.searchsorted(members, s, side="left")
        hi = np.searchsorted(members, x - s, side="right")
        flags[s + members[lo:hi]] = True
    bits = PackedBitmap.from_bool_array(flags)
    return SumsetBitmap(limit=x, bits=bits, count=bits.count())


@dataclass(frozen=True)
class RepresentationWitness:
    """Outcome of a membership search for one integer n.

    summands is (s1, s2) with s1 <= s2 both squareful and s1 + s2 = n, or
    None when the search found nothing.  searched_bound is the bound up to
    which candidate first summands were exhausted (floor(n/2) when the
    search ran to completion); complete distinguishes a certified absence
    from a budget-truncated search.
    """

    n: int
    summands: tuple
    searched_bound: int
    complete: bool
    candidates_tested: int

    @property
    def is_member(self) -> bool:
        return self.summands is not None

    @property
    def certified_absent(self) -> bool:
        return self.summands is None and self.complete


def _small_squarefree(b: int) -> bool:
    i = 2
    while i * i <= b:
        if b % (i * i) == 0:
            return False
        i += 1
    return True


def is_member(n: int, max_candidates: int = None) -> RepresentationWitness:
    """Search for a representation n = s1 + s2 with s1 <= s2 squareful.

    Candidates s1 = a^2 b^3 <= n/2 are enumerated with b ascending (over
    squarefree b) and a ascending within each b, and the first witness is
    returned; the order is fixed so results are deterministic.  Works for
    any n >= 2, far beyond any prebuilt sieve, at enumeration cost
    ~2.18 sqrt(n/2) candidates.  max_candidates optionally truncates the
    search; a truncated absence is reported with complete=False.
    """
    if n < 2:
        raise ParameterError(f"is_member needs n >= 2, got {n}")
    half = n // 2
    tested = 0
    b = 1
    while b * b * b <= half:
        if _small_squarefree(b):
            b3 = b * b * b
            amax = isqrt(half // b3)
            for a in range(1, amax + 1):
                if max_candidates is not None and tested >= max_candidates:
                    return RepresentationWitness(
                        n=n, summands=None, searched_bound=half,
                        complete=False, candidates_tested=tested,
                    )
                s1 = a * a * b3
                tested += 1
                if is_squareful(n - s1):
                    return RepresentationWitness(
                        n=n, summands=(s1, n - s1), searched_bound=s1,
                        complete=True, candidates_tested=tested,
                    )
        b += 1
    return RepresentationWitness(
        n=n, summands=None, searched_bound=half, complete=True, candidates_tested=tested
    )


@dataclass(frozen=True)
class GapReport:
    """Longest member-free subinterval of [1, x] plus the full gap histogram."""

    length: int
    start: int
    end: int
    histogram: dict  # gap length -> number of maximal member-free runs


def max_gap(sumset: SumsetBitmap, upto: int = None) -> GapReport:
    """Longest run without members inside [1, upto], earliest start on ties.

    Runs are maximal member-free intervals; a run may touch 1 or upto.
    """
    x = sumset.limit if upto is None else upto
    if not 2 <= x <= sumset.limit:
        raise ParameterError(f"upto must be in [2, {sumset.limit}], got {x}")
    members = sumset.bits.members()
    members = members[members <= x]
    starts, ends = [], []
    prev = 0
    for m in members.tolist():
        if m - prev > 1:
            starts.append(prev + 1)
            ends.append(m - 1)
        prev = m
    if prev < x:
        starts.append(prev + 1)
        ends.append(x)
    lengths = [e - s + 1 for s, e in zip(starts, ends)]
    hist: dict = {}
    for L in lengths:
        hist[L] = hist.get(L, 0) + 1
    best = max(range(len(lengths)), key=lambda i: (lengths[i], -starts[i]))
    return GapReport(
        length=lengths[best], start=starts[best], end=ends[best], histogram=hist
    )


@dataclass(frozen=True)
class CountRow:
    x: int
    count: int
    normalized: float  # count * (ln x)^ALPHA / x


def count_report(sumset: SumsetBitmap, checkpoints) -> tuple:
    """Counts V(x_i) and the normalized column V(x_i) (ln x_i)^alpha / x_i.

    The normalized column is monitoring output for comparison against the
    known growth order x / (ln x)^(alpha + o(1)); no pass/fail judgement is
    attached because the o(1) term is not effective.
    """
    cps = [int(c) for c in checkpoints]
    if sorted(cps) != cps:
        raise ParameterError("checkpoints must be sorted ascending")
    if cps and cps[-1] > sumset.limit:
        raise ParameterError(f"checkpoint {cps[-1]} beyond sumset limit {sumset.limit}")
    rows = []
    for c in cps:
        if c < 2:
            raise ParameterError(f"checkpoint {c} < 2")
        v = sumset.bits.count_upto(c)
        rows.append(CountRow(x=c, count=v, normalized=v * log(c) ** ALPHA / c))
    return tuple(rows)


@dataclass(frozen=True)
class TwoSquaresReport:
    count: int  # |{n in [1, x] : n = a^2 + b^2, a, b >= 0}|
    reference: float  # LANDAU_RAMANUJAN * x / sqrt(ln x)


def two_squares_comparison(x: int, max_limit: int = DEFAULT_SUMSET_BUDGET) -> TwoSquaresReport:
    """Count sums of two squares (classical convention, 0 allowed) up to x."""
    if x < 0:
        raise ParameterError(f"two_squares_comparison needs x >= 0, got {x}")
    if x > max_limit:
        raise ResourceBudgetError(f"limit {x} exceeds budget {max_limit}")
    if x < 1:
        return TwoSquaresReport(count=0, reference=0.0)
    flags = np.zeros(x + 1, dtype=bool)
    a = 0
    while a * a <= x:
        b = np.arange(0, isqrt(x - a * a) + 1, dtype=np.int64)
        flags[a * a + b * b] = True
        a += 1
    flags[0] = False
    ref = LANDAU_RAMANUJAN * x / sqrt(log(x)) if x >= 2 else 0.0
    return TwoSquaresReport(count=int(flags.sum()), reference=ref)
