"""Sieve-based evaluation of the nine counting functions, their
normalized error terms, truncated explicit-formula estimates, and the
Mertens-type constants in the reciprocal main terms.

One streaming pass of a segmented, odd-only sieve of Eratosthenes
accumulates the prime-only sums (counts, sum log p, sum 1/p,
sum log p / p, and the Mertens-product correction) at a pre-sorted list
of query points; the prime-power corrections that turn these into the
full nine functions involve only primes up to sqrt(x) and are applied
per query from the retained small-prime table. Reciprocal sums are
Kahan-compensated: their error terms multiply ~1e-5-sized differences
by sqrt(x) log x, so naive accumulation would dominate the signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import mpmath
import numpy as np
from scipy import special as _sp

from .errors import PreconditionError
from .special import EULER_GAMMA, EULER_GAMMA_STR
from .summation import KahanAccumulator
from .zeros import ZeroCatalog


class FunctionClass(str, Enum):
    STANDARD = "standard"
    RECIPROCAL = "reciprocal"


@dataclass(frozen=True)
class PrimeFunctionKind:
    """One of the nine prime counting functions with its bias term."""

    name: str
    klass: FunctionClass
    bias: int


KINDS: dict[str, PrimeFunctionKind] = {
    "psi": PrimeFunctionKind("psi", FunctionClass.STANDARD, 0),
    "theta": PrimeFunctionKind("theta", FunctionClass.STANDARD, -1),
    "Pi": PrimeFunctionKind("Pi", FunctionClass.STANDARD, 0),
    "pi": PrimeFunctionKind("pi", FunctionClass.STANDARD, -1),
    "psi_r": PrimeFunctionKind("psi_r", FunctionClass.RECIPROCAL, 0),
    "theta_r": PrimeFunctionKind("theta_r", FunctionClass.RECIPROCAL, 1),
    "Pi_r": PrimeFunctionKind("Pi_r", FunctionClass.RECIPROCAL, 0),
    "pi_r": PrimeFunctionKind("pi_r", FunctionClass.RECIPROCAL, 1),
    "pi_ell": PrimeFunctionKind("pi_ell", FunctionClass.RECIPROCAL, 1),
}


@dataclass(frozen=True)
class MertensConstants:
    """C0 plus the two prime-sum constants in the reciprocal main terms."""

    c0: float
    c1: float
    c2: float


@dataclass(frozen=True)
class RaceSample:
    x: float
    ef: float
    eg: float
    f: PrimeFunctionKind
    g: PrimeFunctionKind


# ---------------------------------------------------------------------------
# Segmented sieve
# ---------------------------------------------------------------------------


def simple_primes(limit: int) -> np.ndarray:
    """All primes <= limit by a plain in-memory sieve."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def iter_prime_segments(limit: int, span: int = 1 << 23) -> Iterator[np.ndarray]:
    """Yield the primes in [2, limit] as ascending int64 arrays.

    Odd-only segmented sieve; the segment span is in integers covered,
    so memory stays near span/2 bytes regardless of limit.
    """
    if limit < 2:
        return
    if limit < 3:
        yield np.array([2], dtype=np.int64)
        return
    base = simple_primes(math.isqrt(limit))
    odd_base = base[base > 2]
    first = True
    lo = 3
    while lo <= limit:
        hi = min(lo + span, limit + 1)
        n_odd = (hi - lo + 1) // 2
        mask = np.ones(n_odd, dtype=bool)
        for p in odd_base[odd_base * odd_base < hi]:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start < hi:
                mask[(start - lo) // 2 :: p] = False
        primes = lo + 2 * np.flatnonzero(mask).astype(np.int64)
        if first:
            primes = np.concatenate(([np.int64(2)], primes))
            first = False
        yield primes
        lo = hi if hi % 2 == 1 else hi + 1


@dataclass
class SieveData:
    """Streaming snapshots of the prime-only sums at registered queries.

    Arrays are aligned with `queries`: prime counts, sum log p,
    sum 1/p, sum log p/p, and the Mertens-product correction
    sum (-log(1-1/p) - 1/p). small_primes holds every prime up to
    sqrt(xmax) for the prime-power corrections.
    """

    xmax: int
    queries: np.ndarray
    counts: np.ndarray
    sum_log: np.ndarray
    sum_inv: np.ndarray
    sum_log_over: np.ndarray
    sum_mertens_corr: np.ndarray
    small_primes: np.ndarray

    def _index(self, x: float) -> int:
        idx = int(np.searchsorted(self.queries, x))
        if idx >= self.queries.size or self.queries[idx] != x:
            raise PreconditionError(f"x = {x!r} is not a registered query point")
        return idx


def sieve_counts(queries: Sequence[float], span: int = 1 << 23) -> SieveData:
    """One streaming sieve pass accumulating snapshots at each query.

    Queries must be sorted ascending and at least 2; duplicates are
    rejected. Runtime is one pass to max(queries).
    """
    q = np.asarray(sorted(set(float(v) for v in queries)), dtype=np.float64)
    if q.size != len(queries):
        raise PreconditionError("query points must be unique")
    if not np.array_equal(q, np.asarray([float(v) for v in queries])):
        raise PreconditionError("query points must be pre-sorted ascending")
    if q.size == 0:
        raise PreconditionError("no query points")
    if q[0] < 2:
        raise PreconditionError(f"queries must be >= 2, got {q[0]!r}")
    xmax = int(math.floor(q[-1]))

    acc = {
        name: KahanAccumulator()
        for name in ("log", "inv", "log_over", "corr")
    }
    count = 0
    out = {
        "counts": np.zeros(q.size),
        "sum_log": np.zeros(q.size),
        "sum_inv": np.zeros(q.size),
        "sum_log_over": np.zeros(q.size),
        "sum_mertens_corr": np.zeros(q.size),
    }
    # integer thresholds: p <= x  <=>  p <= floor(x)
    thresholds = np.floor(q).astype(np.int64)
    next_q = 0

    def snapshot(idx: int) -> None:
        out["counts"][idx] = count
        out["sum_log"][idx] = acc["log"].total
        out["sum_inv"][idx] = acc["inv"].total
        out["sum_log_over"][idx] = acc["log_over"].total
        out["sum_mertens_corr"][idx] = acc["corr"].total

    for primes in iter_prime_segments(xmax, span=span):
        logs = np.log(primes.astype(np.float64))
        invs = 1.0 / primes.astype(np.float64)
        corr = -np.log1p(-invs) - invs
        start = 0
        while next_q < q.size and thresholds[next_q] < primes[-1]:
            cut = int(np.searchsorted(primes, thresholds[next_q], side="right"))
            _add_slice(acc, logs, invs, corr, start, cut)
            count += cut - start
            start = cut
            snapshot(next_q)
            next_q += 1
        _add_slice(acc, logs, invs, corr, start, primes.size)
        count += primes.size - start
    while next_q < q.size:
        snapshot(next_q)
        next_q += 1

    return SieveData(
        xmax=xmax,
        queries=q,
        small_primes=simple_primes(math.isqrt(xmax)),
        **out,
    )


def _add_slice(acc, logs, invs, corr, start, stop) -> None:
    if stop > start:
        acc["log"].add_array(logs[start:stop])
        acc["inv"].add_array(invs[start:stop])
        acc["log_over"].add_array(logs[start:stop] * invs[start:stop])
        acc["corr"].add_array(corr[start:stop])


def _integer_root(n: int, k: int) -> int:
    """Largest r with r^k <= n (exact integer arithmetic)."""
    if n < 1:
        return 0
    r = int(round(n ** (1.0 / k)))
    while (r + 1) ** k <= n:
        r += 1
    while r**k > n:
        r -= 1
    return r


def counting_function(kind: PrimeFunctionKind, x: float, sieve: SieveData) -> float:
    """Exact value of one of the nine functions at a registered query x."""
    if x < 2:
        raise PreconditionError(f"counting functions require x >= 2: {x!r}")
    if x > sieve.queries[-1]:
        raise PreconditionError(
            f"sieve range exceeded: x = {x!r}, sieve covers up to {sieve.queries[-1]!r}"
        )
    idx = sieve._index(x)
    xi = int(math.floor(x))
    p = sieve.small_primes
    name = kind.name

    if name == "pi":
        return float(sieve.counts[idx])
    if name == "theta":
        return float(sieve.sum_log[idx])
    if name == "pi_r":
        return float(sieve.sum_inv[idx])
    if name == "theta_r":
        return float(sieve.sum_log_over[idx])
    if name == "pi_ell":
        return float(sieve.sum_inv[idx] + sieve.sum_mertens_corr[idx])

    kmax = xi.bit_length() - 1  # largest k with 2^k <= xi
    if name == "psi":
        parts = [sieve.sum_log[idx]]
        for k in range(2, kmax + 1):
            r = _integer_root(xi, k)
            cut = int(np.searchsorted(p, r, side="right"))
            parts.append(math.fsum(np.log(p[:cut].astype(np.float64)).tolist()))
        return math.fsum(parts)
    if name == "Pi":
        parts = [float(sieve.counts[idx])]
        for k in range(2, kmax + 1):
            r = _integer_root(xi, k)
            cut = int(np.searchsorted(p, r, side="right"))
            parts.append(cut / k)
        return math.fsum(parts)
    if name == "psi_r":
        parts = [sieve.sum_log_over[idx]]
        for k in range(2, kmax + 1):
            r = _integer_root(xi, k)
            cut = int(np.searchsorted(p, r, side="right"))
            pk = p[:cut].astype(np.float64)
            parts.append(math.fsum((np.log(pk) / pk**k).tolist()))
        return math.fsum(parts)
    if name == "Pi_r":
        parts = [sieve.sum_inv[idx]]
        for k in range(2, kmax + 1):
            r = _integer_root(xi, k)
            cut = int(np.searchsorted(p, r, side="right"))
            pk = p[:cut].astype(np.float64)
            parts.append(math.fsum((1.0 / (k * pk**k)).tolist()))
        return math.fsum(parts)
    raise PreconditionError(f"unknown function kind: {name!r}")


def log_integral(x: float) -> float:
    """li(x) = PV int_0^x dt/log t = Ei(log x)."""
    return float(_sp.expi(math.log(x)))


def normalized_error(
    kind: PrimeFunctionKind,
    x: float,
    mertens: MertensConstants,
    sieve: SieveData,
) -> float:
    """The normalized error term E^f(x) for any of the nine functions."""
    value = counting_function(kind, x, sieve)
    sqrt_x = math.sqrt(x)
    log_x = math.log(x)
    name = kind.name
    if name == "psi":
        return (value - x) / sqrt_x
    if name == "theta":
        return (value - x) / sqrt_x
    if name == "Pi":
        return (value - log_integral(x)) * log_x / sqrt_x
    if name == "pi":
        return (value - log_integral(x)) * log_x / sqrt_x
    if name == "psi_r":
        return (value - (log_x - mertens.c0)) * sqrt_x
    if name == "theta_r":
        return (value - (log_x - mertens.c1)) * sqrt_x
    if name == "Pi_r":
        return (value - (math.log(log_x) + mertens.c0)) * sqrt_x * log_x
    if name == "pi_r":
        return (value - (math.log(log_x) - mertens.c2)) * sqrt_x * log_x
    if name == "pi_ell":
        return (value - (math.log(log_x) + mertens.c0)) * sqrt_x * log_x
    raise PreconditionError(f"unknown function kind: {name!r}")


def explicit_formula(
    kind: PrimeFunctionKind, x: float, big_x: float, catalog: ZeroCatalog
) -> float:
    """Bias term plus the zero sum truncated at ordinate height big_x.

    Standard functions sum -Re 2 x^{i gamma}/(1/2 + i gamma); reciprocal
    functions use denominator -1/2 + i gamma.
    """
    if x < 2:
        raise PreconditionError(f"explicit formula requires x >= 2: {x!r}")
    g = catalog.up_to(big_x) if big_x > 0 else np.zeros(0)
    if g.size == 0:
        return float(kind.bias)
    half = 0.5 if kind.klass is FunctionClass.STANDARD else -0.5
    terms = 2.0 * np.exp(1j * g * math.log(x)) / (half + 1j * g)
    return kind.bias - math.fsum(terms.real.tolist())


def race_scan(
    f: PrimeFunctionKind,
    g: PrimeFunctionKind,
    x_grid: Sequence[float],
    sieve: SieveData,
    mertens: MertensConstants,
) -> list[RaceSample]:
    """Joint samples (x, E^f(x), E^g(x)) along a grid of registered queries."""
    return [
        RaceSample(
            x=float(x),
            ef=normalized_error(f, float(x), mertens, sieve),
            eg=normalized_error(g, float(x), mertens, sieve),
            f=f,
            g=g,
        )
        for x in x_grid
    ]


# ---------------------------------------------------------------------------
# Mertens constants
# ---------------------------------------------------------------------------

_J_CUTOFF = 64  # beyond this, log p / p^j sums are below 1e-18
_STREAM_J = 6  # exponents streamed over the full prime range


def _neg_zeta_logderiv(s: float, dps: int) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return -mpmath.zeta(s, derivative=1) / mpmath.zeta(s)


def _lambda_sum(j: int, dps: int = 30) -> mpmath.mpf:
    """f(j) = sum_p log p / p^j via Moebius inversion of -zeta'/zeta."""
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        m = 1
        while j * m <= 220:
            mu = _moebius(m)
            if mu:
                total += mu * _neg_zeta_logderiv(j * m, dps)
            m += 1
        return total


def _prime_zeta(k: int, dps: int = 30) -> mpmath.mpf:
    """P(k) = sum_p p^{-k} via Moebius inversion of log zeta."""
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        m = 1
        while k * m <= 220:
            mu = _moebius(m)
            if mu:
                total += mpmath.mpf(mu) / m * mpmath.log(mpmath.zeta(k * m))
            m += 1
        return total


def _moebius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def mertens_constants(prime_limit: int, dps: int = 30) -> MertensConstants:
    """C1 = C0 + sum_p log p/(p(p-1)) and C2 = -C0 + sum_{k>=2} sum_p 1/(k p^k).

    Prime sums run to prime_limit; the remainders over p > prime_limit
    use the exponent split sum_{j>=2} (f(j) - f_limit(j)), where the full
    f(j) and P(k) come from Moebius-inverted zeta expressions at `dps`
    digits, so the certified remainder error is far below 1e-12.
    """
    if prime_limit < 10**6:
        raise PreconditionError(
            f"prime limit {prime_limit} too small for the 1e-12 remainder target; "
            f"need >= 1e6"
        )
    c1_acc = KahanAccumulator()
    corr_acc = KahanAccumulator()
    f_stream = {j: KahanAccumulator() for j in range(2, _STREAM_J + 1)}
    p_stream = {k: KahanAccumulator() for k in range(2, _STREAM_J + 1)}
    for primes in iter_prime_segments(prime_limit):
        pf = primes.astype(np.float64)
        logs = np.log(pf)
        invs = 1.0 / pf
        c1_acc.add_array(logs / (pf * (pf - 1.0)))
        corr_acc.add_array(-np.log1p(-invs) - invs)
        powers = invs.copy()
        for j in range(2, _STREAM_J + 1):
            powers *= invs
            f_stream[j].add_array(logs * powers)
            p_stream[j].add_array(powers)

    # exponents above _STREAM_J: only primes up to 1e4 contribute > 1e-20
    small = simple_primes(min(prime_limit, 10**4)).astype(np.float64)
    small_logs = np.log(small)

    with mpmath.workdps(dps):
        c0 = mpmath.mpf(EULER_GAMMA_STR)
        c1 = c0 + mpmath.mpf(c1_acc.total)
        c2 = -c0 + mpmath.mpf(corr_acc.total)
        for j in range(2, _J_CUTOFF + 1):
            if j <= _STREAM_J:
                partial = mpmath.mpf(f_stream[j].total)
                partial_p = mpmath.mpf(p_stream[j].total)
            else:
                partial = mpmath.mpf(float(np.sum(small_logs * small ** (-float(j)))))
                partial_p = mpmath.mpf(float(np.sum(small ** (-float(j)))))
            c1 += _lambda_sum(j, dps) - partial
            c2 += (_prime_zeta(j, dps) - partial_p) / j
        return MertensConstants(c0=EULER_GAMMA, c1=float(c1), c2=float(c2))
