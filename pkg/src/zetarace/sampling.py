"""Monte Carlo oracle for the limiting distributions.

Draws the random zero-sums directly from their definition (independent
uniform points on the unit circle at each ordinate) and estimates the
same functionals the exact machinery computes: quadrant masses of the
planar distribution, tail probabilities of the one-dimensional one, and
the structural invariants of the nine-component vector. Used throughout
the tests as the independent cross-check on the quadrature and
inversion results.

Reproducibility contract: the counter-based Philox generator is keyed by
the user seed, and each fixed-size block of samples owns the disjoint
counter range starting at block_index << 192. Estimates therefore depend
only on (seed, n_samples, n_zeros) and never on how blocks are scheduled
across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .special import constants
from .summation import kahan_sum
from .zeros import ZeroCatalog

BLOCK = 4096  # samples per Philox substream

V1_SIGMAS = (0.5, 1.0, 1.5, 2.0)

# bias vector and plane directions of the nine-component error vector
NINE_BIAS = np.array([0.0, -1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 1.0])
NINE_STANDARD = np.array([1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
NINE_RECIPROCAL = np.array([0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0])


@dataclass(frozen=True)
class SampleBatch:
    """Named Monte Carlo estimates with standard errors.

    estimates maps functional name -> (mean, standard error); extras
    holds exact per-batch scalars (support bounds, residuals, bias).
    """

    n_samples: int
    n_zeros: int
    seed: int
    estimates: dict[str, tuple[float, float]]
    extras: dict[str, float]


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed, counter=block_index << 192))


def _blocks(n_samples: int) -> list[tuple[int, int]]:
    return [(i, min(BLOCK, n_samples - i * BLOCK)) for i in range((n_samples + BLOCK - 1) // BLOCK)]


def _coef(catalog: ZeroCatalog, n_zeros: int) -> tuple[np.ndarray, np.ndarray]:
    if n_zeros > catalog.count:
        raise PreconditionError(
            f"n_zeros = {n_zeros} exceeds catalog size {catalog.count}"
        )
    g = catalog.ordinates[:n_zeros]
    a = 1.0 / (0.25 + g * g)
    return a, 2.0 * g * a


def _draw_plane(
    rng: np.random.Generator, size: int, a: np.ndarray, b: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """One block of (d, s) with X = d + s, Y = s - d for the planar sum."""
    theta = rng.random((size, a.size))
    theta *= 2.0 * math.pi
    d = np.cos(theta) @ a
    s = np.sin(theta) @ b
    return d, s


def _proportion(count: int, n: int) -> tuple[float, float]:
    p = count / n
    return p, math.sqrt(max(p * (1.0 - p), 0.0) / n)


def _run_blocks(fn, n_samples: int, n_jobs: int | None):
    spans = _blocks(n_samples)
    if n_jobs is None or n_jobs <= 1:
        return [fn(i, size) for i, size in spans]
    with ThreadPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(lambda t: fn(*t), spans))


def truncation_bias(catalog: ZeroCatalog, n_zeros: int) -> float:
    """2 sum_{m > n_zeros} 1/(1/4+g_m^2): bound on the omitted mass shift."""
    a, _ = _coef(catalog, n_zeros)
    return constants().w - 2.0 * kahan_sum(a.tolist())


def sample_v2(
    n_samples: int,
    n_zeros: int,
    seed: int,
    catalog: ZeroCatalog,
    n_jobs: int | None = None,
) -> SampleBatch:
    """Estimate quadrant masses and the sign-disagreement mass of the
    planar distribution, truncated at n_zeros ordinates."""
    a, b = _coef(catalog, n_zeros)

    def block(i: int, size: int):
        d, s = _draw_plane(_block_rng(seed, i), size, a, b)
        x = d + s
        y = s - d
        xpos = x > 0
        ypos = y > 0
        return (
            int(np.sum(xpos & ypos)),
            int(np.sum(~xpos & ypos)),
            int(np.sum(~xpos & ~ypos)),
            int(np.sum(xpos & ~ypos)),
            2.0 * float(np.max(np.abs(d))),
        )

    stats = _run_blocks(block, n_samples, n_jobs)
    q1 = sum(s[0] for s in stats)
    q2 = sum(s[1] for s in stats)
    q3 = sum(s[2] for s in stats)
    q4 = sum(s[3] for s in stats)
    max_diff = max(s[4] for s in stats)
    estimates = {
        "q1": _proportion(q1, n_samples),
        "q2": _proportion(q2, n_samples),
        "q3": _proportion(q3, n_samples),
        "q4": _proportion(q4, n_samples),
        "eta2": _proportion(q2 + q4, n_samples),
    }
    extras = {
        "max_abs_diff": max_diff,
        "support_bound": 2.0 * kahan_sum(a.tolist()),
        "w": constants().w,
        "truncation_bias": truncation_bias(catalog, n_zeros),
    }
    return SampleBatch(n_samples, n_zeros, seed, estimates, extras)


def sample_v1(
    n_samples: int,
    n_zeros: int,
    seed: int,
    catalog: ZeroCatalog,
    sigmas: tuple[float, ...] = V1_SIGMAS,
    n_jobs: int | None = None,
) -> SampleBatch:
    """Estimate tail probabilities Pr(V > sigma) of the one-dimensional sum."""
    if n_zeros > catalog.count:
        raise PreconditionError(
            f"n_zeros = {n_zeros} exceeds catalog size {catalog.count}"
        )
    g = catalog.ordinates[:n_zeros]
    r = 2.0 / np.sqrt(0.25 + g * g)

    def block(i: int, size: int):
        theta = _block_rng(seed, i).random((size, r.size))
        theta *= 2.0 * math.pi
        v = np.cos(theta) @ r
        counts = tuple(int(np.sum(v > s)) for s in sigmas)
        return counts, float(np.sum(v)), float(np.sum(v * v))

    stats = _run_blocks(block, n_samples, n_jobs)
    tail_counts = [sum(s[0][j] for s in stats) for j in range(len(sigmas))]
    mean = math.fsum(s[1] for s in stats) / n_samples
    second = math.fsum(s[2] for s in stats) / n_samples
    estimates = {
        f"pr_gt_{s:g}": _proportion(c, n_samples) for s, c in zip(sigmas, tail_counts)
    }
    var = second - mean * mean
    estimates["mean"] = (mean, math.sqrt(var / n_samples))
    extras = {
        "variance": var,
        "variance_exact_truncated": 2.0 * kahan_sum((1.0 / (0.25 + g * g)).tolist()),
        "truncation_bias": truncation_bias(catalog, n_zeros),
    }
    return SampleBatch(n_samples, n_zeros, seed, estimates, extras)


def sample_nine(
    n_samples: int,
    n_zeros: int,
    seed: int,
    catalog: ZeroCatalog,
    n_jobs: int | None = None,
) -> SampleBatch:
    """Sample the nine-component error vector and check its plane structure.

    Every draw is bias + Y1 * standard_direction + Y2 * reciprocal_direction
    with (Y1, Y2) distributed as the planar sum; equal-bias coordinates are
    bitwise identical by construction, and the cross-bias coordinate gaps
    can differ from the exact bias differences only by the single rounding
    of bias + Y, which is what plane_residual records.
    """
    a, b = _coef(catalog, n_zeros)

    def block(i: int, size: int):
        d, s = _draw_plane(_block_rng(seed, i), size, a, b)
        y1 = d + s
        y2 = s - d
        coords = (
            NINE_BIAS[None, :]
            + y1[:, None] * NINE_STANDARD[None, :]
            + y2[:, None] * NINE_RECIPROCAL[None, :]
        )
        if not (
            np.array_equal(coords[:, 0], coords[:, 2])
            and np.array_equal(coords[:, 1], coords[:, 3])
            and np.array_equal(coords[:, 4], coords[:, 6])
            and np.array_equal(coords[:, 5], coords[:, 7])
            and np.array_equal(coords[:, 5], coords[:, 8])
        ):
            raise AssertionError("equal-bias coordinates must be identical")
        residual = max(
            float(np.max(np.abs((coords[:, 1] - coords[:, 0]) + 1.0))),
            float(np.max(np.abs((coords[:, 5] - coords[:, 4]) - 1.0))),
        )
        xpos = coords[:, 0] > 0
        ypos = coords[:, 4] > 0
        return (
            int(np.sum(xpos & ypos)),
            int(np.sum(~xpos & ypos)),
            int(np.sum(~xpos & ~ypos)),
            int(np.sum(xpos & ~ypos)),
            residual,
        )

    stats = _run_blocks(block, n_samples, n_jobs)
    q1 = sum(s[0] for s in stats)
    q2 = sum(s[1] for s in stats)
    q3 = sum(s[2] for s in stats)
    q4 = sum(s[3] for s in stats)
    estimates = {
        "q1": _proportion(q1, n_samples),
        "q2": _proportion(q2, n_samples),
        "q3": _proportion(q3, n_samples),
        "q4": _proportion(q4, n_samples),
        "eta2": _proportion(q2 + q4, n_samples),
    }
    extras = {
        "plane_residual": max(s[4] for s in stats),
        "truncation_bias": truncation_bias(catalog, n_zeros),
    }
    return SampleBatch(n_samples, n_zeros, seed, estimates, extras)
