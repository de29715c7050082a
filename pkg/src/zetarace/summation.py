"""Compensated summation helpers.

Sums over zeta zeros reach ~1e4 terms while downstream tolerances sit at
1e-6 relative and below, so plain left-to-right accumulation is not good
enough. Two tools cover every case in the package:

  - kahan_sum / KahanAccumulator for streaming accumulation (sieve passes,
    partial sums over the zero catalog);
  - math.fsum (exactly rounded) for one-shot reductions of materialized
    per-term arrays (lattice sums, quadrature nodes), which also makes the
    result independent of any parallel chunking of the evaluation.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np


def kahan_sum(values: Iterable[float]) -> float:
    """Kahan-compensated sum of an iterable, in iteration order."""
    acc = KahanAccumulator()
    for v in values:
        acc.add(v)
    return acc.total


class KahanAccumulator:
    """Streaming Kahan accumulator (Neumaier variant, order-sensitive)."""

    __slots__ = ("_sum", "_comp")

    def __init__(self) -> None:
        self._sum = 0.0
        self._comp = 0.0

    def add(self, value: float) -> None:
        t = self._sum + value
        if abs(self._sum) >= abs(value):
            self._comp += (self._sum - t) + value
        else:
            self._comp += (value - t) + self._sum
        self._sum = t

    def add_array(self, values: np.ndarray) -> None:
        """Fold in a block via one pairwise np.sum, then one compensated add."""
        if values.size:
            self.add(float(np.sum(values)))

    @property
    def total(self) -> float:
        return self._sum + self._comp


def ordered_fsum(values: np.ndarray) -> float:
    """Exactly rounded sum of a float64 array."""
    return math.fsum(values.tolist())
