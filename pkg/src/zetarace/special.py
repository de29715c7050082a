"""Bessel J0, mathematical constants, and closed-form zero-sum values.

The numeric backbone for everything downstream: J0 drives the
characteristic-function products, and the constants B1, B2, B4 give the
closed forms of the three convergent sums over zeta zeros whose tails
become the truncation constants P_T, Q_T, R_T.

The zeta derivatives at 0 are embedded as 30-digit literals produced by
scripts/constants_oracle.py (mpmath at 60 digits); rerun that script to
audit them. They are embedded rather than computed at runtime so that
results cannot drift with the multiprecision library underneath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import mpmath
import numpy as np
from scipy import integrate
from scipy import special as _sp

from .errors import PreconditionError

# 30-digit literals from scripts/constants_oracle.py
EULER_GAMMA_STR = "0.577215664901532860606512090082"
ZETA_D2_0_STR = "-2.00635645590858485121010002673"
ZETA_D3_0_STR = "-6.00471116686225444776106081337"
ZETA_D4_0_STR = "-23.9971031880137079589872195277"

EULER_GAMMA = float(EULER_GAMMA_STR)


def bessel_j0(x: float) -> float:
    """Bessel function of the first kind of order zero.

    Even by construction (evaluated at |x|); rejects non-finite input.
    Backed by the Cephes implementation behind scipy.special.j0, which
    meets the library's <=1e-13 absolute-accuracy contract with margin;
    tests/test_special.py checks it against an independent
    series-with-remainder oracle.
    """
    if not math.isfinite(x):
        raise PreconditionError("bessel_j0 requires finite x")
    return float(_sp.j0(abs(x)))


def j0_array(x: np.ndarray) -> np.ndarray:
    """Vectorized J0 on |x| (internal fast path, same backend as bessel_j0)."""
    return _sp.j0(np.abs(x))


@dataclass(frozen=True)
class ConstantSet:
    """Embedded constants and the closed-form zero-sum building blocks.

    w = B1 = C0 + 2 - log(4 pi); B2 and B4 come from the log-derivatives
    of zeta at 0. zeta_deriv0 holds (zeta''(0), zeta'''(0), zeta''''(0)).
    """

    euler_gamma: float
    w: float
    b1: float
    b2: float
    b4: float
    zeta_deriv0: tuple[float, float, float]

    @property
    def sum_gamma2_over_quartic_sq(self) -> float:
        """sum over gamma>0 of g^2/(1/4+g^2)^2 = (B1-B2)/4."""
        return (self.b1 - self.b2) / 4

    @property
    def sum_inv_quartic_sq(self) -> float:
        """sum over gamma>0 of 1/(1/4+g^2)^2 = B1+B2."""
        return self.b1 + self.b2

    @property
    def sum_gamma2_over_quartic_4(self) -> float:
        """sum over gamma>0 of g^2/(1/4+g^2)^4 = B1/2+B2/2-B4/4."""
        return self.b1 / 2 + self.b2 / 2 - self.b4 / 4


def constants() -> ConstantSet:
    """Constant set in double precision (see closed_form_sums for mpf)."""
    c0 = EULER_GAMMA
    w = 2.0 + c0 - math.log(4.0 * math.pi)
    z2 = float(ZETA_D2_0_STR)
    z3 = float(ZETA_D3_0_STR)
    z4 = float(ZETA_D4_0_STR)
    log2pi = math.log(2.0 * math.pi)
    b2 = 1.0 - math.pi**2 / 24.0 + 2.0 * z2 + log2pi**2
    b4 = (
        1.0
        - math.pi**4 / 1440.0
        - (
            -2.0 * z4
            + 8.0 * z3 * log2pi
            - 12.0 * z2 * (z2 + 2.0 * log2pi**2)
            - 6.0 * log2pi**4
        )
        / 6.0
    )
    return ConstantSet(c0, w, w, b2, b4, (z2, z3, z4))


class ClosedFormSums(NamedTuple):
    """Full-series values (mpmath floats) of the four zero sums.

    s_w: sum 1/(1/4+g^2) = w/2
    s_p: sum g^2/(1/4+g^2)^2
    s_q: sum 1/(1/4+g^2)^2
    s_r: sum g^2/(1/4+g^2)^4
    """

    s_w: mpmath.mpf
    s_p: mpmath.mpf
    s_q: mpmath.mpf
    s_r: mpmath.mpf


def closed_form_sums(dps: int = 40) -> ClosedFormSums:
    """High-precision closed forms, for tail-constant differencing.

    P_T/Q_T/R_T subtract partial sums from these values and lose up to
    14 leading digits in the process, hence mpf rather than float.
    """
    with mpmath.workdps(dps):
        c0 = mpmath.mpf(EULER_GAMMA_STR)
        z2 = mpmath.mpf(ZETA_D2_0_STR)
        z3 = mpmath.mpf(ZETA_D3_0_STR)
        z4 = mpmath.mpf(ZETA_D4_0_STR)
        log2pi = mpmath.log(2 * mpmath.pi)
        b1 = 2 + c0 - mpmath.log(4 * mpmath.pi)
        b2 = 1 - mpmath.pi**2 / 24 + 2 * z2 + log2pi**2
        b4 = (
            1
            - mpmath.pi**4 / 1440
            - (
                -2 * z4
                + 8 * z3 * log2pi
                - 12 * z2 * (z2 + 2 * log2pi**2)
                - 6 * log2pi**4
            )
            / 6
        )
        return ClosedFormSums(
            s_w=b1 / 2,
            s_p=(b1 - b2) / 4,
            s_q=b1 + b2,
            s_r=b1 / 2 + b2 / 2 - b4 / 4,
        )


# Summands of the four zero sums, as functions of the ordinate.
SUMMANDS: dict[str, Callable[[float], float]] = {
    "w": lambda t: 1.0 / (0.25 + t * t),
    "p": lambda t: t * t / (0.25 + t * t) ** 2,
    "q": lambda t: 1.0 / (0.25 + t * t) ** 2,
    "r": lambda t: t * t / (0.25 + t * t) ** 4,
}


def counting_error_bound(t: float) -> float:
    """Explicit bound on |N(t) - RvM(t)| for t >= 10.

    0.112 log t + 0.278 log log t + 2.51 bounds |S(t)| (Trudgian-type
    explicit estimate); the extra 0.09 absorbs the O(1/t) difference
    between N - S and the three-term RvM formula.
    """
    return 0.112 * math.log(t) + 0.278 * math.log(math.log(t)) + 2.6


class TailEstimate(NamedTuple):
    value: float
    certified_bound: float


def density_tail(kind: str, a: float) -> TailEstimate:
    """Estimate sum of SUMMANDS[kind] over zeros with gamma > a.

    Integrates the zero-counting density log(t/2pi)/(2pi) against the
    summand; the certified bound is 2 * |N - RvM|_sup * f(a) (partial
    summation against a decreasing summand) plus the quadrature residual.
    """
    if a < 14.0:
        raise PreconditionError("density_tail requires a >= 14 (beyond gamma_1)")
    f = SUMMANDS[kind]

    def integrand(t: float) -> float:
        return f(t) * math.log(t / (2 * math.pi)) / (2 * math.pi)

    value, quad_err = integrate.quad(integrand, a, np.inf, epsabs=1e-16, epsrel=1e-12, limit=200)
    bound = 2.0 * counting_error_bound(a) * f(a) + quad_err
    return TailEstimate(value, bound)
