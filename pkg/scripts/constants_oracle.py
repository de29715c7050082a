#!/usr/bin/env python3
"""Arbitrary-precision oracle for the constants embedded in zetarace.special.

Run before (or after) a build to regenerate / audit the 30-digit literals:

    python scripts/constants_oracle.py

Everything here is independent of the package itself: it uses only mpmath.
Printed values:
  - Euler's constant C0
  - zeta''(0), zeta'''(0), zeta''''(0)
  - w = 2 + C0 - log(4 pi)
  - B2 = 1 - pi^2/24 + 2 zeta''(0) + log^2(2 pi)
  - B4 = 1 - pi^4/1440
        - (1/6) (-2 zeta''''(0) + 8 zeta'''(0) log(2 pi)
                 - 12 zeta''(0) (zeta''(0) + 2 log^2(2 pi)) - 6 log^4(2 pi))
  - the three zero-sum values implied by B1, B2, B4
  - J0(1) from the Maclaurin series with a proven remainder bound
  - the first positive zero of J0 by series + bisection
"""

from __future__ import annotations

import mpmath
from mpmath import mp


def j0_series(x: mpmath.mpf, terms: int = 120) -> mpmath.mpf:
    """Maclaurin series sum_{n} (-1)^n (x/2)^{2n} / (n!)^2, truncated.

    For |x| <= 4 and terms >= 40 the first omitted term bounds the error
    below 1e-60 at 60 digits of working precision.
    """
    acc = mp.mpf(0)
    term = mp.mpf(1)
    q = -(x * x) / 4
    for n in range(terms):
        acc += term
        term = term * q / ((n + 1) * (n + 1))
    return acc


def first_j0_zero() -> mpmath.mpf:
    lo, hi = mp.mpf(2), mp.mpf(3)
    assert j0_series(lo) > 0 > j0_series(hi)
    for _ in range(240):
        mid = (lo + hi) / 2
        if j0_series(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def main() -> None:
    mp.dps = 60
    c0 = mp.euler
    z2 = mp.zeta(0, derivative=2)
    z3 = mp.zeta(0, derivative=3)
    z4 = mp.zeta(0, derivative=4)
    log2pi = mp.log(2 * mp.pi)
    w = 2 + c0 - mp.log(4 * mp.pi)
    b1 = w
    b2 = 1 - mp.pi**2 / 24 + 2 * z2 + log2pi**2
    b4 = (
        1
        - mp.pi**4 / 1440
        - (
            -2 * z4
            + 8 * z3 * log2pi
            - 12 * z2 * (z2 + 2 * log2pi**2)
            - 6 * log2pi**4
        )
        / 6
    )
    print("C0          =", mpmath.nstr(c0, 35))
    print("zeta''(0)   =", mpmath.nstr(z2, 35))
    print("zeta'''(0)  =", mpmath.nstr(z3, 35))
    print("zeta''''(0) =", mpmath.nstr(z4, 35))
    print("w = B1      =", mpmath.nstr(w, 35))
    print("B2          =", mpmath.nstr(b2, 35))
    print("B4          =", mpmath.nstr(b4, 35))
    print("sum g^2/(1/4+g^2)^2 = (B1-B2)/4      =", mpmath.nstr((b1 - b2) / 4, 30))
    print("sum 1/(1/4+g^2)^2   = B1+B2          =", mpmath.nstr(b1 + b2, 30))
    print("sum g^2/(1/4+g^2)^4 = B1/2+B2/2-B4/4 =", mpmath.nstr(b1 / 2 + b2 / 2 - b4 / 4, 30))
    print("J0(1)       =", mpmath.nstr(j0_series(mp.mpf(1)), 52))
    print("J0 zero 1   =", mpmath.nstr(first_j0_zero(), 35))
    print("mpmath j0(1) cross-check =", mpmath.nstr(mpmath.besselj(0, 1), 52))


if __name__ == "__main__":
    main()
