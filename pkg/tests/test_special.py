"""J0 accuracy and parity, the constant set, and the density-tail estimates.

The J0 oracle here is an independent Maclaurin evaluation in mpmath with
an explicit remainder bound, per the usual practice of checking a
library special function against a from-scratch series.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetarace import special, zeros
from zetarace.errors import PreconditionError

# 50-digit series evaluation of J0(1), frozen from scripts/constants_oracle.py
J0_AT_1 = 0.7651976865579665514497175261026632209092742897553
# first positive zero of J0 by series + bisection (same script)
J0_ZERO_1 = 2.4048255576957727686216318793264546


def j0_series_oracle(x: float, dps: int = 50) -> float:
    """Truncated Maclaurin series with remainder below 1e-40 for |x| <= 10."""
    with mpmath.workdps(dps):
        xx = mpmath.mpf(x)
        acc = mpmath.mpf(0)
        term = mpmath.mpf(1)
        q = -(xx * xx) / 4
        for n in range(90):
            acc += term
            term = term * q / ((n + 1) * (n + 1))
        assert abs(term) < mpmath.mpf(10) ** -40
        return float(acc)


def test_j0_trivial_values():
    assert special.bessel_j0(0.0) == 1.0
    assert abs(special.bessel_j0(J0_ZERO_1)) < 1e-12
    assert special.bessel_j0(1.0) == pytest.approx(J0_AT_1, abs=1e-15)


@pytest.mark.parametrize("x", [0.25, 1.0, 2.5, 4.0, 5.5, 7.0, 8.0, 9.5])
def test_j0_matches_series_oracle(x):
    assert special.bessel_j0(x) == pytest.approx(j0_series_oracle(x), abs=1e-13)


@pytest.mark.parametrize("x", [25.0, 316.2, 9999.5, 99999.0])
def test_j0_large_argument_against_mpmath(x):
    with mpmath.workdps(40):
        ref = float(mpmath.besselj(0, mpmath.mpf(x)))
    assert special.bessel_j0(x) == pytest.approx(ref, abs=1e-13)


@given(st.floats(min_value=-1e5, max_value=1e5, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_j0_parity_exact(x):
    assert special.bessel_j0(x) == special.bessel_j0(-x)


def test_j0_bound_bulk():
    rng = np.random.Generator(np.random.Philox(key=20240809))
    x = rng.uniform(-1e4, 1e4, size=1_000_000)
    vals = np.abs(special.j0_array(x))
    cap = np.minimum(1.0, np.sqrt(2.0 / (math.pi * np.abs(x))))
    assert np.all(vals <= cap + 1e-12)


def test_j0_rejects_non_finite():
    with pytest.raises(PreconditionError):
        special.bessel_j0(float("nan"))
    with pytest.raises(PreconditionError):
        special.bessel_j0(float("inf"))


def test_constant_set_values():
    cs = special.constants()
    assert cs.w == 2.0 + cs.euler_gamma - math.log(4.0 * math.pi)
    assert cs.b1 == cs.w
    assert abs(cs.w - 0.0461914) <= 5e-8
    assert cs.b1 + cs.b2 == pytest.approx(3.71006e-5, abs=1e-9)
    assert (cs.b1 - cs.b2) / 4 == pytest.approx(0.0230864, abs=5e-8)
    # B4 via the three quoted sums: 4((B1+B2)/2 - 1.43512e-7)
    assert cs.b4 == pytest.approx(7.3627e-5, abs=1e-9)
    assert cs.sum_gamma2_over_quartic_4 == pytest.approx(1.43512e-7, abs=1e-12)


def test_closed_forms_match_float_constants():
    cs = special.constants()
    forms = special.closed_form_sums()
    assert float(forms.s_w) == pytest.approx(cs.w / 2, rel=1e-15)
    assert float(forms.s_p) == pytest.approx(cs.sum_gamma2_over_quartic_sq, rel=1e-12)
    assert float(forms.s_q) == pytest.approx(cs.sum_inv_quartic_sq, rel=1e-10)
    assert float(forms.s_r) == pytest.approx(cs.sum_gamma2_over_quartic_4, rel=1e-8)


def test_zero_sums_two_routes_agree(catalog):
    """Closed forms vs catalog partial sums + density-tail estimate."""
    top = catalog.max_ordinate
    partial = zeros.partial_sums(catalog, top)
    forms = special.closed_form_sums()
    for kind, part, full in (
        ("w", partial.s_w, forms.s_w),
        ("p", partial.s_p, forms.s_p),
        ("q", partial.s_q, forms.s_q),
        ("r", partial.s_r, forms.s_r),
    ):
        est = special.density_tail(kind, top)
        assert abs((float(full) - part) - est.value) <= est.certified_bound


def test_density_tail_requires_reasonable_start():
    with pytest.raises(PreconditionError):
        special.density_tail("w", 1.0)
