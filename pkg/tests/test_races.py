"""Counting functions, normalized errors, explicit formulas, constants."""

from __future__ import annotations

import math

import numpy as np
import pytest

from zetarace import races
from zetarace.errors import PreconditionError
from zetarace.special import EULER_GAMMA

GRID = [float(x) for x in np.unique(np.geomspace(1e2, 1e7, 60).round())]
POINTS = GRID + [1e7]


@pytest.fixture(scope="module")
def sieve():
    queries = sorted(set([10.0, 100.0, 1e4, 1e6] + POINTS))
    return races.sieve_counts(queries)


@pytest.fixture(scope="module")
def mertens():
    return races.mertens_constants(10**6)


def test_pi_and_psi_at_ten(sieve):
    assert races.counting_function(races.KINDS["pi"], 10.0, sieve) == 4.0
    expected = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)
    assert races.counting_function(races.KINDS["psi"], 10.0, sieve) == pytest.approx(
        expected, rel=1e-15
    )


def test_theta_against_independent_sieve(sieve):
    # one-shot non-segmented sieve, exact summation: independent oracle
    primes = races.simple_primes(10**6)
    oracle = math.fsum(np.log(primes.astype(float)).tolist())
    assert races.counting_function(races.KINDS["theta"], 1e6, sieve) == pytest.approx(
        oracle, rel=1e-14
    )


def test_prime_power_identities(sieve):
    """psi = sum theta(x^{1/k}) and Pi = sum pi(x^{1/k})/k, via brute
    enumeration of every prime power up to x."""
    x = 1e6
    primes = races.simple_primes(10**6)
    psi_brute = []
    pi_brute_num = 0.0
    for p in primes.tolist():
        pk = p
        k = 1
        while pk <= 10**6:
            psi_brute.append(math.log(p))
            pi_brute_num += 1.0 / k
            pk *= p
            k += 1
    assert races.counting_function(races.KINDS["psi"], x, sieve) == pytest.approx(
        math.fsum(psi_brute), rel=1e-12
    )
    assert races.counting_function(races.KINDS["Pi"], x, sieve) == pytest.approx(
        pi_brute_num, rel=1e-12
    )


def test_pi_ell_strictly_between(sieve, mertens):
    """E^{pi_ell} < E^{pi_r} at every sampled x (unconditional), and the
    other unconditional orderings hold from small x onward."""
    kinds = races.KINDS
    for x in POINTS:
        e_ell = races.normalized_error(kinds["pi_ell"], x, mertens, sieve)
        e_r = races.normalized_error(kinds["pi_r"], x, mertens, sieve)
        assert e_ell < e_r
    located_x0 = {}
    pairs = [("theta", "psi"), ("pi", "Pi"), ("psi_r", "theta_r"), ("Pi_r", "pi_ell")]
    for f_name, g_name in pairs:
        bad = [
            x
            for x in POINTS
            if not races.normalized_error(kinds[f_name], x, mertens, sieve)
            < races.normalized_error(kinds[g_name], x, mertens, sieve)
        ]
        located_x0[(f_name, g_name)] = max(bad) if bad else 0.0
        assert located_x0[(f_name, g_name)] < 1e4


def test_standard_gap_converges_to_one(sieve, mertens):
    kinds = races.KINDS
    gap = lambda x: abs(
        races.normalized_error(kinds["psi"], x, mertens, sieve)
        - races.normalized_error(kinds["theta"], x, mertens, sieve)
        - 1.0
    )
    assert gap(1e7) < gap(1e4)


def test_reciprocal_gap_converges_to_minus_one(sieve, mertens):
    kinds = races.KINDS
    gap = lambda x: abs(
        races.normalized_error(kinds["psi_r"], x, mertens, sieve)
        - races.normalized_error(kinds["theta_r"], x, mertens, sieve)
        + 1.0
    )
    assert gap(1e7) < gap(1e4)
    assert gap(1e7) < 5.0 / math.log(1e7)


def test_mixed_pair_strip(sieve, mertens):
    """(psi, psi_r) samples stay inside the diagonal strip of width w,
    up to a finite-x slack that shrinks with x."""
    from zetarace.special import constants

    w = constants().w
    kinds = races.KINDS
    devs = {}
    for x in POINTS:
        d = abs(
            races.normalized_error(kinds["psi"], x, mertens, sieve)
            - races.normalized_error(kinds["psi_r"], x, mertens, sieve)
        )
        devs[x] = max(d - w, 0.0)
        assert d <= w + 0.75  # generous finite-x slack at x >= 100
    assert max(v for x, v in devs.items() if x >= 1e6) <= max(
        v for x, v in devs.items() if x <= 1e4
    )


def test_same_class_pair_collapses_to_line(sieve, mertens):
    # (psi, Pi) share bias 0 and class: the gap |E^psi - E^Pi| shrinks
    kinds = races.KINDS
    gap = lambda x: abs(
        races.normalized_error(kinds["psi"], x, mertens, sieve)
        - races.normalized_error(kinds["Pi"], x, mertens, sieve)
    )
    assert gap(1e7) < gap(1e4)


def test_nine_vector_group_gaps_shrink(sieve, mertens):
    """Max pairwise gap (after bias removal) within the standard and the
    reciprocal groups decreases from x = 1e4 to the grid top."""
    kinds = races.KINDS
    std = ["psi", "theta", "Pi", "pi"]
    rec = ["psi_r", "theta_r", "Pi_r", "pi_r", "pi_ell"]

    def group_gap(names, x):
        vals = [
            races.normalized_error(kinds[n], x, mertens, sieve) - kinds[n].bias
            for n in names
        ]
        return max(vals) - min(vals)

    for names in (std, rec):
        assert group_gap(names, 1e7) < group_gap(names, 1e4)


def test_explicit_formula_bias_at_empty_sum(catalog):
    for name, kind in races.KINDS.items():
        assert races.explicit_formula(kind, 2.0, 0.0, catalog) == float(kind.bias)


def test_explicit_formula_residual_decreases(sieve, mertens, catalog):
    x = 1e6
    e_psi = races.normalized_error(races.KINDS["psi"], x, mertens, sieve)
    residuals = [
        abs(e_psi - races.explicit_formula(races.KINDS["psi"], x, height, catalog))
        for height in (1e2, 1e3, 5e3 if catalog.max_ordinate > 5e3 else 4e3)
    ]
    assert residuals[0] > residuals[1] > residuals[2]


def test_explicit_formula_class_gap_bounded_by_w(catalog):
    """At fixed truncation the standard/reciprocal sums differ by
    2 Re sum x^{i gamma}/(1/4+gamma^2), which is below w in magnitude."""
    from zetarace.special import constants

    w = constants().w
    height = min(catalog.max_ordinate, 5e3)
    for x in (7.5, 1e3, 123456.0):
        gap = races.explicit_formula(
            races.KINDS["psi"], x, height, catalog
        ) - races.explicit_formula(races.KINDS["psi_r"], x, height, catalog)
        assert abs(gap) < w


def test_race_scan_output(sieve, mertens):
    f, g = races.KINDS["psi"], races.KINDS["psi_r"]
    samples = races.race_scan(f, g, [1e4, 1e6], sieve, mertens)
    assert [s.x for s in samples] == [1e4, 1e6]
    assert all(s.f is f and s.g is g for s in samples)
    assert races.race_scan(f, g, [], sieve, mertens) == []


def test_sieve_query_validation():
    with pytest.raises(PreconditionError, match="pre-sorted"):
        races.sieve_counts([100.0, 10.0])
    with pytest.raises(PreconditionError, match="unique"):
        races.sieve_counts([10.0, 10.0])
    with pytest.raises(PreconditionError, match=">= 2"):
        races.sieve_counts([1.0, 10.0])


def test_counting_function_range_errors(sieve):
    with pytest.raises(PreconditionError, match="sieve range exceeded"):
        races.counting_function(races.KINDS["pi"], 1e9, sieve)
    with pytest.raises(PreconditionError, match="not a registered query"):
        races.counting_function(races.KINDS["pi"], 123.0, sieve)


def test_bias_assignment():
    assert races.KINDS["theta"].bias == races.KINDS["pi"].bias == -1
    for name in ("psi", "Pi", "psi_r", "Pi_r"):
        assert races.KINDS[name].bias == 0
    for name in ("theta_r", "pi_r", "pi_ell"):
        assert races.KINDS[name].bias == 1
    assert races.KINDS["psi"].klass is races.FunctionClass.STANDARD
    assert races.KINDS["pi_ell"].klass is races.FunctionClass.RECIPROCAL


def test_mertens_constants_values(mertens):
    # independent references: Mertens-constant literature values
    assert mertens.c0 == pytest.approx(EULER_GAMMA, abs=0.0)
    assert mertens.c0 == pytest.approx(0.5772156649015329, abs=1e-16)
    assert mertens.c1 > mertens.c0
    assert mertens.c1 == pytest.approx(1.3325822757332208817, abs=1e-12)
    assert mertens.c2 == pytest.approx(-0.2614972128476427838, abs=1e-12)


def test_mertens_constants_limit_consistency(mertens):
    again = races.mertens_constants(2 * 10**6)
    assert abs(again.c1 - mertens.c1) <= 1e-12
    assert abs(again.c2 - mertens.c2) <= 1e-12


def test_mertens_limit_validated():
    with pytest.raises(PreconditionError, match="too small"):
        races.mertens_constants(10**5)
