"""zetarace: logarithmic densities and error-term correlations for
prime counting functions, computed with certified error budgets.

The package reproduces the densities governing sign agreement between
the normalized error terms of nine classical and Mertens-type prime
counting functions: the planar quadrature for eta2 (sign disagreement
between paired standard/reciprocal terms), the one-dimensional
inversion for eta1, a seeded Monte Carlo oracle, and sieve-based
empirical checks of the unconditional inequalities.
"""

from .charfn import (
    TailConstants,
    delta_envelope,
    f_truncated,
    g_corrected,
    mu1_hat,
    mu2_hat,
    tail_constants,
)
from .errors import CatalogError, CatalogTooShortError, PreconditionError, ZetaRaceError
from .inversion import Eta1Params, eta1, refine, tail_bound, tail_probability
from .quadrature import (
    FAST_PROFILE,
    PAPER_PROFILE,
    DensityResult,
    QuadratureParams,
    density_table,
    err1_bound,
    err2_bound,
    err3_bound,
    eta2,
    lattice_sum,
    select_jk,
)
from .races import (
    KINDS,
    FunctionClass,
    MertensConstants,
    PrimeFunctionKind,
    RaceSample,
    counting_function,
    explicit_formula,
    mertens_constants,
    normalized_error,
    race_scan,
    sieve_counts,
)
from .sampling import SampleBatch, sample_nine, sample_v1, sample_v2
from .special import ConstantSet, bessel_j0, constants
from .zeros import (
    ZeroCatalog,
    count_up_to,
    load_cache,
    load_default,
    load_zeros,
    partial_sums,
    save_cache,
)

__version__ = "0.1.0"

__all__ = [
    "CatalogError",
    "CatalogTooShortError",
    "ConstantSet",
    "DensityResult",
    "Eta1Params",
    "FAST_PROFILE",
    "FunctionClass",
    "KINDS",
    "MertensConstants",
    "PAPER_PROFILE",
    "PreconditionError",
    "PrimeFunctionKind",
    "QuadratureParams",
    "RaceSample",
    "SampleBatch",
    "TailConstants",
    "ZeroCatalog",
    "ZetaRaceError",
    "bessel_j0",
    "constants",
    "count_up_to",
    "counting_function",
    "delta_envelope",
    "density_table",
    "err1_bound",
    "err2_bound",
    "err3_bound",
    "eta1",
    "eta2",
    "explicit_formula",
    "f_truncated",
    "g_corrected",
    "lattice_sum",
    "load_cache",
    "load_default",
    "load_zeros",
    "mertens_constants",
    "mu1_hat",
    "mu2_hat",
    "normalized_error",
    "partial_sums",
    "race_scan",
    "refine",
    "sample_nine",
    "sample_v1",
    "sample_v2",
    "save_cache",
    "select_jk",
    "sieve_counts",
    "tail_bound",
    "tail_constants",
    "tail_probability",
]
