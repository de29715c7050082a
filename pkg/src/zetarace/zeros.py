"""Validated catalogs of Riemann zeta zero ordinates.

Every other module consumes zeros through this one. A catalog is loaded
from a plain-text table (one ascending ASCII decimal ordinate per line,
LF or CRLF), validated against structural invariants plus the
Riemann-von Mangoldt count, and is immutable afterwards, so it is safe
to share across threads. Strict ascent means the catalog assumes all
zeros are simple, which holds for every zero ever computed.

The text lines are retained on the catalog: tail-constant computations
difference nearly-equal sums and need the ordinates at more digits than
float64 carries, so they re-parse the retained strings at high precision.
A versioned binary cache ("ZCAT") holds only the packed doubles and is a
fast-reload convenience, not a substitute for the text table.
"""

from __future__ import annotations

import hashlib
import io
import math
import struct
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from .errors import CatalogError, CatalogTooShortError, PreconditionError
from .summation import KahanAccumulator

CACHE_MAGIC = b"ZCAT"
CACHE_VERSION = 1

FIRST_ORDINATE = 14.135  # gamma_1 reference, validated to within 0.01
COUNT_TOLERANCE = 2.0  # allowed |N(T) - RvM(T)| over the table's range

DEFAULT_TABLE = "zeta_zeros_10000.txt"


class ZeroSums(NamedTuple):
    """Partial sums over ordinates 0 < gamma <= T.

    s_w: sum 1/(1/4+g^2)        (twice this converges to w)
    s_p: sum g^2/(1/4+g^2)^2    (four times the tail is P_T)
    s_q: sum 1/(1/4+g^2)^2      (four times the tail is Q_T)
    s_r: sum g^2/(1/4+g^2)^4    (32 times the tail is R_T)
    """

    s_w: float
    s_p: float
    s_q: float
    s_r: float


@dataclass(frozen=True)
class ZeroCatalog:
    """Ascending positive zeta-zero ordinates with precision metadata.

    ordinates: float64 array, strictly ascending.
    source_digits: minimum number of decimal places seen in the source.
    source_text: the raw decimal strings when loaded from text, else None
        (binary caches store doubles only).
    """

    ordinates: np.ndarray
    source_digits: int
    source_text: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        self.ordinates.setflags(write=False)

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    @property
    def max_ordinate(self) -> float:
        return float(self.ordinates[-1])

    def up_to(self, t: float) -> np.ndarray:
        """View of ordinates with 0 < gamma <= t; errors if t exceeds the table."""
        if t > self.max_ordinate:
            raise CatalogTooShortError(
                f"catalog too short: need zeros up to {t}, have {self.max_ordinate:.3f}"
            )
        idx = int(np.searchsorted(self.ordinates, t, side="right"))
        return self.ordinates[:idx]

    def fingerprint(self) -> str:
        """SHA-256 of the packed little-endian doubles (stable across text/cache)."""
        return hashlib.sha256(self.ordinates.astype("<f8").tobytes()).hexdigest()


def riemann_vonmangoldt(t: float) -> float:
    """Smooth zero-count estimate (t/2pi) log(t/2pi) - t/2pi + 7/8."""
    if t <= 0:
        return 0.0
    x = t / (2 * math.pi)
    return x * math.log(x) - x + 7 / 8


def _iter_lines(stream: str | Path | io.TextIOBase | Iterable[str]) -> Iterable[str]:
    if isinstance(stream, Path):
        with stream.open("r", encoding="ascii") as fh:
            yield from fh
        return
    if isinstance(stream, str):
        yield from io.StringIO(stream)
        return
    yield from stream


def load_zeros(
    stream: str | Path | io.TextIOBase | Iterable[str], min_digits: int = 9
) -> ZeroCatalog:
    """Parse and validate a text table of zero ordinates.

    stream may be a path, the file content as a string, or any iterable of
    lines. Rejects: non-numeric lines, non-ascending pairs, fewer decimal
    places than min_digits, an empty table, a first ordinate away from
    14.135, and any count inconsistent with the Riemann-von Mangoldt
    estimate by more than +-2.
    """
    texts: list[str] = []
    values: list[float] = []
    digits = None
    for lineno, raw in enumerate(_iter_lines(stream), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            value = float(line)
        except ValueError:
            raise CatalogError(f"line {lineno}: not a number: {line!r}") from None
        if not math.isfinite(value) or value <= 0.0:
            raise CatalogError(f"line {lineno}: ordinate must be a positive real")
        _, _, frac = line.partition(".")
        n_dec = len(frac.rstrip())
        if n_dec < min_digits:
            raise CatalogError(
                f"line {lineno}: only {n_dec} decimal digits, need >= {min_digits}"
            )
        digits = n_dec if digits is None else min(digits, n_dec)
        if values and value <= values[-1]:
            raise CatalogError(f"line {lineno}: not ascending")
        texts.append(line)
        values.append(value)

    if not values:
        raise CatalogError("empty catalog")

    ordinates = np.asarray(values, dtype=np.float64)
    if abs(ordinates[0] - FIRST_ORDINATE) > 0.01:
        raise CatalogError(
            f"first ordinate {ordinates[0]!r} is not within 0.01 of {FIRST_ORDINATE}"
        )
    _check_count_profile(ordinates)
    return ZeroCatalog(ordinates, int(digits), tuple(texts))


def _check_count_profile(ordinates: np.ndarray) -> None:
    """|N(T) - RvM(T)| <= 2 for all T up to the max ordinate.

    N is a step function, so checking both sides of every jump bounds the
    deviation everywhere in between.
    """
    x = ordinates / (2 * math.pi)
    rvm = x * np.log(x) - x + 7 / 8
    m = np.arange(1, ordinates.size + 1, dtype=np.float64)
    worst = max(np.max(np.abs(m - rvm)), np.max(np.abs((m - 1) - rvm)))
    if worst > COUNT_TOLERANCE:
        raise CatalogError(
            f"zero counts deviate from the Riemann-von Mangoldt estimate by "
            f"{worst:.2f} (> {COUNT_TOLERANCE}); table is not a plausible "
            f"initial segment of the zeta zeros"
        )


def count_up_to(catalog: ZeroCatalog, t: float) -> int:
    """Number of ordinates <= t. Errors when t exceeds the table."""
    if t < 0:
        raise PreconditionError("count_up_to requires T >= 0")
    if t > catalog.max_ordinate:
        raise CatalogTooShortError(
            f"catalog too short: count requested at {t}, table ends at "
            f"{catalog.max_ordinate:.3f}"
        )
    return int(np.searchsorted(catalog.ordinates, t, side="right"))


def partial_sums(catalog: ZeroCatalog, t: float) -> ZeroSums:
    """Kahan-compensated partial sums over gamma <= t, in ascending order."""
    g = catalog.up_to(t)
    s2 = 0.25 + g * g
    terms = (
        1.0 / s2,
        (g * g) / (s2 * s2),
        1.0 / (s2 * s2),
        (g * g) / (s2**4),
    )
    out = []
    for arr in terms:
        acc = KahanAccumulator()
        for v in arr.tolist():
            acc.add(v)
        out.append(acc.total)
    return ZeroSums(*out)


def save_cache(catalog: ZeroCatalog, path: Path) -> None:
    """Write the versioned binary cache (magic, version, digits, count, f64 LE)."""
    with Path(path).open("wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<I", CACHE_VERSION))
        fh.write(struct.pack("<I", catalog.source_digits))
        fh.write(struct.pack("<Q", catalog.count))
        fh.write(catalog.ordinates.astype("<f8").tobytes())


def load_cache(path: Path) -> ZeroCatalog:
    """Reload a binary cache; bit-exact round trip of the doubles."""
    raw = Path(path).read_bytes()
    if len(raw) < 20 or raw[:4] != CACHE_MAGIC:
        raise CatalogError(f"{path}: not a zero-catalog cache")
    version = struct.unpack_from("<I", raw, 4)[0]
    if version != CACHE_VERSION:
        raise CatalogError(f"{path}: unsupported cache version {version}")
    digits = struct.unpack_from("<I", raw, 8)[0]
    count = struct.unpack_from("<Q", raw, 12)[0]
    ordinates = np.frombuffer(raw, dtype="<f8", offset=20, count=count).copy()
    if ordinates.size != count:
        raise CatalogError(f"{path}: truncated cache")
    if not np.all(np.diff(ordinates) > 0) or ordinates[0] <= 0:
        raise CatalogError(f"{path}: cached ordinates not strictly ascending")
    return ZeroCatalog(ordinates, int(digits), None)


def default_table_path() -> Path:
    """Path of the packaged ~10k-ordinate table."""
    return Path(str(resources.files("zetarace").joinpath("data", DEFAULT_TABLE)))


@lru_cache(maxsize=4)
def _load_path_cached(path_str: str, min_digits: int) -> ZeroCatalog:
    return load_zeros(Path(path_str), min_digits=min_digits)


def load_default(min_digits: int = 9) -> ZeroCatalog:
    """Load (and memoize) the packaged zero table."""
    return _load_path_cached(str(default_table_path()), min_digits)
