"""Unified command-line entry point.

Subcommands: fetch-zeros, eta1, eta2, sample, race, constants.

Option precedence is CLI flag > config file (key = value lines, via
--config) > environment (ZEROS_PATH for the zero table) > built-in
default. Every JSON result embeds the full resolved parameter set and
the catalog fingerprint, and contains no timestamps, so re-running a
command with the same config and catalog reproduces the bytes.

Exit codes: 0 success, 2 configuration/parse error, 3 precondition
violation, 4 catalog error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import urllib.request
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from . import inversion, quadrature, races, sampling, zeros
from .errors import CatalogError, PreconditionError, ZetaRaceError
from .special import constants as special_constants

EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_CATALOG = 4

ODLYZKO_URL = "https://www-users.cse.umn.edu/~odlyzko/zeta_tables/zeros1"


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: command name, parameter map, and paths.

    Built after option merging and module-level validation; the JSON
    payload's command/params sections serialize straight from it.
    """

    command: str
    params: dict[str, Any]
    zeros_path: str | None = None
    out_path: str | None = None


def _parse_config_file(path: Path) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


class ConfigError(ZetaRaceError):
    pass


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _resolve(args: argparse.Namespace, schema: dict[str, tuple]) -> dict[str, Any]:
    """Merge CLI > config file > defaults for the options in schema."""
    file_values: dict[str, str] = {}
    if args.config is not None:
        file_values = _parse_config_file(Path(args.config))
    resolved: dict[str, Any] = {}
    for dest, (typ, default) in schema.items():
        converter = _parse_bool if typ is bool else typ
        cli_value = getattr(args, dest, None)
        if cli_value is not None:
            resolved[dest] = cli_value
        elif dest in file_values:
            try:
                resolved[dest] = converter(file_values[dest])
            except ValueError as exc:
                raise ConfigError(f"config key {dest!r}: {exc}") from exc
        else:
            resolved[dest] = default
    return resolved


def _load_catalog(path: str | None) -> tuple[zeros.ZeroCatalog, str]:
    """Load a catalog from --zeros, ZEROS_PATH, or the packaged table.

    Binary caches are detected by their magic bytes.
    """
    if path is None:
        path = os.environ.get("ZEROS_PATH")
    if path is None:
        return zeros.load_default(), str(zeros.default_table_path())
    p = Path(path)
    if not p.exists():
        raise CatalogError(f"zero table not found: {p}")
    with p.open("rb") as fh:
        magic = fh.read(4)
    if magic == zeros.CACHE_MAGIC:
        return zeros.load_cache(p), str(p)
    return zeros.load_zeros(p), str(p)


def _catalog_meta(catalog: zeros.ZeroCatalog, path: str) -> dict[str, Any]:
    return {
        "path": path,
        "sha256": catalog.fingerprint(),
        "count": catalog.count,
        "max_ordinate": catalog.max_ordinate,
        "source_digits": catalog.source_digits,
    }


def _emit(config: RunConfig, body: dict[str, Any]) -> None:
    payload = {"command": config.command, "params": config.params, **body}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if config.out_path is None:
        sys.stdout.write(text)
    else:
        Path(config.out_path).write_text(text, encoding="utf-8")


def _density_payload(result: quadrature.DensityResult) -> dict[str, Any]:
    payload = {
        "value": result.value,
        "rigorous_halfwidth": result.rigorous_halfwidth,
        "err1": result.err1,
        "err2": result.err2,
        "err3": result.err3,
    }
    payload.update(result.detail)
    return payload


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_eta2(args: argparse.Namespace) -> int:
    schema = {
        "profile": (str, None),
        "epsilon": (float, None),
        "cx": (float, None),
        "cy": (float, None),
        "height": (float, None),
        "jobs": (int, None),
        "zeros": (str, None),
        "out": (str, None),
    }
    opt = _resolve(args, schema)
    base = quadrature.PROFILES.get(opt["profile"] or "paper")
    if base is None:
        raise ConfigError(f"unknown profile {opt['profile']!r} (choices: paper, fast)")
    params = quadrature.QuadratureParams(
        epsilon=opt["epsilon"] if opt["epsilon"] is not None else base.epsilon,
        c_x=opt["cx"] if opt["cx"] is not None else base.c_x,
        c_y=opt["cy"] if opt["cy"] is not None else base.c_y,
        t_height=opt["height"] if opt["height"] is not None else base.t_height,
    )
    quadrature.validate_params(params)
    catalog, path = _load_catalog(opt["zeros"])
    result = quadrature.eta2(params, catalog, n_jobs=opt["jobs"])
    config = RunConfig("eta2", asdict(result.params), path, opt["out"])
    _emit(
        config,
        {
            "catalog": _catalog_meta(catalog, path),
            "result": _density_payload(result),
        },
    )
    return 0


def _cmd_eta1(args: argparse.Namespace) -> int:
    schema = {
        "sigma": (float, 1.0),
        "epsilon": (float, inversion.Eta1Params.epsilon),
        "c": (float, inversion.Eta1Params.c),
        "height": (float, inversion.Eta1Params.t_height),
        "refine": (bool, False),
        "zeros": (str, None),
        "out": (str, None),
    }
    opt = _resolve(args, schema)
    params = inversion.Eta1Params(
        epsilon=opt["epsilon"], c=opt["c"], t_height=opt["height"]
    )
    catalog, path = _load_catalog(opt["zeros"])
    if opt["refine"]:
        result = inversion.refine(opt["sigma"], params, catalog)
    else:
        result = inversion.tail_probability(opt["sigma"], params, catalog)
    config = RunConfig(
        "eta1", {**asdict(result.params), "sigma": opt["sigma"]}, path, opt["out"]
    )
    _emit(
        config,
        {
            "catalog": _catalog_meta(catalog, path),
            "result": _density_payload(result),
        },
    )
    return 0


def _cmd_sample(args: argparse.Namespace) -> int:
    schema = {
        "kind": (str, "v2"),
        "n": (float, 1e6),
        "zeros_used": (int, 2000),
        "seed": (int, 42),
        "jobs": (int, None),
        "zeros": (str, None),
        "out": (str, None),
    }
    opt = _resolve(args, schema)
    catalog, path = _load_catalog(opt["zeros"])
    n = int(opt["n"])
    fns = {
        "v1": sampling.sample_v1,
        "v2": sampling.sample_v2,
        "nine": sampling.sample_nine,
    }
    if opt["kind"] not in fns:
        raise ConfigError(f"unknown sample kind {opt['kind']!r} (choices: v1, v2, nine)")
    batch = fns[opt["kind"]](
        n, opt["zeros_used"], opt["seed"], catalog, n_jobs=opt["jobs"]
    )
    config = RunConfig(
        "sample",
        {
            "kind": opt["kind"],
            "n_samples": batch.n_samples,
            "n_zeros": batch.n_zeros,
            "seed": batch.seed,
        },
        path,
        opt["out"],
    )
    _emit(
        config,
        {
            "catalog": _catalog_meta(catalog, path),
            "result": {
                "estimates": {
                    k: {"mean": m, "stderr": s} for k, (m, s) in batch.estimates.items()
                },
                "extras": batch.extras,
            },
        },
    )
    return 0


def _cmd_race(args: argparse.Namespace) -> int:
    schema = {
        "f": (str, "psi"),
        "g": (str, "psi_r"),
        "xmin": (float, 1e2),
        "xmax": (float, 1e8),
        "points": (int, 400),
        "limit": (int, 10**6),
        "plot": (bool, False),
        "out": (str, "race.csv"),
    }
    opt = _resolve(args, schema)
    for key in ("f", "g"):
        if opt[key] not in races.KINDS:
            raise ConfigError(
                f"unknown function {opt[key]!r} (choices: {', '.join(races.KINDS)})"
            )
    if not (2 <= opt["xmin"] < opt["xmax"]):
        raise PreconditionError(
            f"2 ≤ xmin < xmax violated: xmin = {opt['xmin']!r}, xmax = {opt['xmax']!r}"
        )
    import numpy as np

    grid = np.unique(np.geomspace(opt["xmin"], opt["xmax"], opt["points"]))
    sieve = races.sieve_counts(grid.tolist())
    mertens = races.mertens_constants(opt["limit"])
    samples = races.race_scan(
        races.KINDS[opt["f"]], races.KINDS[opt["g"]], grid.tolist(), sieve, mertens
    )
    out = Path(opt["out"])
    with out.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "ef", "eg"])
        for s in samples:
            writer.writerow([repr(s.x), repr(s.ef), repr(s.eg)])
    if opt["plot"]:
        from .figures import race_scatter_svg

        race_scatter_svg(samples, out.with_suffix(".svg"))
    return 0


def _cmd_constants(args: argparse.Namespace) -> int:
    schema = {"limit": (int, 10**6), "out": (str, None)}
    opt = _resolve(args, schema)
    cset = special_constants()
    mertens = races.mertens_constants(opt["limit"])
    config = RunConfig("constants", {"limit": opt["limit"]}, None, opt["out"])
    _emit(
        config,
        {
            "result": {
                "C0": cset.euler_gamma,
                "w": cset.w,
                "B1": cset.b1,
                "B2": cset.b2,
                "B4": cset.b4,
                "C1": mertens.c1,
                "C2": mertens.c2,
                "provenance": {
                    "C0": "embedded 30-digit literal (scripts/constants_oracle.py)",
                    "w": "2 + C0 - log(4 pi), double precision",
                    "B1": "equal to w",
                    "B2": "closed form in zeta''(0) (embedded literal)",
                    "B4": "closed form in zeta''(0), zeta'''(0), zeta''''(0)",
                    "C1": f"prime sums to {opt['limit']} plus zeta-based remainder",
                    "C2": f"prime sums to {opt['limit']} plus zeta-based remainder",
                },
            },
        },
    )
    return 0


def _cmd_fetch_zeros(args: argparse.Namespace) -> int:
    schema = {
        "count": (int, 10000),
        "url": (str, ODLYZKO_URL),
        "min_digits": (int, 9),
        "out": (str, "zeta_zeros.txt"),
    }
    opt = _resolve(args, schema)
    sys.stderr.write(f"fetching {opt['url']} ...\n")
    with urllib.request.urlopen(opt["url"]) as resp:
        text = resp.read().decode("ascii")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    lines = lines[: opt["count"]]
    content = "\n".join(lines) + "\n"
    catalog = zeros.load_zeros(content, min_digits=opt["min_digits"])
    Path(opt["out"]).write_text(content, encoding="ascii")
    sys.stderr.write(f"wrote {catalog.count} validated ordinates to {opt['out']}\n")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetarace",
        description="Densities and correlations of prime counting error terms",
    )
    parser.add_argument("--config", help="key = value config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta2", help="planar quadrature: eta2 with certified interval")
    p.add_argument("--profile", choices=["paper", "fast"], default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--cx", type=float, default=None)
    p.add_argument("--cy", type=float, default=None)
    p.add_argument("--height", type=float, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--zeros", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_eta2)

    p = sub.add_parser("eta1", help="1-D inversion: Pr(V > sigma)")
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--height", type=float, default=None)
    p.add_argument("--refine", action="store_const", const=True, default=None)
    p.add_argument("--zeros", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_eta1)

    p = sub.add_parser("sample", help="Monte Carlo oracle estimates")
    p.add_argument("--kind", choices=["v1", "v2", "nine"], default=None)
    p.add_argument("--n", type=float, default=None)
    p.add_argument("--zeros-used", dest="zeros_used", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--zeros", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("race", help="sieve two error terms along a grid, emit CSV")
    p.add_argument("--f", default=None)
    p.add_argument("--g", default=None)
    p.add_argument("--xmin", type=float, default=None)
    p.add_argument("--xmax", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--limit", type=int, default=None, help="Mertens prime limit")
    p.add_argument("--plot", action="store_const", const=True, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_race)

    p = sub.add_parser("constants", help="emit the constant set as JSON")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("fetch-zeros", help="download and validate a zero table")
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--url", default=None)
    p.add_argument("--min-digits", dest="min_digits", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_fetch_zeros)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except CatalogError as exc:
        sys.stderr.write(f"catalog error: {exc}\n")
        return EXIT_CATALOG


if __name__ == "__main__":
    raise SystemExit(main())
