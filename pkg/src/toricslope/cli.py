"""Batch front end: JSON config in, JSON report (and optional CSV) out.

Usage:
    toricslope --config run.json
    toricslope --config run.json --mode both --u-grid 8,10,12,14,16 --out report.json --csv curve.csv

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from .diagram import LatticePolygon, as_fraction, build_diagram
from .errors import ConsistencyError, DiagramError, PolygonError, QuadratureError
from .functional import QuadParams, energy_sample, slope_fit
from .quadrature import DEFAULT_REL_TOL
from .slope import compute_slope

log = logging.getLogger("toricslope")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

MODES = ("formula", "oracle", "both")
DEFAULT_U_GRID = (8.0, 10.0, 12.0, 14.0, 16.0)
AGREEMENT_TOL = 2e-2
CSV_COLUMNS = ("u", "F0", "J", "mixed_i0", "mixed_i1", "mixed_i2")


class ConfigError(ValueError):
    """Bad configuration; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    polygon_vertices: tuple
    weights: tuple  # ((p, r), Fraction) pairs in input order
    mode: str = "formula"
    rel_tol: float = DEFAULT_REL_TOL
    u_grid: tuple = DEFAULT_U_GRID
    out: str | None = None
    csv: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"mode: expected one of {MODES}, got {self.mode!r}")
        if not 0 < self.rel_tol < 1:
            raise ConfigError(f"rel_tol: must lie in (0, 1), got {self.rel_tol}")
        if self.mode != "formula":
            grid = self.u_grid
            if len(grid) < 3 or any(b <= a for a, b in zip(grid, grid[1:])):
                raise ConfigError("u_grid: needs >= 3 strictly increasing values")
            if grid[-1] < 8:
                raise ConfigError("u_grid: largest value must be at least 8")

    @property
    def weight_map(self) -> dict:
        return dict(self.weights)

    def to_dict(self) -> dict:
        out = {
            "polygon_vertices": [list(v) for v in self.polygon_vertices],
            "weights": [{"point": list(pt), "q": str(q)} for pt, q in self.weights],
            "mode": self.mode,
            "rel_tol": self.rel_tol,
            "u_grid": list(self.u_grid),
        }
        if self.out is not None:
            out["out"] = self.out
        if self.csv is not None:
            out["csv"] = self.csv
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config: top level must be a JSON object")
        unknown = set(data) - {"polygon_vertices", "weights", "mode", "rel_tol", "u_grid", "out", "csv"}
        if unknown:
            raise ConfigError(f"config: unknown keys {sorted(unknown)}")
        try:
            verts = tuple(tuple(int(c) for c in v) for v in data["polygon_vertices"])
        except KeyError:
            raise ConfigError("polygon_vertices: missing") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"polygon_vertices: {exc}") from None
        if "weights" not in data:
            raise ConfigError("weights: missing")
        weights = []
        for k, item in enumerate(data["weights"]):
            try:
                pt = tuple(int(c) for c in item["point"])
                q = _parse_rational(item["q"], f"weights[{k}].q")
            except (KeyError, TypeError) as exc:
                raise ConfigError(f"weights[{k}]: malformed entry ({exc})") from None
            if len(pt) != 2:
                raise ConfigError(f"weights[{k}].point: expected [p, r]")
            weights.append((pt, q))
        seen = [pt for pt, _ in weights]
        dups = sorted({pt for pt in seen if seen.count(pt) > 1})
        if dups:
            raise ConfigError(f"weights: repeated points {dups}")
        try:
            rel_tol = float(data.get("rel_tol", DEFAULT_REL_TOL))
            grid = tuple(float(x) for x in data.get("u_grid", DEFAULT_U_GRID))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"rel_tol/u_grid: {exc}") from None
        return cls(
            polygon_vertices=verts,
            weights=tuple(weights),
            mode=data.get("mode", "formula"),
            rel_tol=rel_tol,
            u_grid=grid,
            out=data.get("out"),
            csv=data.get("csv"),
        )

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})") from None
        return cls.from_dict(data)


def _parse_rational(value, name: str) -> Fraction:
    if isinstance(value, bool):
        raise ConfigError(f"{name}: booleans are not weights")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"{name}: cannot parse {value!r} as a rational") from None
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # keep the decimal the user wrote, but say so if binary floats cannot hold it
        exact = Fraction(repr(value))
        if exact != Fraction(value):
            log.warning("%s: %r is not dyadic; using the decimal value %s", name, value, exact)
        return exact
    raise ConfigError(f"{name}: expected a number or a string like '1/2'")


def _formula_block(diagram, rel_tol) -> dict:
    return compute_slope(diagram, rel_tol).to_dict()


def _oracle_block(diagram, u_grid, rel_tol):
    quad = QuadParams(rel_tol=max(rel_tol, 1e-9))
    rows = []
    for u in u_grid:
        smp = energy_sample(diagram, float(u), quad)
        rows.append({
            "u": smp.u, "F0": smp.f0, "J": smp.j,
            "mixed_i0": smp.mixed[0], "mixed_i1": smp.mixed[1], "mixed_i2": smp.mixed[2],
            "volume_uu": smp.volume_uu, "error": smp.error, "tail": smp.tail,
        })
    fits = {}
    for key in ("F0", "J", "mixed_i0", "mixed_i1", "mixed_i2"):
        fit = slope_fit([(row["u"], row[key]) for row in rows])
        fits[key] = {"slope": fit.slope, "stderr": fit.stderr, "non_monotone": fit.non_monotone}
    return {"samples": rows, "fits": fits}


def run(config: RunConfig) -> dict:
    """Execute a configuration and return the report as a dict.

    Raises PolygonError/DiagramError/ConfigError on bad input and
    QuadratureError/ConsistencyError on numerical failure.
    """
    polygon = LatticePolygon(config.polygon_vertices)
    diagram = build_diagram(polygon, config.weight_map)
    # output paths are not inputs; leaving them out keeps report bodies comparable
    echoed = {k: v for k, v in config.to_dict().items() if k not in ("out", "csv")}
    report = {
        "config": echoed,
        "diagram": {
            "points": [[pt.p, pt.r, str(pt.q)] for pt in diagram.points],
            "volume": str(diagram.volume),
            "shift": str(diagram.shift),
        },
    }
    if config.mode in ("formula", "both"):
        report["formula"] = _formula_block(diagram, config.rel_tol)
    if config.mode in ("oracle", "both"):
        report["oracle"] = _oracle_block(diagram, config.u_grid, config.rel_tol)
    if config.mode == "both":
        mu = report["formula"]["mu"]
        slope = report["oracle"]["fits"]["F0"]["slope"]
        gap = abs(slope - mu) / max(abs(mu), 1e-300)
        report["comparison"] = {
            "formula_mu": mu,
            "oracle_slope": slope,
            "relative_gap": gap,
            "tolerance": AGREEMENT_TOL,
            "agree": bool(gap <= AGREEMENT_TOL),
        }
    return report


def write_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report["oracle"]["samples"]:
        writer.writerow([repr(float(row[c])) for c in CSV_COLUMNS])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricslope",
        description="Asymptotic slope of the Aubin-Yau functional on a toric surface.",
    )
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--mode", choices=MODES, help="override the config mode")
    parser.add_argument("--rel-tol", type=float, help="face-integral relative tolerance")
    parser.add_argument("--u-grid", help="comma-separated u values for the oracle")
    parser.add_argument("--out", help="write the JSON report here (default stdout)")
    parser.add_argument("--csv", help="write the oracle curve table here")
    parser.add_argument("--verbose", "-v", action="store_true")
    return parser


def _error(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}, sort_keys=True)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = RunConfig.from_json(Path(args.config).read_text())
        overrides = {}
        if args.mode:
            overrides["mode"] = args.mode
        if args.rel_tol is not None:
            overrides["rel_tol"] = args.rel_tol
        if args.u_grid:
            try:
                overrides["u_grid"] = tuple(float(x) for x in args.u_grid.split(","))
            except ValueError:
                raise ConfigError(f"u_grid: cannot parse {args.u_grid!r}") from None
        if args.out:
            overrides["out"] = args.out
        if args.csv:
            overrides["csv"] = args.csv
        if overrides:
            config = replace(config, **overrides)
    except OSError as exc:
        print(_error("config", f"config: {exc}"), file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(_error("config", str(exc)), file=sys.stderr)
        return EXIT_CONFIG

    log.info("running mode=%s rel_tol=%g", config.mode, config.rel_tol)
    try:
        report = run(config)
    except (ConfigError, PolygonError, DiagramError) as exc:
        print(_error("config", str(exc)), file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, ConsistencyError) as exc:
        print(_error("numerical", str(exc)), file=sys.stderr)
        return EXIT_NUMERIC

    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    if config.csv:
        if "oracle" not in report:
            log.warning("--csv ignored: no oracle samples in mode %s", config.mode)
        else:
            Path(config.csv).write_text(write_csv(report))
    if "comparison" in report:
        cmp = report["comparison"]
        log.info("formula mu=%.10g oracle slope=%.10g agree=%s",
                 cmp["formula_mu"], cmp["oracle_slope"], cmp["agree"])
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
