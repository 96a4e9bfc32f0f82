"""Command-line front end: construct geometry files, verify them, and evaluate
the degree bounds.

Machine-readable output (line-delimited JSON, or CSV for scans) goes to
stdout; human summaries go to stderr.  Exit codes: 0 all good, 1 a
verification check failed (witness printed), 2 usage or input-format errors.
"""

from __future__ import annotations

import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import click

from . import __version__, bounds, verifier
from .construction import GeometryFamily, build_family
from .formats import (
    GeometryFormatError,
    dumps_family,
    loads_family,
    parse_plain_incidence,
)
from .gf import NotPrimePowerError, make_field
from .verifier import (
    CountingReport,
    MalformedStructureError,
    OrderParams,
    Witness,
)

CLASS_CHECKS = ("pls", "order", "triangle", "gq", "counting")
FAMILY_CHECKS = ("disjoint", "union")
ALL_CHECKS = CLASS_CHECKS + FAMILY_CHECKS
DEFAULT_CHECKS = ("pls", "order", "triangle", "disjoint", "union")


def _fail_usage(message: str):
    click.echo(f"error: {message}", err=True)
    raise SystemExit(2)


def _emit(obj: dict):
    click.echo(json.dumps(obj))


@click.group()
@click.version_option(version=__version__, prog_name="qpack")
def main():
    """Triangle-free line packings over finite fields: build, verify, bound."""


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

@main.command("construct")
@click.option("--q", "order", type=int, required=True, help="Field order (prime power >= 3).")
@click.option("--count", type=int, default=None, help="Number of classes (default q-1).")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Output file; omit to write the geometry JSON to stdout.")
def cmd_construct(order: int, count: Optional[int], out: Optional[str]):
    """Build the full line-class family over GF(q) and write a geometry file."""
    if order < 3:
        _fail_usage(f"q must be >= 3, got {order}")
    try:
        field = make_field(order)
    except NotPrimePowerError:
        _fail_usage(f"{order} is not a prime power")
    try:
        family = build_family(field, count)
    except ValueError as exc:
        _fail_usage(str(exc))
    metadata = {
        "q": order,
        "count": len(family.classes),
        "tool": f"qpack {__version__}",
    }
    text = dumps_family(family, metadata)
    summary = {
        "points": order**3,
        "classes": len(family.classes),
        "lines_per_class": (order - 1) * order**2,
        "total_lines": len(family.classes) * (order - 1) * order**2,
    }
    if out is None:
        click.echo(text)
        click.echo(f"construct: {json.dumps(summary)}", err=True)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        summary["out"] = out
        _emit(summary)
        click.echo(
            f"construct: wrote {summary['total_lines']} lines in "
            f"{summary['classes']} classes over {summary['points']} points to {out}",
            err=True,
        )


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        _fail_usage(f"cannot read {path}: {exc}")


def _witness_json(witness) -> dict:
    if isinstance(witness, list):
        return {"violations": len(witness), "witnesses": [w.to_json() for w in witness]}
    return witness.to_json()


def _run_structure_checks(task) -> list[dict]:
    """Selected per-structure checks on one incidence structure; picklable so
    classes can be verified in parallel worker processes."""
    scope, g, checks, exhaustive = task
    results = []
    for check in checks:
        start = time.perf_counter()
        record = {"check": check, "scope": scope}
        try:
            if check == "pls":
                outcome = verifier.check_pls(g, exhaustive)
            elif check == "order":
                outcome = verifier.check_order(g, exhaustive)
            elif check == "triangle":
                outcome = verifier.check_triangle_free(g, exhaustive)
            elif check == "gq":
                outcome = verifier.check_gq(g, exhaustive)
            elif check == "counting":
                outcome = verifier.counting_bound(g)
            else:
                raise AssertionError(f"unknown per-structure check {check}")
        except MalformedStructureError as exc:
            record.update(verdict="malformed", reason=str(exc))
            outcome = None
        except (verifier.NotUniformError, verifier.NotTriangleFreeError) as exc:
            record.update(verdict="inapplicable", reason=str(exc))
            outcome = None
        else:
            _record_outcome(record, outcome)
        record["elapsed"] = round(time.perf_counter() - start, 6)
        results.append(record)
    return results


def _record_outcome(record: dict, outcome):
    if outcome is None or (isinstance(outcome, list) and not outcome):
        record["verdict"] = "ok"
    elif isinstance(outcome, OrderParams):
        record.update(verdict="ok", s=outcome.s_order, t=outcome.t_order)
    elif isinstance(outcome, CountingReport):
        record.update(
            verdict="ok" if outcome.holds else "violation",
            points=outcome.num_points,
            s=outcome.s_order,
            t=outcome.t_order,
            bound=outcome.bound,
            equality=outcome.equality,
        )
    elif isinstance(outcome, (Witness, list)):
        record.update(verdict="violation", witness=_witness_json(outcome))
    else:
        raise AssertionError(f"unhandled outcome {outcome!r}")


def _run_family_checks(family: GeometryFamily, checks, exhaustive: bool) -> list[dict]:
    results = []
    for check in checks:
        start = time.perf_counter()
        record = {"check": check, "scope": "family"}
        if check == "disjoint":
            outcome = verifier.check_disjoint_classes(family, exhaustive)
        else:
            outcome = verifier.check_union_pls(family, exhaustive)
        _record_outcome(record, outcome)
        record["elapsed"] = round(time.perf_counter() - start, 6)
        results.append(record)
    return results


def _resolve_jobs(option_value: Optional[int]) -> int:
    env = os.environ.get("QPACK_JOBS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError:
            _fail_usage(f"QPACK_JOBS must be an integer, got {env!r}")
    if option_value is not None:
        return max(1, option_value)
    return os.cpu_count() or 1


@main.command("verify")
@click.argument("input_path", metavar="INPUT")
@click.option("--checks", "checks_option", default=",".join(DEFAULT_CHECKS),
              show_default=True,
              help="Comma-separated subset of: " + ",".join(ALL_CHECKS))
@click.option("--exhaustive", is_flag=True, help="Collect every violation, not just the first.")
@click.option("--jobs", type=int, default=None,
              help="Worker processes for per-class checks (default: all cores; "
                   "QPACK_JOBS overrides).")
def cmd_verify(input_path: str, checks_option: str, exhaustive: bool, jobs: Optional[int]):
    """Verify a geometry JSON file or a plain 'points N' incidence file.

    Prints one JSON line per executed check.  Exits 0 when every selected
    check passes, 1 when any check fails, 2 on unreadable or malformed input.
    """
    checks = tuple(c.strip() for c in checks_option.split(",") if c.strip())
    unknown = [c for c in checks if c not in ALL_CHECKS]
    if unknown or not checks:
        _fail_usage(f"unknown checks {unknown}; valid: {','.join(ALL_CHECKS)}")
    jobs = _resolve_jobs(jobs)

    text = _read_input(input_path)
    stripped = text.lstrip()
    family = None
    structure = None
    try:
        if stripped.startswith("{"):
            family = loads_family(text)
        elif stripped.startswith("points"):
            structure = parse_plain_incidence(text)
        else:
            raise GeometryFormatError("input is neither geometry JSON nor plain incidence")
    except GeometryFormatError as exc:
        _fail_usage(str(exc))

    structure_checks = tuple(c for c in checks if c in CLASS_CHECKS)
    family_checks = tuple(c for c in checks if c in FAMILY_CHECKS)
    results: list[dict] = []

    if family is not None:
        tasks = [
            (f"class:{cls.scale.value}", verifier.class_incidence(cls), structure_checks, exhaustive)
            for cls in family.classes
        ]
        tasks = [t for t in tasks if t[2]]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for batch in pool.map(_run_structure_checks, tasks):
                    results.extend(batch)
        else:
            for task in tasks:
                results.extend(_run_structure_checks(task))
        results.extend(_run_family_checks(family, family_checks, exhaustive))
    else:
        if structure_checks:
            results.extend(_run_structure_checks(("structure", structure, structure_checks, exhaustive)))
        for check in family_checks:
            results.append({"check": check, "scope": "structure", "verdict": "skipped",
                            "reason": "requires a geometry family"})

    for record in results:
        _emit(record)
    counted = [r for r in results if r["verdict"] != "skipped"]
    ok = sum(1 for r in counted if r["verdict"] == "ok")
    click.echo(f"verify: {ok}/{len(counted)} checks ok", err=True)
    if any(r["verdict"] == "malformed" for r in results):
        raise SystemExit(2)
    if any(r["verdict"] not in ("ok", "skipped") for r in results):
        raise SystemExit(1)


# ---------------------------------------------------------------------------
# bound / scan / exponent
# ---------------------------------------------------------------------------

@main.command("bound")
@click.option("--k", type=int, required=True, help="Clique parameter (bounds target K_{k+1}).")
@click.option("--r", type=int, required=True, help="Number of colours.")
@click.option("--hrs-constant", type=float, default=1.0, show_default=True)
@click.option("--bbl-constant", type=float, default=1.0, show_default=True)
@click.option("--eq1-lower-constant", type=float, default=1.0, show_default=True)
@click.option("--eq1-upper-constant", type=float, default=1.0, show_default=True)
def cmd_bound(k, r, hrs_constant, bbl_constant, eq1_lower_constant, eq1_upper_constant):
    """Evaluate every bound at one (k, r) and print the report as JSON."""
    try:
        report = bounds.compare(
            k, r,
            hrs_constant=hrs_constant,
            bbl_constant=bbl_constant,
            eq1_lower_constant=eq1_lower_constant,
            eq1_upper_constant=eq1_upper_constant,
        )
    except bounds.OutOfRangeError as exc:
        _fail_usage(str(exc))
    _emit(report.to_json())


def _parse_range(text: str, name: str) -> range:
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        _fail_usage(f"--{name} must be N or LO..HI, got {text!r}")
    if lo > hi:
        _fail_usage(f"--{name} range {text!r} is empty")
    return range(lo, hi + 1)


@main.command("scan")
@click.option("--k", "k_range", required=True, help="Clique range, e.g. 2..12.")
@click.option("--r", "r_range", required=True, help="Colour range, e.g. 3..12.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="CSV output file; omit for stdout.")
def cmd_scan(k_range: str, r_range: str, out: Optional[str]):
    """Evaluate the bound grid and emit one CSV row per (k, r) cell."""
    ks = _parse_range(k_range, "k")
    rs = _parse_range(r_range, "r")
    if ks.start < 2 or rs.start < 3:
        _fail_usage(f"supported domain is k >= 2 and r >= 3, got k={k_range} r={r_range}")
    rows = [bounds.CSV_HEADER]
    for k in ks:
        for r in rs:
            rows.append(bounds.csv_row(bounds.compare(k, r)))
    text = "\n".join(rows) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        click.echo(f"scan: wrote {len(rows) - 1} rows to {out}", err=True)


@main.command("exponent")
@click.option("--alpha", type=float, default=None, help="Order-shape exponent (>= 1).")
@click.option("--orientation", type=click.Choice(bounds.ORIENTATIONS), default=None,
              help="Which side of the order carries the alpha power (default: both).")
@click.option("--scan", "do_scan", is_flag=True,
              help="Minimize total degree over an alpha grid instead.")
@click.option("--alpha-max", type=float, default=3.0, show_default=True)
@click.option("--alpha-step", type=float, default=0.01, show_default=True)
def cmd_exponent(alpha, orientation, do_scan, alpha_max, alpha_step):
    """Point-count exponents forced by packings of skewed order."""
    if do_scan:
        if alpha_max < 1 or alpha_step <= 0:
            _fail_usage("scan needs --alpha-max >= 1 and --alpha-step > 0")
        grid = [1.0]
        while grid[-1] + alpha_step <= alpha_max + 1e-12:
            grid.append(round(grid[-1] + alpha_step, 12))
        best_alpha, best_degree = bounds.min_total_degree(grid)
        _emit({"alpha": best_alpha, "total_degree": best_degree, "grid_size": len(grid)})
        return
    if alpha is None:
        _fail_usage("provide --alpha or --scan")
    orientations = (orientation,) if orientation else bounds.ORIENTATIONS
    try:
        for direction in orientations:
            _emit(bounds.exponent_analysis(alpha, direction).to_json())
    except bounds.AlphaOutOfRangeError as exc:
        _fail_usage(str(exc))


if __name__ == "__main__":
    main()
