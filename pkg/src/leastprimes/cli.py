"""Command-line interface.

Subcommands: constants (series evaluation with pinned reference diffs), scan
(Frobenius statistics of fields from a file), quadratic (brute force over
fundamental discriminants), montecarlo (stochastic check of the series), and
model dump (the local density table).

Exit codes: 0 success, 2 usage error, 3 input error, 4 internal invariant
violation.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

import click

from . import frobscan, localmodel, montecarlo, quadratic, reference, series
from .frobscan import InternalError
from .symgroup import CycleType, cycle_types, parse_class_spec

SERIES_QUANTITIES = (
    "little-n",
    "big-N",
    "big-N-odd-union",
    "quadratic-little-n",
    "pollack",
    "erdos",
)

_CLASSICAL_NAME = {
    "quadratic-little-n": "quadratic-little-n",
    "pollack": "pollack",
    "erdos": "erdos",
}


class InputError(click.ClickException):
    exit_code = 3


class InternalCliError(click.ClickException):
    exit_code = 4


def _fmt(v: Optional[float]) -> str:
    return "" if v is None else f"{v:.8g}"


def _print_table(rows: list[dict], columns: list[str]) -> None:
    if not rows:
        click.echo("(no rows)")
        return
    cells = [[_fmt(r.get(c)) if isinstance(r.get(c), float) else str(r.get(c, "") or "") for c in columns] for r in rows]
    widths = [max(len(col), *(len(row[i]) for row in cells)) for i, col in enumerate(columns)]
    click.echo("  ".join(col.ljust(w) for col, w in zip(columns, widths)))
    click.echo("  ".join("-" * w for w in widths))
    for row in cells:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))


def _print_csv(rows: list[dict], columns: list[str]) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow({c: r.get(c, "") for c in columns})
    click.echo(buf.getvalue(), nl=False)


def _emit(payload: dict, rows: list[dict], columns: list[str], fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        _print_csv(rows, columns)
    else:
        _print_table(rows, columns)


def _parse_class(spec: str, n: int) -> CycleType:
    try:
        return parse_class_spec(spec, n)
    except ValueError as exc:
        raise click.UsageError(f"bad --class value: {exc}") from None


@click.group()
@click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table",
              show_default=True, help="Output format.")
@click.option("--sieve-limit", type=int, default=series.DEFAULT_SIEVE_LIMIT, show_default=True,
              help="Upper bound for the prime sieve backing series evaluation.")
@click.option("--threads", type=int, default=1, show_default=True,
              help="Worker threads for table grids.")
@click.pass_context
def main(ctx, fmt, sieve_limit, threads):
    """Average least primes with prescribed Frobenius behaviour: series
    predictions and three independent cross-checks."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    ctx.obj["sieve_limit"] = sieve_limit
    ctx.obj["threads"] = max(1, threads)


def _series_cell(quantity: str, n: Optional[int], ct: Optional[CycleType],
                 eps: float, sieve_limit: int) -> dict:
    if quantity == "little-n":
        res = series.avg_little_n(n, ct, eps, sieve_limit=sieve_limit)
    elif quantity == "big-N":
        res = series.avg_big_N(n, ct, eps, sieve_limit=sieve_limit)
    elif quantity == "big-N-odd-union":
        res = series.avg_big_N_union_odd(n, eps, sieve_limit=sieve_limit)
    elif quantity == "quadratic-little-n":
        res = series.quadratic_little_n(eps, sieve_limit=sieve_limit)
    elif quantity == "pollack":
        res = series.pollack_constant(eps, sieve_limit=sieve_limit)
    elif quantity == "erdos":
        res = series.erdos_constant(eps, sieve_limit=sieve_limit)
    else:
        raise click.UsageError(f"unknown quantity {quantity!r}")
    if quantity in ("little-n", "big-N"):
        ref = reference.lookup(quantity, n=n, parts=ct.parts_label())
        label = ct.cycle_label()
    elif quantity == "big-N-odd-union":
        ref = reference.lookup("big-N-odd-union", n=n)
        label = "odd-union"
    else:
        ref = reference.lookup("classical", name=_CLASSICAL_NAME[quantity])
        label = None
    row = {
        "quantity": quantity,
        "n": n,
        "class": label,
        "parts": ct.parts_label() if ct is not None else None,
        "value": res.value,
        "reference": ref.value if ref else None,
        "diff": res.value - ref.value if ref else None,
        "terms_used": res.terms_used,
        "last_prime": res.last_prime,
        "tail_estimate": res.tail_estimate,
        "requested_eps": res.requested_eps,
    }
    return row


def _grid_cells(n: int, quantity: Optional[str]) -> list[tuple[str, int, Optional[CycleType]]]:
    # published row order: identity first, then by the reference table listing
    cells = []
    quantities = [quantity] if quantity else ["little-n", "big-N", "big-N-odd-union"]
    for q in quantities:
        if q in ("little-n", "big-N"):
            for row in reference.table(q, n=n):
                cells.append((q, n, row.cycle_type()))
        elif q == "big-N-odd-union":
            cells.append((q, n, None))
        else:
            cells.append((q, None, None))
    return cells


@main.command()
@click.option("--n", type=click.Choice(["3", "4", "5"]), default=None,
              help="Degree of the field family.")
@click.option("--class", "class_spec", default=None,
              help="Conjugacy class: parts ('2,1,1') or cycle notation ('(12)(34)').")
@click.option("--quantity", type=click.Choice(SERIES_QUANTITIES), default=None)
@click.option("--eps", type=float, default=series.DEFAULT_EPS, show_default=True,
              help="Tail bound at which the series truncates.")
@click.option("--all", "emit_all", is_flag=True,
              help="Emit the full table grid for the degree(s).")
@click.option("--plot-dir", type=click.Path(file_okay=False), default=None,
              help="Also render figures into this directory.")
@click.pass_context
def constants(ctx, n, class_spec, quantity, eps, emit_all, plot_dir):
    """Evaluate the prime-series averages; with --all, reproduce the full
    reference tables with diffs."""
    fmt = ctx.obj["format"]
    sieve_limit = ctx.obj["sieve_limit"]
    threads = ctx.obj["threads"]
    if eps <= 0:
        raise click.UsageError("--eps must be positive")

    if emit_all:
        degrees = [int(n)] if n else [3, 4, 5]
        cells: list[tuple[str, Optional[int], Optional[CycleType]]] = []
        if quantity in ("erdos", "pollack", "quadratic-little-n"):
            cells.append((quantity, None, None))
        else:
            for d in degrees:
                cells.extend(_grid_cells(d, quantity))
            if quantity is None and n is None:
                cells.extend((q, None, None) for q in ("erdos", "pollack", "quadratic-little-n"))

        def work(cell):
            q, d, ct = cell
            return _series_cell(q, d, ct, eps, sieve_limit)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(work, cells))
        else:
            rows = [work(c) for c in cells]
    else:
        if quantity is None:
            raise click.UsageError("--quantity is required without --all")
        ct = None
        deg = int(n) if n else None
        if quantity in ("little-n", "big-N"):
            if deg is None or class_spec is None:
                raise click.UsageError(f"--n and --class are required for {quantity}")
            ct = _parse_class(class_spec, deg)
        elif quantity == "big-N-odd-union":
            if deg is None:
                raise click.UsageError("--n is required for big-N-odd-union")
        rows = [_series_cell(quantity, deg, ct, eps, sieve_limit)]

    payload = {"command": "constants", "rows": rows}
    columns = ["quantity", "n", "class", "value", "reference", "diff",
               "terms_used", "last_prime", "tail_estimate"]
    _emit(payload, rows, columns, fmt)
    if plot_dir:
        from . import plots

        by_key: dict[tuple, list[dict]] = {}
        for r in rows:
            by_key.setdefault((r["quantity"], r["n"]), []).append(r)
        for (q, d), group in by_key.items():
            stem = f"constants_{q}" + (f"_n{d}" if d else "")
            path = plots.constants_figure(
                group, Path(plot_dir) / f"{stem}.png",
                title=f"{q}" + (f", degree {d}" if d else ""),
            )
            click.echo(f"figure: {path}", err=True)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(),
              help="JSON-lines or CSV file of field records.")
@click.option("--class", "class_spec", required=True)
@click.option("--quantity", type=click.Choice(["little-n", "big-N"]), required=True)
@click.option("--bound", type=int, default=frobscan.DEFAULT_BOUND, show_default=True,
              help="Scan primes up to this bound before reporting not-found.")
@click.option("--n", "degree_opt", type=click.Choice(["3", "4", "5"]), default=None,
              help="Field degree; inferred from the records when omitted.")
@click.option("--plot-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def scan(ctx, input_path, class_spec, quantity, bound, degree_opt, plot_dir):
    """Scan concrete fields for their least-prime statistics and compare the
    empirical mean with the series prediction."""
    fmt = ctx.obj["format"]
    try:
        records = frobscan.load_records(input_path)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from None
    except (ValueError, OSError) as exc:
        raise InputError(f"cannot read {input_path}: {exc}") from None
    if degree_opt:
        degree = int(degree_opt)
    elif records:
        degree = records[0].degree
    else:
        try:
            degree = sum(int(p) for p in class_spec.split(","))
        except ValueError:
            raise click.UsageError(
                "--n is required when the input is empty and --class is not a parts list"
            ) from None
    ct = _parse_class(class_spec, degree)
    try:
        report = frobscan.aggregate_scan(records, ct, quantity, bound)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except InternalError as exc:
        raise InternalCliError(str(exc)) from None
    payload = {"command": "scan", "report": report.to_dict()}
    rows = [{"field": name, "value": value} for name, value in report.rows]
    summary = {k: v for k, v in report.to_dict().items() if k != "rows"}
    if fmt == "table":
        _print_table(rows, ["field", "value"])
        click.echo("")
        for k in ("fields_total", "fields_decided", "tainted", "not_found"):
            click.echo(f"{k}: {summary[k]}")
        click.echo(f"empirical_mean: {_fmt(summary['empirical_mean'])}")
        click.echo(f"predicted_mean: {_fmt(summary['predicted_mean'])}")
        if summary["deviation"] is not None:
            click.echo(f"deviation: {_fmt(summary['deviation'])}")
    else:
        _emit(payload, rows, ["field", "value"], fmt)
    if plot_dir:
        from . import plots

        values = [v for _, v in report.rows if isinstance(v, int)]
        path = plots.scan_figure(
            values, report.empirical_mean, report.predicted_mean,
            Path(plot_dir) / f"scan_{quantity}.png",
            title=f"{quantity} over {report.fields_total} fields, class ({report.class_parts})",
        )
        click.echo(f"figure: {path}", err=True)


@main.command("quadratic")
@click.option("--x", "limit", type=int, required=True, help="Bound on |D|.")
@click.option("--sign", type=click.Choice(["+", "-", "both"]), default="both", show_default=True)
@click.option("--quantity", type=click.Choice(quadratic.QUANTITIES), required=True)
@click.option("--plot-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def quadratic_cmd(ctx, limit, sign, quantity, plot_dir):
    """Brute-force averages over fundamental discriminants (or prime
    discriminants for erdos-prime)."""
    fmt = ctx.obj["format"]
    if limit < 3:
        raise click.UsageError("--x must be at least 3")
    result, ds, values = quadratic.quadratic_averages(limit, sign, quantity, return_values=True)
    payload = {"command": "quadratic", "result": result.to_dict()}
    rows = [result.to_dict()]
    _emit(payload, rows, ["quantity", "sign", "limit", "count", "mean", "predicted", "deviation"], fmt)
    if plot_dir:
        from . import plots

        path = plots.quadratic_figure(
            ds, values, result.predicted,
            Path(plot_dir) / f"quadratic_{quantity}.png",
            title=f"{quantity}, sign {result.sign}, |D| <= {limit}",
        )
        click.echo(f"figure: {path}", err=True)


@main.command("montecarlo")
@click.option("--n", type=click.Choice(["3", "4", "5"]), required=True)
@click.option("--class", "class_spec", default=None)
@click.option("--quantity", type=click.Choice(montecarlo.QUANTITIES), required=True)
@click.option("--samples", type=int, default=10**6, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--plot-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def montecarlo_cmd(ctx, n, class_spec, quantity, samples, seed, plot_dir):
    """Monte-Carlo estimate of a table cell, with the series value and the
    z-score of the difference."""
    fmt = ctx.obj["format"]
    sieve_limit = ctx.obj["sieve_limit"]
    degree = int(n)
    if samples < 1:
        raise click.UsageError("--samples must be >= 1")
    ct = None
    if quantity in ("little-n", "big-N"):
        if class_spec is None:
            raise click.UsageError(f"--class is required for {quantity}")
        ct = _parse_class(class_spec, degree)
    model = montecarlo.model_for(degree, ct, quantity)
    counts = montecarlo.sample_counts(model, samples, seed)
    est = montecarlo.estimate_from_counts(counts, seed)
    sres = series.first_hit_expectation(model, sieve_limit=sieve_limit)
    z = (est.mean - sres.value) / est.std_error if est.std_error else float("nan")
    row = {
        "quantity": quantity,
        "n": degree,
        "class": ct.cycle_label() if ct else ("odd-union" if quantity == "big-N-odd-union" else None),
        "mean": est.mean,
        "std_error": est.std_error,
        "samples": est.samples,
        "seed": est.seed,
        "series_value": sres.value,
        "z_score": z,
    }
    payload = {"command": "montecarlo", "result": row}
    _emit(payload, [row], ["quantity", "n", "class", "mean", "std_error",
                           "samples", "seed", "series_value", "z_score"], fmt)
    if plot_dir:
        from . import plots

        path = plots.montecarlo_figure(
            counts, est.mean, sres.value,
            Path(plot_dir) / f"montecarlo_{quantity}_n{degree}.png",
            title=f"{quantity} first-hit distribution, degree {degree}"
            + (f", class {ct.cycle_label()}" if ct else ""),
        )
        click.echo(f"figure: {path}", err=True)


@main.group()
def model():
    """Inspect the local probability model."""


@model.command("dump")
@click.option("--n", type=click.Choice(["3", "4", "5"]), required=True)
@click.option("--p", type=int, required=True, help="Prime at which to evaluate.")
@click.pass_context
def model_dump(ctx, n, p):
    """Print the full density table at (n, p) as JSON."""
    from .primes import is_prime

    if not is_prime(p):
        raise click.UsageError(f"--p must be prime, got {p}")
    click.echo(json.dumps(localmodel.model_table(int(n), p), indent=2))


if __name__ == "__main__":
    main()
