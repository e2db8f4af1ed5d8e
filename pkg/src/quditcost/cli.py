"""Command-line front end: protocol tables, fidelity datasets, QCF analysis.

Subcommands: ``dense``, ``teleport``, ``fidelity``, ``circuit``, ``verify``.
All output is deterministic for a fixed invocation (rows sorted by their keys,
floats printed with 12 significant digits, '.' decimal separator), so repeated
runs produce byte-identical files.  Exit codes: 0 success, 1 verification
failure, 2 usage or parse error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__, dense_coding, noise, teleport
from .circuit import total_cost
from .qcf import QcfError, parse_qcf

AGREEMENT_TOL = 1e-10


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return value


def _render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(rows[0].keys())
    for row in rows:
        writer.writerow([_fmt(v) for v in row.values()])
    return buffer.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)


def _parse_pair(value: str, what: str) -> tuple[int, int]:
    try:
        first, second = value.split(",")
        return int(first), int(second)
    except ValueError:
        raise click.UsageError(f"--{what} expects '<int>,<int>', got {value!r}") from None


@click.group()
@click.version_option(version=__version__, prog_name="quditcost")
def main():
    """Qudit dense-coding / teleportation costs, simulations, and fidelities."""


@main.command()
@click.option("--dim", "-d", type=int, required=True, help="Qudit dimension d >= 2.")
@click.option("--message", "message_", default=None, help="Single message 'm,n'.")
@click.option("--all", "all_", is_flag=True, help="Sweep all d^2 messages.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout.")
def dense(dim, message_, all_, fmt, out):
    """Per-message dense-coding costs, gate sorts, and decoding checks."""
    if (message_ is None) == (not all_):
        raise click.UsageError("choose exactly one of --message or --all")
    rows = dense_coding.table_rows(dim)
    if message_ is not None:
        m, n = _parse_pair(message_, "message")
        rows = [r for r in rows if (r["m"], r["n"]) == (m, n)]
        if not rows:
            raise click.UsageError(f"message {(m, n)} out of range for dim {dim}")
    _emit(_render_rows(rows, fmt), out)


@main.command("teleport")
@click.option("--dim", "-d", type=int, required=True, help="Qudit dimension d >= 2.")
@click.option("--channel", default=None, help="Single Bell channel 'a,b'.")
@click.option("--all", "all_", is_flag=True, help="Sweep all d^2 channels.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the random test message.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def teleport_cmd(dim, channel, all_, seed, fmt, out):
    """Per-channel teleportation costs and seeded round-trip checks."""
    if (channel is None) == (not all_):
        raise click.UsageError("choose exactly one of --channel or --all")
    pairs = [(a, b) for a in range(dim) for b in range(dim)]
    if channel is not None:
        a, b = _parse_pair(channel, "channel")
        if not (0 <= a < dim and 0 <= b < dim):
            raise click.UsageError(f"channel {(a, b)} out of range for dim {dim}")
        pairs = [(a, b)]
    rng = np.random.default_rng(seed)
    msg = teleport.haar_message(dim, rng)
    rows = []
    for a, b in pairs:
        run = teleport.run_teleport(dim, a, b, msg)
        probs_ok = all(
            abs(o.probability - 1.0 / dim**2) <= AGREEMENT_TOL for o in run.outcomes.values()
        )
        rows.append(
            {
                "a": a,
                "b": b,
                "channel": f"phi_{dense_coding.bell_index(dim, a, b)}",
                "quantum_cost": run.report.total_cost,
                "basic_kinds": run.report.basic_kinds,
                "prep_cost": run.report.excluded_cost,
                "round_trip_ok": probs_ok and run.min_overlap >= 1.0 - AGREEMENT_TOL,
            }
        )
    _emit(_render_rows(rows, fmt), out)


_KIND_BY_NAME = {kind.value: kind for kind in noise.NoiseKind}


@main.command()
@click.option(
    "--noise",
    "noise_name",
    type=click.Choice(sorted(_KIND_BY_NAME) + ["all"]),
    default="all",
    show_default=True,
)
@click.option("--dim-range", default="2:16", show_default=True, help="Inclusive d range 'A:B'.")
@click.option("--p-steps", type=int, default=11, show_default=True, help="Grid points on [0, 1].")
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    default=".",
    show_default=True,
    help="Directory for the per-kind CSV files.",
)
def fidelity(noise_name, dim_range, p_steps, out):
    """Emit fidelity-vs-cost CSV grids (one file per noise kind).

    Exits with status 1 if any simulated value drifts from its closed form by
    more than 1e-10.
    """
    try:
        lo, hi = (int(part) for part in dim_range.split(":"))
    except ValueError:
        raise click.UsageError(f"--dim-range expects 'A:B', got {dim_range!r}") from None
    if lo < 2 or hi < lo:
        raise click.UsageError(f"bad dimension range {dim_range!r}")
    kinds = list(noise.NoiseKind) if noise_name == "all" else [_KIND_BY_NAME[noise_name]]
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    failed = False
    for kind in kinds:
        records = noise.sweep(kind, range(lo, hi + 1), p_steps)
        worst = max(rec.mismatch for rec in records)
        path = out_dir / f"fidelity_{kind.value.replace('-', '_')}.csv"
        noise.write_sweep_csv(records, path)
        status = "ok" if worst <= AGREEMENT_TOL else "MISMATCH"
        click.echo(f"{path}: {len(records)} rows, max |sim - closed| = {worst:.3e} [{status}]")
        failed = failed or worst > AGREEMENT_TOL
    if failed:
        sys.exit(1)


@main.command()
@click.argument("qcf_file", type=click.Path(exists=True, dir_okay=False))
def circuit(qcf_file):
    """Parse a QCF file and print its cost report as JSON."""
    text = Path(qcf_file).read_text()
    try:
        parsed = parse_qcf(text)
    except QcfError as exc:
        click.echo(f"{qcf_file}: {exc}", err=True)
        sys.exit(2)
    click.echo(total_cost(parsed).to_json())


@main.command()
@click.option("--dim-max", type=int, default=6, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def verify(dim_max, seed):
    """Run the full invariant suites; exit 1 on any failure."""
    from .verify import run_all

    results = run_all(dmax=dim_max, seed=seed)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        click.echo(f"[{status}] {result.name}: {result.detail}")
    if not all(r.passed for r in results):
        sys.exit(1)
    click.echo(f"{len(results)} checks passed")


if __name__ == "__main__":
    main()
