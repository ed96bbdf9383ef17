"""Typer CLI commands for tautcheck."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import typer

from tautcheck import __version__
from tautcheck.config import ConfigError, SweepConfig, load_config
from tautcheck.orchestrator import EXIT_ERROR, SweepError, SweepOrchestrator, SweepSummary
from tautcheck.series.core import QQ, ModP, SeriesError, prime_field
from tautcheck.series.special import c_derivative_series, c_log_coefficients, c_series
from tautcheck.strata.combinatorics import decorated_monomial_count, partition_count
from tautcheck.strata.relations import Status
from tautcheck.tasks.checker import CheckInput, CheckTask
from tautcheck.tasks.reports import (
    RangesInput,
    RangesTask,
    VaryingInput,
    VaryingTask,
    render_range_report,
    render_record,
    render_varying,
)
from tautcheck.tools.checkpoint import CheckpointError, genus_case_count, load_checkpoint
from tautcheck.tools.records import RecordsError

app = typer.Typer(
    name="tautcheck",
    help="Tautological rings of strata of differentials - relation checks, degree ranges and sweeps",
    no_args_is_help=True,
)


@dataclass
class CliState:
    json_output: bool = False
    config_file: Path | None = None


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure logging for the CLI."""
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%H:%M:%S",
    )
    logging.getLogger("tautcheck").setLevel(level)


def _fail(message: str, code: int = EXIT_ERROR) -> None:
    typer.echo(typer.style(message, fg=typer.colors.RED), err=True)
    raise typer.Exit(code)


def _emit(ctx: typer.Context, data: Any, text: str) -> None:
    if ctx.obj.json_output:
        typer.echo(json.dumps(data, sort_keys=True, indent=2))
    else:
        typer.echo(text)


def _int_list(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    body = text.strip().strip("()")
    if not body:
        return []
    try:
        return [int(token) for token in body.split(",")]
    except ValueError:
        _fail(f"{what} must be a comma-separated list of integers, got '{text}'")


@app.callback()
def main(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose output"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Only log warnings and errors"),
    json_output: bool = typer.Option(False, "--json", help="Print machine-readable JSON"),
    config_file: Optional[Path] = typer.Option(
        None, "--config", help="KEY=VALUE file with TAUTCHECK_* settings"
    ),
) -> None:
    """tautcheck - tautological relations on strata of differentials."""
    setup_logging(verbose, quiet)
    ctx.obj = CliState(json_output=json_output, config_file=config_file)


@app.command()
def version() -> None:
    """Show version information."""
    typer.echo(f"tautcheck v{__version__}")


def _load(ctx: typer.Context, **overrides: Any) -> SweepConfig:
    try:
        return load_config(ctx.obj.config_file, **overrides)
    except ConfigError as e:
        _fail(f"Configuration error:\n{e}")


@app.command()
def config(ctx: typer.Context) -> None:
    """Show the effective sweep configuration."""
    cfg = _load(ctx)
    lines = ["Current configuration:"]
    lines.extend(f"  {key}: {value}" for key, value in cfg.as_dict().items())
    _emit(ctx, cfg.as_dict(), "\n".join(lines))


def _report_summary(ctx: typer.Context, summary: SweepSummary) -> None:
    lines = [
        f"Genus range: {summary.g_min}..{summary.g_max} (ell={summary.ell})",
        f"Cases checked: {summary.total}",
    ]
    for g, count in sorted(summary.per_genus.items()):
        lines.append(f"  g={g}: {count}")
    for status, count in sorted(summary.counts.items()):
        lines.append(f"{status}: {count}")
    lines.append(f"Most primes needed for one case: {summary.max_primes_tried}")
    if not summary.complete:
        lines.append("Sweep paused; run `tautcheck resume` to continue.")
    _emit(ctx, summary.to_dict(), "\n".join(lines))
    if summary.uncertified:
        if not ctx.obj.json_output:
            typer.echo(typer.style("Not certified:", fg=typer.colors.RED))
            for signature in summary.uncertified:
                typer.echo(f"  ({signature})")
        raise typer.Exit(summary.exit_code)
    if summary.all_certified and not ctx.obj.json_output:
        typer.echo(typer.style("Every case is NonVanishing.", fg=typer.colors.GREEN))


def _run_sweep(ctx: typer.Context, resume_only: bool, max_shards: int | None, **overrides: Any) -> None:
    cfg = _load(ctx, **overrides)
    orchestrator = SweepOrchestrator(cfg)
    try:
        if resume_only:
            summary = orchestrator.resume(max_shards=max_shards)
        else:
            summary = orchestrator.sweep(max_shards=max_shards)
    except (CheckpointError, RecordsError, SweepError, OSError) as e:
        _fail(f"Sweep failed: {e}")
    _report_summary(ctx, summary)


@app.command()
def verify(
    ctx: typer.Context,
    g_min: Optional[int] = typer.Option(None, "--g-min", help="Smallest genus"),
    g_max: Optional[int] = typer.Option(None, "--g-max", help="Largest genus"),
    ell: Optional[int] = typer.Option(None, "--ell", help="Order of the differentials"),
    start_prime: Optional[int] = typer.Option(None, "--start-prime", help="First prime to try"),
    max_primes: Optional[int] = typer.Option(
        None, "--max-primes", help="Zero residues tolerated before computing over Q"
    ),
    escalate: Optional[bool] = typer.Option(
        None, "--escalate/--no-escalate", help="Fall back to exact rationals"
    ),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
    shard_size: Optional[int] = typer.Option(None, "--shard-size", help="Partitions per shard"),
    checkpoint: Optional[Path] = typer.Option(None, "--checkpoint", help="Checkpoint file"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="JSON-lines output file"),
    max_shards: Optional[int] = typer.Option(
        None, "--max-shards", help="Stop after this many shards (resume later)"
    ),
) -> None:
    """Check every positive partition of ell*(2g-2) over a genus range."""
    _run_sweep(
        ctx,
        resume_only=False,
        max_shards=max_shards,
        g_min=g_min,
        g_max=g_max,
        ell=ell,
        start_prime=start_prime,
        max_primes_before_rational=max_primes,
        escalate_to_rational=escalate,
        workers=workers,
        shard_size=shard_size,
        checkpoint_path=checkpoint,
        output_path=output,
    )


@app.command()
def resume(
    ctx: typer.Context,
    g_max: Optional[int] = typer.Option(None, "--g-max", help="Largest genus (may be raised)"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes"),
    checkpoint: Optional[Path] = typer.Option(None, "--checkpoint", help="Checkpoint file"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="JSON-lines output file"),
    max_shards: Optional[int] = typer.Option(
        None, "--max-shards", help="Stop after this many shards (resume later)"
    ),
) -> None:
    """Continue an interrupted sweep from its checkpoint.

    Settings the checkpoint was made with (g_min, ell, primes, shard size)
    are read back from it; only g_max may be raised.
    """
    path = checkpoint if checkpoint is not None else _load(ctx).checkpoint_path
    try:
        saved = load_checkpoint(path)
    except CheckpointError as e:
        _fail(f"Sweep failed: {e}")
    if saved is None:
        _fail(f"No checkpoint at {path} to resume from")
    _run_sweep(
        ctx,
        resume_only=True,
        max_shards=max_shards,
        **saved.fingerprint,
        g_max=g_max if g_max is not None else saved.g_max,
        workers=workers,
        checkpoint_path=path,
        output_path=output,
    )


@app.command()
def check(
    ctx: typer.Context,
    mu: str = typer.Option(..., "--mu", help='Signature, e.g. "4,1^2" or "3,1"'),
    ell: int = typer.Option(1, "--ell", help="Order of the differential"),
    rational: bool = typer.Option(False, "--rational", help="Compute the exact coefficient over Q"),
    start_prime: int = typer.Option(10007, "--start-prime", help="First prime to try"),
    max_primes: int = typer.Option(8, "--max-primes", help="Zero residues before computing over Q"),
    escalate: bool = typer.Option(True, "--escalate/--no-escalate", help="Fall back to exact rationals"),
) -> None:
    """Decide whether eta^a vanishes on one stratum."""
    result = CheckTask().process(
        CheckInput(
            signature_text=mu,
            ell=ell,
            rational=rational,
            start_prime=start_prime,
            max_primes=max_primes,
            escalate=escalate,
        )
    )
    if not result.success:
        _fail(f"Check failed: {result.error}")
    record = result.output
    _emit(ctx, record.to_dict(), render_record(record))
    if record.status != Status.NON_VANISHING:
        raise typer.Exit(2)


@app.command()
def ranges(
    ctx: typer.Context,
    mu: str = typer.Option(..., "--mu", help="Signature"),
    ell: int = typer.Option(1, "--ell", help="Order of the differential"),
    specified: Optional[str] = typer.Option(
        None, "--specified", help="Parts to treat as specified (default: every part != 1)"
    ),
    relation: bool = typer.Option(
        True, "--relation/--no-relation", help="Run the relation check for the presentation"
    ),
) -> None:
    """Print every degree range and bound for one signature."""
    result = RangesTask().process(
        RangesInput(
            signature_text=mu,
            ell=ell,
            specified=_int_list(specified, "--specified"),
            check_relation=relation,
        )
    )
    if not result.success:
        _fail(f"Ranges failed: {result.error}")
    _emit(ctx, result.output.to_dict(), render_range_report(result.output))


@app.command()
def sv(
    ctx: typer.Context,
    nu: Optional[str] = typer.Option(None, "--nu", help='Genus-0 quadratic entries, e.g. "2,-1^6"'),
    k: Optional[str] = typer.Option(None, "--k", help="Odd k_1,...,k_m"),
    l: Optional[str] = typer.Option(None, "--l", help="Positive l_1,...,l_n"),
) -> None:
    """Siegel-Veech constant of a hyperelliptic Teichmueller curve and the varying criterion."""
    if nu is None and k is None and l is None:
        _fail("Give either --nu or --k/--l")
    if nu is not None and (k is not None or l is not None):
        _fail("--nu cannot be combined with --k/--l")
    result = VaryingTask().process(
        VaryingInput(
            odd_k=_int_list(k, "--k") or [],
            ells=_int_list(l, "--l") or [],
            nu_text=nu,
        )
    )
    if not result.success:
        _fail(f"Siegel-Veech check failed: {result.error}")
    _emit(ctx, result.output.to_dict(), render_varying(result.output))


@app.command("count-partitions")
def count_partitions(
    ctx: typer.Context,
    total: Optional[int] = typer.Argument(None, help="Count partitions of this number"),
    g_min: int = typer.Option(2, "--g-min", help="Smallest genus (without TOTAL)"),
    g_max: int = typer.Option(12, "--g-max", help="Largest genus (without TOTAL)"),
    ell: int = typer.Option(1, "--ell", help="Order of the differentials"),
) -> None:
    """p(TOTAL), or the sweep's case count per genus."""
    if total is not None:
        if total < 0:
            _fail(f"TOTAL must be non-negative, got {total}")
        count = partition_count(total)
        _emit(ctx, {"total": total, "partitions": count}, str(count))
        return
    if g_min < 2 or g_min > g_max or ell < 1:
        _fail("Need 2 <= g_min <= g_max and ell >= 1")
    per_genus = {g: genus_case_count(ell, g) for g in range(g_min, g_max + 1)}
    lines = [f"g={g}: p({ell * (2 * g - 2)}) = {n}" for g, n in per_genus.items()]
    lines.append(f"Total: {sum(per_genus.values())}")
    _emit(
        ctx,
        {"per_genus": {str(g): n for g, n in per_genus.items()}, "total": sum(per_genus.values())},
        "\n".join(lines),
    )


@app.command("d-count")
def d_count(
    ctx: typer.Context,
    k: int = typer.Option(..., "--k", help="Number of specified points"),
    i: Optional[int] = typer.Option(None, "--i", help="Cohomological degree (default: a table)"),
    max_i: int = typer.Option(12, "--max-i", help="Largest degree in the table"),
) -> None:
    """Monomials in kappa, psi_1..psi_k and eta of cohomological degree i."""
    if k < 0:
        _fail(f"k must be non-negative, got {k}")
    degrees = [i] if i is not None else list(range(0, max_i + 1, 2))
    table = {degree: decorated_monomial_count(k, degree) for degree in degrees}
    _emit(
        ctx,
        {"k": k, "d": {str(degree): n for degree, n in table.items()}},
        "\n".join(f"d({degree}) = {n}" for degree, n in table.items()),
    )


def _coefficient_text(value: Any) -> str:
    return str(value.residue) if isinstance(value, ModP) else str(value)


@app.command("c-series")
def c_series_command(
    ctx: typer.Context,
    order: int = typer.Option(6, "--order", "-n", help="Truncation order"),
    prime: Optional[int] = typer.Option(None, "--prime", "-p", help="Reduce modulo this prime"),
) -> None:
    """Coefficients of C(t), C'(t) and (over Q) log C(t)."""
    try:
        ring = QQ if prime is None else prime_field(prime)
        series = c_series(order, ring)
        derivative = c_derivative_series(order, ring)
        logs = c_log_coefficients(order) if prime is None and order >= 1 else ()
    except (SeriesError, ValueError) as e:
        _fail(f"Cannot build C(t): {e}")
    data = {
        "ring": ring.name,
        "order": order,
        "c": [_coefficient_text(x) for x in series.coefficients()],
        "c_prime": [_coefficient_text(x) for x in derivative.coefficients()],
        "log": [str(x) for x in logs],
    }
    lines = [f"C(t) over {ring.name}:"]
    lines.extend(f"  t^{k}: {x}" for k, x in enumerate(data["c"]))
    lines.append("C'(t):")
    lines.extend(f"  t^{k}: {x}" for k, x in enumerate(data["c_prime"]))
    if logs:
        lines.append("log C(t):")
        lines.extend(f"  c_{k}: {x}" for k, x in enumerate(data["log"], start=1))
    _emit(ctx, data, "\n".join(lines))


if __name__ == "__main__":
    app()
