"""
AnalogMP CLI
============
Main entry point: run audit configs, audit one planner, list planners.
"""

import time
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from audits.runner import RunOutcome, expand_jobs, load_config, run
from config import DEFAULT_SEED, REPORT_PATH
from errors import AnalogMPError, ConfigError, UnknownPlanner
from logger import get_logger, setup_logger
from models import LAW_SUITES, PLANNER_SUITES, RunConfig
from planners.registry import PLANNERS, build_planner, planner_names

app = typer.Typer(help="Analog motion planner audit CLI")
logger = get_logger("main")
console = Console()

EXIT_FAILED = 1
EXIT_USAGE = 2


@app.callback()
def setup(ctx: typer.Context, verbose: bool = False):
    """
    Global setup (logging).
    """
    ctx.obj = {"verbose": verbose}
    setup_logger("DEBUG" if verbose else None)


def _finish(outcome: RunOutcome, start_time: float) -> None:
    duration = time.time() - start_time
    logger.info(f"Run completed in {duration:.2f} seconds.")
    if outcome.exit_code:
        raise typer.Exit(code=EXIT_FAILED)


@app.command("run")
def run_command(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Path to a key = value run file"),
    samples: Optional[int] = typer.Option(None, help="Override trials per suite"),
    seed: Optional[int] = typer.Option(None, help="Override the base seed"),
    pairs: Optional[int] = typer.Option(None, "--pairs", help="Override pairs per ladder rung"),
    report: Optional[Path] = typer.Option(None, help="Override the report path"),
    samples_csv: Optional[Path] = typer.Option(None, help="Write sampled path traces here"),
):
    """
    Run every suite of a config file. Exit 0 if all pass, 1 if any fails, 2 on a bad config.
    """
    start_time = time.time()
    overrides = {
        "samples": samples,
        "seed": seed,
        "pairs_per_rung": pairs,
        "report": report,
        "samples_csv": samples_csv,
        "log_level": "DEBUG" if (ctx.obj or {}).get("verbose") else None,
    }
    try:
        run_config = load_config(config, overrides)
    except ConfigError as e:
        logger.error(f"Invalid config {config}: {e}")
        raise typer.Exit(code=EXIT_USAGE)

    logger.info(f"Starting {len(expand_jobs(run_config))} jobs from {config}...")
    try:
        outcome = run(run_config)
    except AnalogMPError as e:
        logger.error(f"Run aborted: {e}")
        raise typer.Exit(code=EXIT_USAGE)
    _finish(outcome, start_time)


@app.command()
def audit(
    planner: str = typer.Argument(..., help="Registered planner name"),
    suite: List[str] = typer.Option(
        list(PLANNER_SUITES), help="Suite to run; repeat for several"
    ),
    samples: int = typer.Option(1000, help="Trials per suite"),
    pairs: int = typer.Option(100, "--pairs", help="Pairs per ladder rung"),
    seed: int = typer.Option(DEFAULT_SEED, help="Base seed"),
    d: Optional[int] = typer.Option(None, "--d", help="Dimension (planner default if omitted)"),
    metric: str = typer.Option("w1", help="Continuity metric: w1 or lp"),
    report: Path = typer.Option(REPORT_PATH, help="Report path"),
):
    """
    Audit a single planner without a config file.
    """
    start_time = time.time()
    try:
        build_planner(planner, d)
        run_config = RunConfig(
            suites=suite,
            planners=[planner],
            dims=[d],
            samples=samples,
            pairs_per_rung=pairs,
            seed=seed,
            metric=metric,
            report=report,
        )
    except (UnknownPlanner, ValidationError) as e:
        logger.error(f"Invalid audit request: {e}")
        raise typer.Exit(code=EXIT_USAGE)

    outcome = run(run_config)
    for result in outcome.report.reports:
        for check in result.checks:
            status = "[green]PASS[/green]" if check.passed else "[red]FAIL[/red]"
            console.print(f"{status} {result.label} {check.name}: {check.max_error} <= {check.tolerance}")
    _finish(outcome, start_time)


@app.command("list")
def list_planners(
    d: Optional[int] = typer.Option(None, "--d", help="Dimension to instantiate with"),
):
    """
    List registered planners and law suites.
    """
    table = Table(title="Planners")
    table.add_column("name", style="cyan", no_wrap=True)
    table.add_column("space")
    table.add_column("arity", justify="right")
    table.add_column("bound", justify="right")
    table.add_column("bundle")
    table.add_column("control")
    table.add_column("description")

    for name in planner_names():
        entry = PLANNERS[name]
        planner = build_planner(name, d)
        table.add_row(
            name,
            planner.space.name,
            str(planner.arity),
            str(planner.bound),
            ",".join(entry.bundle),
            "yes" if entry.control else "",
            entry.description,
        )
    console.print(table)
    console.print(f"Law suites: {', '.join(LAW_SUITES)}")


if __name__ == "__main__":
    app()
