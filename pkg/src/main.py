#!/usr/bin/env python3
"""Main entry point for the reserve-matching command line."""

import logging
import random
import sys
from pathlib import Path
from typing import List, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from src.baseline.smart_reserve import (
    run_smart_reserve_exhaustive,
    run_smart_reserve_poly,
    smart_reserve_summary,
)
from src.collectors.instance_file import (
    as_instance,
    load_instance,
    load_profile,
    parse_precedence,
)
from src.config.settings import Settings
from src.generators.report import (
    ResultReport,
    dump_counterexample,
    render,
    verification_to_dict,
)
from src.mechanisms.deferred_acceptance import run_deferred_acceptance
from src.mechanisms.sequential import run_sequential_reserve
from src.models.baseline import BaselineInstance, SmartConfig
from src.models.errors import ReserveError
from src.models.verification import VerificationReport
from src.oracle.verification import PROPERTY_NAMES, VERIFIERS, resolve_property, run_verification

logger = logging.getLogger(__name__)

MECHANISMS = ["sequential", "da", "smart-poly", "smart-exhaustive"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFICATION = 2


def setup_logging(level: str) -> None:
    """Diagnostics go to standard error; standard output carries only the report."""
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=False)],
        force=True,
    )


def _run_mechanism(
    loaded,
    mechanism: str,
    precedence: Optional[str],
    profile: Optional[Path],
    n: int,
    trace: bool,
    settings: Settings,
) -> ResultReport:
    instance = as_instance(loaded)

    if mechanism == "sequential":
        if not precedence:
            raise ReserveError("--precedence is required for the sequential mechanism")
        result = run_sequential_reserve(instance, parse_precedence(precedence, instance))
        return ResultReport(
            mechanism=mechanism,
            instance=instance,
            matching=result.matching,
            metadata={"precedence": list(result.precedence.sequence)},
            trace=[
                {"step": s.step, "category": s.category, "patients": list(s.patients)}
                for s in result.steps
            ] if trace else None,
        )

    if mechanism == "da":
        if not profile:
            raise ReserveError("--profile is required for deferred acceptance")
        result = run_deferred_acceptance(instance, load_profile(profile, instance), trace=trace)
        return ResultReport(
            mechanism=mechanism,
            instance=instance,
            matching=result.matching,
            metadata={"proposals": result.proposals},
            trace=[
                {
                    "round": r.number,
                    "applications": {str(c): list(ps) for c, ps in r.applications.items()},
                    "rejected": list(r.rejected),
                }
                for r in result.rounds
            ] if trace else None,
        )

    if not isinstance(loaded, BaselineInstance):
        raise ReserveError("smart reserve matching needs a baseline instance file")
    config = SmartConfig(n=n)
    if mechanism == "smart-poly":
        result = run_smart_reserve_poly(loaded, config)
    else:
        result = run_smart_reserve_exhaustive(loaded, config, settings.size_guard())
    summary = smart_reserve_summary(loaded, result.matching)
    extra = {
        "summary": {
            "unreserved": summary.unreserved,
            "beneficiary_assigned": summary.beneficiary_assigned,
            "matched": summary.matched,
        }
    }
    if mechanism == "smart-exhaustive":
        extra["matchings"] = list(result.matchings)
    return ResultReport(
        mechanism=mechanism,
        instance=instance,
        matching=result.matching,
        metadata={"n": n, "mode": loaded.mode.value},
        trace=result.trace.to_dict() if trace else None,
        extra=extra,
    )


def _verify_instance(name: str, loaded, settings: Settings, seed: int) -> VerificationReport:
    """Check one property on a given instance instead of random ones."""
    verifier = VERIFIERS[resolve_property(name)]
    if verifier.baseline and not isinstance(loaded, BaselineInstance):
        raise ReserveError(f"property {name!r} needs a baseline instance file")
    subject = loaded if verifier.baseline else as_instance(loaded)
    return verifier.check(subject, settings, random.Random(seed))


@click.command()
@click.option("--instance", "instance_path", type=click.Path(path_type=Path), help="Instance file (JSON)")
@click.option("--mechanism", type=click.Choice(MECHANISMS), help="Mechanism to run")
@click.option("--precedence", help="Comma-separated order of precedence (sequential)")
@click.option("--profile", type=click.Path(path_type=Path), help="Preference profile file (da)")
@click.option("--n", "n", type=int, default=0, show_default=True,
              help="Unreserved units processed first (smart)")
@click.option("--verify", type=click.Choice(PROPERTY_NAMES), help="Property to verify")
@click.option("--trace", is_flag=True, help="Include the step trace in the report")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of random verification instances")
@click.option("--format", "output_format", type=click.Choice(["json", "text"]), help="Report format")
@click.option("--config", type=click.Path(exists=True, path_type=Path), help="Path to configuration file")
@click.option("--dump", type=click.Path(path_type=Path), help="Write a verification counterexample here")
@click.option("--verbose", is_flag=True, help="Debug logging on standard error")
@click.pass_context
def cli(
    ctx: click.Context,
    instance_path: Optional[Path],
    mechanism: Optional[str],
    precedence: Optional[str],
    profile: Optional[Path],
    n: int,
    verify: Optional[str],
    trace: bool,
    seed: int,
    output_format: Optional[str],
    config: Optional[Path],
    dump: Optional[Path],
    verbose: bool,
) -> None:
    """Reserve-system matching engine: run a mechanism or verify a property."""
    try:
        settings = Settings.load(config)
    except ReserveError as e:
        setup_logging("WARNING")
        logger.error("Configuration error: %s", e)
        ctx.exit(EXIT_INPUT)
    setup_logging("DEBUG" if verbose else settings.log_level)
    output_format = output_format or settings.output_format

    try:
        if verify:
            if instance_path:
                report = _verify_instance(verify, load_instance(instance_path), settings, seed)
            else:
                report = run_verification(verify, settings, seed)
            click.echo(render(verification_to_dict(report), output_format))
            if not report.holds:
                logger.warning("%s failed: %s", verify, report.message)
                if dump:
                    dump_counterexample(report, dump)
                ctx.exit(EXIT_VERIFICATION)
            ctx.exit(EXIT_OK)

        if not instance_path or not mechanism:
            raise ReserveError("--instance and --mechanism are required unless --verify is given")
        loaded = load_instance(instance_path)
        result = _run_mechanism(loaded, mechanism, precedence, profile, n, trace, settings)
        click.echo(render(result.to_dict(), output_format))
    except ReserveError as e:
        logger.error("%s: %s", type(e).__name__, e)
        ctx.exit(EXIT_INPUT)
    ctx.exit(EXIT_OK)


def run(argv: Optional[List[str]] = None) -> int:
    """Invoke the command line and return its exit code."""
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    return code if isinstance(code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
