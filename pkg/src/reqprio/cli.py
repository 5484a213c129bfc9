"""Command line interface: prioritize, diagnose, ingest, serve.

Exit codes: 0 success, 1 validation/parse failure, 2 inconsistent
prioritization when --check-deps is set without --repair.
"""

from __future__ import annotations

import os
import sys

import click

from . import service
from .errors import ReqPrioError, ValidationFailed
from .model import load_project, validate
from .oss import fragment_to_canonical_json, ingest_tracker_export

STORE_ENV_VAR = "REQPRIO_STORE"


def _load(project_file: str, normalize: bool):
    project = load_project(project_file, normalize=normalize)
    violations = validate(project)
    if violations:
        raise ValidationFailed(violations)
    return project


def _fail(err: ReqPrioError, exit_code: int = 1):
    if isinstance(err, ValidationFailed):
        click.echo("invalid project:", err=True)
        for v in err.violations:
            click.echo(f"  [{v.code}] {v.message}", err=True)
    else:
        click.echo(f"error [{err.code}]: {err.message}", err=True)
    sys.exit(exit_code)


def _print_ranking(report):
    click.echo(f"{'requirement':<16}{'utility':>12}  rank")
    for rid in report.ranking.order:
        click.echo(f"{rid:<16}{report.utilities[rid]:>12.4f}  "
                   f"{report.ranking.ranks[rid]}")


@click.group()
def main():
    """Utility-based requirements prioritization."""


@main.command()
@click.argument("project_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(service.MODES), default="single",
              show_default=True)
@click.option("--stakeholder", default=None,
              help="Acting stakeholder (required for oss mode with several).")
@click.option("--check-deps", is_flag=True,
              help="Fail (exit 2) if the ranking violates dependencies.")
@click.option("--repair", "do_repair", is_flag=True,
              help="With --check-deps: print a repaired order instead of failing.")
@click.option("--normalize", is_flag=True,
              help="Rescale stakeholder weights to sum to 1 on load.")
def prioritize(project_file, mode, stakeholder, check_deps, do_repair, normalize):
    """Rank the requirements of PROJECT_FILE."""
    try:
        project = _load(project_file, normalize)
        report = service.compute_report(project, mode, stakeholder)
        _print_ranking(report)
        if check_deps:
            diag = service.diagnose_project(project, mode, stakeholder)
            if not diag.consistent:
                click.echo("prioritization is inconsistent with dependencies:")
                for labels in diag.conflicts:
                    click.echo("  conflict {" + ", ".join(labels) + "}")
                if not do_repair:
                    sys.exit(2)
                click.echo("repaired order: "
                           + " ".join(diag.repair.replacement_order))
    except ReqPrioError as err:
        _fail(err)


@main.command()
@click.argument("project_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(service.MODES), default="single",
              show_default=True)
@click.option("--stakeholder", default=None)
@click.option("--normalize", is_flag=True)
def diagnose(project_file, mode, stakeholder, normalize):
    """Report dependency conflicts, diagnoses and a repaired order."""
    try:
        project = _load(project_file, normalize)
        diag = service.diagnose_project(project, mode, stakeholder)
    except ReqPrioError as err:
        _fail(err)
        return
    if diag.consistent:
        click.echo("consistent")
        return
    for labels in diag.conflicts:
        click.echo("conflict {" + ", ".join(labels) + "}")
    for labels in diag.diagnoses:
        click.echo("diagnosis {" + ", ".join(labels) + "}")
    click.echo("repaired order: " + " ".join(diag.repair.replacement_order))


@main.command()
@click.argument("export_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None,
              help="Write the project fragment here instead of stdout.")
def ingest(export_file, output):
    """Convert an issue-tracker export into a project fragment."""
    try:
        with open(export_file, encoding="utf-8") as fh:
            requirements = ingest_tracker_export(fh.read())
    except ReqPrioError as err:
        _fail(err)
        return
    text = fragment_to_canonical_json(requirements)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@main.command()
@click.option("--store", "store_dir", default=None,
              help=f"Project store directory (or ${STORE_ENV_VAR}).")
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(store_dir, port, host):
    """Run the HTTP API."""
    store_dir = store_dir or os.environ.get(STORE_ENV_VAR)
    if not store_dir:
        click.echo(f"error: no store directory; pass --store or set "
                   f"${STORE_ENV_VAR}", err=True)
        sys.exit(1)
    import uvicorn

    from .api import create_app
    uvicorn.run(create_app(store_dir), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
