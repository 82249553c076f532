"""_summary_
Command-line interface of the simulator.

Commands:
    physarum run <experiment> [--scene FILE] [--seed N] [--out DIR] [--ticks N]
                 [--stop CONDITION] [--report-only] [--timing]
    physarum oracle <voronoi|delaunay|mst|beta> --sites FILE [--beta X] [--out FILE]
    physarum validate --scene FILE
    physarum experiments
Exit statuses:
    0 success, 1 usage/validation/I-O error, 2 run incomplete, 3 acceptance check failed.
"""

import json
import logging
from typing import Any, List, Optional

import click

from physarum.engine.runner import StopCondition
from physarum.environment.models import GridSpec
from physarum.environment.scene import json_path, load_scene
from physarum.errors import PhysarumError, SchemaViolation
from physarum.geometry import (SiteSet, beta_skeleton, delaunay, euclidean_mst,
                               voronoi_raster)
from physarum.harness.config import Config
from physarum.harness.experiments import EXPERIMENTS, exit_status, run_experiment
from physarum.harness.models import ExperimentName, ExperimentSpec, ReportOptions
from shared.config import configure_logging
from shared.schemas import validator_for

logger = logging.getLogger(__name__)

EXIT_ERROR = 1


def _load_sites(path: str) -> Any:
    """
    Reads a sites document: a bare list of [x, y] pairs or {"sites": [...], "grid": {...}}.
    Raises:
        SchemaViolation: invalid JSON or a schema mismatch.
    """
    with open(path, encoding='utf-8') as handle:
        try:
            document = json.load(handle)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f'invalid JSON: {exc.msg} at line {exc.lineno}') from exc
    errors = sorted(validator_for('sites').iter_errors(document),
                    key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise SchemaViolation(errors[0].message, json_path(errors[0].absolute_path))
    return document if isinstance(document, dict) else {'sites': document}


@click.group()
@click.option('--log-level', default=None, help='Logging level (default: PHYSARUM_LOG_LEVEL).')
def cli(log_level: Optional[str]) -> None:
    """Physarum growth simulator and its classical-geometry oracles."""
    configure_logging(log_level or Config.LOG_LEVEL)


@cli.command()
@click.argument('experiment', type=click.Choice([e.value for e in ExperimentName]))
@click.option('--scene', 'scene_path', type=click.Path(exists=True, dir_okay=False),
              help='Scene document; the experiment default when omitted.')
@click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1), default=0, show_default=True)
@click.option('--out', 'out_dir', default=Config.OUTPUT_DIR, show_default=True)
@click.option('--ticks', type=click.IntRange(min=1), default=None, help='Maximum ticks.')
@click.option('--stop', type=click.Choice([s.value for s in StopCondition]), default=None)
@click.option('--report-only', is_flag=True, help='Write report.json only.')
@click.option('--timing', is_flag=True, help='Include wall-clock seconds in the report.')
@click.pass_context
def run(ctx: click.Context, experiment: str, scene_path: Optional[str], seed: int,
        out_dir: str, ticks: Optional[int], stop: Optional[str], report_only: bool,
        timing: bool) -> None:
    """Run a named experiment and write its artifacts."""
    try:
        scene = load_scene(scene_path) if scene_path else None
        spec = ExperimentSpec(name=ExperimentName(experiment), seed=seed, output_dir=out_dir,
                              scene=scene, stop=StopCondition(stop) if stop else None,
                              max_ticks=ticks,
                              options=ReportOptions(report_only=report_only, timing=timing))
        report = run_experiment(spec)
    except (PhysarumError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    status = 'complete' if report.complete else 'INCOMPLETE'
    failed = sorted(k for k, ok in report.checks.items() if not ok)
    click.echo(f'{experiment}: {status} after {report.ticks} ticks'
               + (f'; failed checks: {", ".join(failed)}' if failed else ''))
    ctx.exit(exit_status(report))


@cli.command()
@click.argument('kind', type=click.Choice(['voronoi', 'delaunay', 'mst', 'beta']))
@click.option('--sites', 'sites_path', required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option('--beta', type=float, default=1.0, show_default=True,
              help='Lune parameter of the beta-skeleton.')
@click.option('--out', 'out_path', default=None,
              help='Output file (required for voronoi; graphs print to stdout otherwise).')
def oracle(kind: str, sites_path: str, beta: float, out_path: Optional[str]) -> None:
    """Compute a classical oracle for a site set."""
    try:
        document = _load_sites(sites_path)
        sites = SiteSet(document['sites'])
        if kind == 'voronoi':
            if 'grid' not in document or out_path is None:
                raise click.UsageError('voronoi needs a "grid" block in the sites file and --out')
            g = document['grid']
            grid = GridSpec(g['width'], g['height'], float(g.get('cell_size_mm', 1.0)))
            voronoi_raster(sites, grid).save_pgm(out_path)
            click.echo(out_path)
            return
        if kind == 'delaunay':
            graph = delaunay(sites)
        elif kind == 'mst':
            graph = euclidean_mst(sites)
        else:
            graph = beta_skeleton(sites, beta)
    except (PhysarumError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    if out_path:
        graph.save_json(out_path)
        click.echo(out_path)
    else:
        click.echo(json.dumps(graph.to_dict(), sort_keys=True))


@cli.command()
@click.option('--scene', 'scene_path', required=True,
              type=click.Path(exists=True, dir_okay=False))
def validate(scene_path: str) -> None:
    """Check a scene document without running it."""
    try:
        scene = load_scene(scene_path)
    except (PhysarumError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f'ok: {scene.grid.width}x{scene.grid.height} grid, {len(scene.sources)} '
               f'sources, {len(scene.inoculation_sites)} inoculation sites')


@cli.command()
def experiments() -> None:
    """List the experiment names."""
    for name, (description, _, _) in EXPERIMENTS.items():
        click.echo(f'{name.value:<16} {description}')


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the `physarum` console script.
    Args:
        argv (Optional[List[str]]): Arguments (default: sys.argv[1:]).
    Returns:
        int: The process exit status.
    """
    try:
        result = cli.main(args=argv, prog_name='physarum', standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.Abort:
        click.echo('Aborted!', err=True)
        return EXIT_ERROR
    return result if isinstance(result, int) else 0
