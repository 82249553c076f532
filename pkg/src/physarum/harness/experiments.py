"""_summary_
Named experiments: each runs the engine on a scene, compares the outcome with
the matching classical oracle and writes the artifacts and report.

    voronoi          colliding waves on nutrient agar vs the raster Voronoi diagram
    delaunay         tubes between fed inoculation points vs the Delaunay triangulation
    spanning_tree    one plasmodium spanning attractants vs the Euclidean MST
    continuation     re-traversal of established tubes after completion
    maze             dominance-driven path finding vs the grid shortest path
    substrate_shape  growth confined by a nutrient silhouette
    phase_space      exemplar networks on the branching-versus-regularity plane (no engine)

Every engine report also carries the self-avoidance index of the run.

Functions:
    run_experiment(spec) -> RunReport
    exit_status(report) -> int
"""

import logging
import os
import time
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from physarum.engine.events import ndjson_sink
from physarum.engine.graph import extract_graph
from physarum.engine.models import NodeKind, Tag, TubeGraph
from physarum.engine.runner import RunTrace, StopCondition, run_until
from physarum.engine.zones import init_plasmodium
from physarum.environment.fields import SimulationFields
from physarum.environment.models import Scene
from physarum.errors import GeometryError, NoPathError, NonSpanningGraph, UndefinedMetric
from physarum.geometry import (PlanarGraph, delaunay, euclidean_mst, gabriel_graph,
                               grid_shortest_path, voronoi_raster)
from physarum.harness.models import ExperimentName, ExperimentSpec, RunReport
from physarum.harness.render import render_graph_svg, render_phase_space_svg, render_raster
from physarum.harness.report import emit_report
from physarum.harness.scenes import default_scene, maze_of, scene_sites, with_seed
from physarum.morphometrics import (EXPECTED_QUADRANTS, ComparisonReport, as_planar,
                                    bisector_coverage, edge_match, exemplar_graphs,
                                    is_spanning_tree, morphology_report, path_ratio,
                                    self_avoidance_index, site_graph, tree_length_ratio,
                                    tube_path_length)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INCOMPLETE = 2
EXIT_THRESHOLDS = 3

# name -> (description, default stop, default max ticks)
EXPERIMENTS: Dict[ExperimentName, Tuple[str, StopCondition, int]] = {
    ExperimentName.VORONOI: (
        'colliding growth waves on nutrient agar vs the Voronoi diagram',
        StopCondition.FRONTS_EXHAUSTED, 1000),
    ExperimentName.DELAUNAY: (
        'tubes between fed inoculation points vs the Delaunay triangulation',
        StopCondition.GROWTH_SETTLED, 3000),
    ExperimentName.SPANNING_TREE: (
        'one plasmodium spanning five attractants vs the Euclidean MST',
        StopCondition.ALL_SOURCES_COLONIZED, 3000),
    ExperimentName.CONTINUATION: (
        're-traversal of established tubes after completion',
        StopCondition.ALL_SOURCES_COLONIZED, 2000),
    ExperimentName.MAZE: (
        'dominance-driven path finding in a perfect maze vs the shortest path',
        StopCondition.ALL_SOURCES_COLONIZED, 2000),
    ExperimentName.SUBSTRATE_SHAPE: (
        'growth confined by a silhouette-shaped nutrient mask',
        StopCondition.ALL_SOURCES_COLONIZED, 1500),
    ExperimentName.PHASE_SPACE: (
        'exemplar networks on the branching-versus-regularity plane',
        StopCondition.MAX_TICKS, 1),
}


class _Session:
    """
    One engine run of a scene. Phases run back to back on the same state, and
    every tick is appended to output_dir/trace.ndjson unless report_only is set.
    """

    def __init__(self, spec: ExperimentSpec, scene: Scene):
        self.spec = spec
        self.scene = scene
        self.fields = SimulationFields.prepared(scene)
        self.state = init_plasmodium(scene, self.fields)
        self._handle = None
        self.sinks = []
        if not spec.options.report_only:
            self._handle = open(os.path.join(spec.output_dir, 'trace.ndjson'), 'w',
                                encoding='utf-8')
            self.sinks.append(ndjson_sink(self._handle))

    def __enter__(self) -> '_Session':
        return self

    def __exit__(self, *exc) -> None:
        if self._handle is not None:
            self._handle.close()

    def run(self, stop: StopCondition, max_ticks: int) -> RunTrace:
        _, trace = run_until(self.state, self.scene, stop, max_ticks, fields=self.fields,
                             sinks=self.sinks)
        return trace


def _resolve(spec: ExperimentSpec) -> Tuple[Scene, StopCondition, int]:
    _, default_stop, default_ticks = EXPERIMENTS[spec.name]
    if spec.scene is not None:
        scene = with_seed(spec.scene, spec.seed)
    else:
        scene = default_scene(spec.name.value, spec.seed)
    return scene, spec.stop or default_stop, spec.max_ticks or default_ticks


def _path(spec: ExperimentSpec, name: str) -> str:
    return os.path.join(spec.output_dir, name)


def _engine_report(spec: ExperimentSpec, session: _Session, stop: StopCondition,
                   complete: bool) -> Tuple[RunReport, TubeGraph]:
    state = session.state
    graph = extract_graph(state)
    report = RunReport(experiment=spec.name.value, seed=spec.seed, ticks=state.tick,
                       complete=complete, stop=stop.value)
    try:
        index: Optional[float] = self_avoidance_index(state.choices)
    except UndefinedMetric:
        index = None
    report.comparison = ComparisonReport(self_avoidance_index=index)
    try:
        report.morphology = morphology_report(graph, spec.options.thresholds)
    except GeometryError:
        report.morphology = None
    report.metrics.update({
        'zones_created': len(state.zones),
        'live_zones': len(state.live_zones()),
        'colonized_sources': sum(1 for s in state.sources if s.colonized),
        'completed_at': state.completed_at,
        'tube_length_mm': graph.total_length(),
        'qualifying_steps': len(state.choices),
    })
    if index is not None and any(s.consumable for s in session.scene.sources):
        options = spec.options
        report.checks['self_avoidance_index'] = index > options.min_self_avoidance
        report.checks['qualifying_steps'] = len(state.choices) >= options.min_qualifying_steps
    return report, graph


def _write_engine_artifacts(spec: ExperimentSpec, session: _Session, graph: TubeGraph,
                            report: RunReport, overlay: Optional[PlanarGraph] = None) -> None:
    if spec.options.report_only:
        return
    grid = session.scene.grid
    render_raster(session.state.occupancy, _path(spec, 'occupancy.pgm'))
    render_raster(session.fields.attractant(), _path(spec, 'attractant.pgm'))
    render_graph_svg(graph, _path(spec, 'graph.svg'), overlay,
                     extent=(grid.width * grid.cell_size, grid.height * grid.cell_size))
    as_planar(graph).save_json(_path(spec, 'graph.json'))
    report.artifacts.update({'trace': 'trace.ndjson', 'occupancy': 'occupancy.pgm',
                             'attractant': 'attractant.pgm', 'graph_svg': 'graph.svg',
                             'graph_json': 'graph.json'})


def _run_voronoi(spec: ExperimentSpec) -> RunReport:
    scene, stop, max_ticks = _resolve(spec)
    with _Session(spec, scene) as session:
        trace = session.run(stop, max_ticks)
    report, graph = _engine_report(spec, session, stop, trace.complete)
    oracle = voronoi_raster(scene_sites(scene), scene.grid)
    empty = (session.state.occupancy.tag == Tag.EMPTY) & ~scene.substrate.wall
    coverage = bisector_coverage(empty, oracle, spec.options.bisector_tol)
    report.comparison.bisector_coverage = coverage
    report.checks['bisector_coverage'] = coverage >= spec.options.min_bisector_coverage
    _write_engine_artifacts(spec, session, graph, report)
    if not spec.options.report_only:
        oracle.save_pgm(_path(spec, 'voronoi_oracle.pgm'))
        report.artifacts['voronoi_oracle'] = 'voronoi_oracle.pgm'
    return report


def _as_nx(graph: PlanarGraph) -> nx.Graph:
    result = nx.Graph()
    result.add_nodes_from(range(len(graph.nodes)))
    result.add_edges_from(graph.edges)
    return result


def _run_delaunay(spec: ExperimentSpec) -> RunReport:
    scene, stop, max_ticks = _resolve(spec)
    with _Session(spec, scene) as session:
        trace = session.run(stop, max_ticks)
    report, graph = _engine_report(spec, session, stop, trace.complete)
    sites = scene_sites(scene)
    oracle = delaunay(sites)
    sim = site_graph(graph, sites)
    scores = edge_match(sim, oracle, spec.options.node_tol_cells * scene.grid.cell_size)
    report.comparison.edge_precision = scores['precision']
    report.comparison.edge_recall = scores['recall']
    connected = nx.is_connected(_as_nx(sim))
    proximity = gabriel_graph(sites).edge_set | euclidean_mst(sites).edge_set
    unmatched = [e for e in sim.edges if e not in oracle.edge_set]
    sane = all(e in proximity for e in unmatched)
    report.metrics.update({'connected': connected, 'site_edges': len(sim.edges),
                           'unmatched_edges_are_proximity_edges': sane})
    report.checks['edge_precision'] = scores['precision'] >= spec.options.min_edge_precision
    report.checks['connected'] = connected
    report.checks['unmatched_edges_are_proximity_edges'] = sane
    _write_engine_artifacts(spec, session, graph, report, overlay=oracle)
    return report


def _run_spanning_tree(spec: ExperimentSpec) -> RunReport:
    scene, stop, max_ticks = _resolve(spec)
    with _Session(spec, scene) as session:
        trace = session.run(stop, max_ticks)
    report, graph = _engine_report(spec, session, stop, trace.complete)
    sites = scene_sites(scene, include_attractants=True,
                        exclude=session.state.abandoned_sources)
    tree = is_spanning_tree(graph, sites)
    try:
        ratio: Optional[float] = tree_length_ratio(graph, sites)
    except NonSpanningGraph:
        ratio = None
    report.comparison.tree_length_ratio = ratio
    report.metrics['spanning_tree'] = tree
    report.checks['spanning_tree'] = tree
    report.checks['tree_length_ratio'] = (ratio is not None
                                          and ratio <= spec.options.max_tree_length_ratio)
    _write_engine_artifacts(spec, session, graph, report, overlay=euclidean_mst(sites))
    return report


def _run_continuation(spec: ExperimentSpec) -> RunReport:
    scene, stop, max_ticks = _resolve(spec)
    with _Session(spec, scene) as session:
        trace = session.run(stop, max_ticks)
        if trace.complete and spec.options.continuation_ticks > 0:
            session.run(StopCondition.MAX_TICKS, spec.options.continuation_ticks)
    report, graph = _engine_report(spec, session, stop, trace.complete)
    visits = max((e.visits for e in session.state.graph.edges.values()), default=0)
    report.metrics.update({'continuation': scene.params.continuation,
                           'max_edge_visits': visits})
    if scene.params.continuation:
        report.checks['revisits'] = visits >= spec.options.min_revisits
    else:
        report.checks['no_revisits'] = visits <= 1
    _write_engine_artifacts(spec, session, graph, report)
    return report


def _path_graph(cells: List, cell_size: float) -> PlanarGraph:
    nodes = [(x * cell_size, y * cell_size) for x, y in cells]
    return PlanarGraph(nodes, [(i, i + 1) for i in range(len(nodes) - 1)])


def _run_maze(spec: ExperimentSpec) -> RunReport:
    scene, stop, max_ticks = _resolve(spec)
    maze = maze_of(scene)
    with _Session(spec, scene) as session:
        trace = session.run(stop, max_ticks)
    report, graph = _engine_report(spec, session, stop, trace.complete)
    cs = scene.grid.cell_size
    ratio: Optional[float] = None
    overlay: Optional[PlanarGraph] = None
    try:
        overlay = _path_graph(grid_shortest_path(maze, cs), cs)
        start, goal = graph.node_at(maze.start), graph.node_at(maze.goal)
        if trace.complete and start is not None and goal is not None:
            ratio = path_ratio(tube_path_length(graph, start, goal), maze, cs)
    except (NoPathError, NonSpanningGraph) as exc:
        logger.info('no path ratio: %s', exc)
    live = len(session.state.live_zones())
    report.comparison.path_ratio = ratio
    report.checks['single_zone'] = live == 1
    report.checks['path_ratio'] = ratio is not None and ratio <= spec.options.max_path_ratio
    _write_engine_artifacts(spec, session, graph, report, overlay=overlay)
    return report


def _run_substrate_shape(spec: ExperimentSpec) -> RunReport:
    scene, stop, max_ticks = _resolve(spec)
    with _Session(spec, scene) as session:
        trace = session.run(stop, max_ticks)
    report, graph = _engine_report(spec, session, stop, trace.complete)
    rich = scene.substrate.rich(scene.params.nutrient_threshold)
    poor = ~rich & ~scene.substrate.wall
    occupied = session.state.occupancy.tag != Tag.EMPTY
    inside = float(occupied[rich].mean()) if rich.any() else 0.0
    outside = float(occupied[poor].mean()) if poor.any() else 0.0
    ratio = inside / outside if outside > 0.0 else None
    branches = sum(1 for n in graph.nodes.values()
                   if n.kind == NodeKind.BRANCH and not rich[n.position[1], n.position[0]])
    report.metrics.update({'density_inside': inside, 'density_outside': outside,
                           'density_ratio': ratio, 'outside_branch_nodes': branches})
    report.checks['density_ratio'] = (ratio is not None
                                      and ratio >= spec.options.min_density_ratio)
    report.checks['outside_branching'] = branches >= 1
    _write_engine_artifacts(spec, session, graph, report)
    return report


def _run_phase_space(spec: ExperimentSpec) -> RunReport:
    if spec.scene is not None:
        logger.warning('phase_space runs no engine; the given scene is ignored')
    thresholds = spec.options.thresholds
    reports = {name: morphology_report(graph, thresholds)
               for name, graph in exemplar_graphs(spec.seed).items()}
    report = RunReport(experiment=spec.name.value, seed=spec.seed)
    report.metrics['exemplars'] = {name: r.to_dict() for name, r in reports.items()}
    for name, r in reports.items():
        report.checks[f'{name}_quadrant'] = r.quadrant == EXPECTED_QUADRANTS[name]
    if not spec.options.report_only:
        render_phase_space_svg(reports, _path(spec, 'phase_space.svg'), thresholds)
        report.artifacts['phase_space'] = 'phase_space.svg'
    return report


_RUNNERS: Dict[ExperimentName, Callable[[ExperimentSpec], RunReport]] = {
    ExperimentName.VORONOI: _run_voronoi,
    ExperimentName.DELAUNAY: _run_delaunay,
    ExperimentName.SPANNING_TREE: _run_spanning_tree,
    ExperimentName.CONTINUATION: _run_continuation,
    ExperimentName.MAZE: _run_maze,
    ExperimentName.SUBSTRATE_SHAPE: _run_substrate_shape,
    ExperimentName.PHASE_SPACE: _run_phase_space,
}


def run_experiment(spec: ExperimentSpec) -> RunReport:
    """
    Runs the named experiment and writes report.json (plus the artifacts unless
    report_only) into spec.output_dir.
    Args:
        spec (ExperimentSpec): What to run and where to write.
    Returns:
        RunReport: The report; report.complete is False when the stop condition
        was not reached within max_ticks.
    Raises:
        OSError: output_dir cannot be created or written.
        PhysarumError: invalid scene or oracle input.
    """
    os.makedirs(spec.output_dir, exist_ok=True)
    if not os.access(spec.output_dir, os.W_OK):
        raise PermissionError(f'output directory {spec.output_dir} is not writable')
    logger.info('running %s (seed %d) into %s', spec.name.value, spec.seed, spec.output_dir)
    started = time.perf_counter()
    report = _RUNNERS[spec.name](spec)
    report.seconds = time.perf_counter() - started
    report.artifacts['report'] = 'report.json'
    emit_report(report, _path(spec, 'report.json'), timing=spec.options.timing)
    if not report.complete:
        logger.warning('%s stopped before %s', spec.name.value, report.stop)
    elif not report.thresholds_met:
        failed = sorted(k for k, ok in report.checks.items() if not ok)
        logger.warning('%s missed acceptance checks: %s', spec.name.value, ', '.join(failed))
    return report


def exit_status(report: RunReport) -> int:
    """0 when complete with every check met, 2 when incomplete, 3 when a check failed."""
    if not report.complete:
        return EXIT_INCOMPLETE
    return EXIT_OK if report.thresholds_met else EXIT_THRESHOLDS
