import json
import logging
import os
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from physarum.engine.models import NodeKind, TubeGraph
from physarum.environment.models import GridSpec
from physarum.environment.pgm import read_pgm
from physarum.errors import SemanticViolation
from physarum.geometry import PlanarGraph, SiteSet, voronoi_raster
from physarum.harness.cli import EXIT_ERROR, main
from physarum.harness.config import Config
from physarum.harness.experiments import (EXIT_INCOMPLETE, EXIT_OK, EXIT_THRESHOLDS,
                                          exit_status, run_experiment)
from physarum.harness.models import ExperimentName, ExperimentSpec, ReportOptions, RunReport
from physarum.harness.render import render_graph_svg, render_raster
from physarum.harness.report import canonical_json, format_float
from physarum.harness.scenes import (bundled_scene, default_document, maze_of, maze_scene,
                                     scene_sites)
import shared.config

SVG = '{http://www.w3.org/2000/svg}'


# -----------------------------------------------------------------------------
# Test Case 1: Floats and key order in canonical JSON
# -----------------------------------------------------------------------------
def test_canonical_json():
    assert format_float(1.0) == '1.0'
    assert format_float(0.1 + 0.2) == '0.3'
    assert format_float(1e-12) == '1e-12'
    assert format_float(float('inf')) == 'null'

    text = canonical_json({'b': 1, 'a': [True, None], 'c': np.float64(2.5)})

    assert text == '{\n  "a": [\n    true,\n    null\n  ],\n  "b": 1,\n  "c": 2.5\n}\n'
    assert json.loads(text) == {'a': [True, None], 'b': 1, 'c': 2.5}


# -----------------------------------------------------------------------------
# Test Case 2: Experiment specs reject bad names, seeds and tick limits
# -----------------------------------------------------------------------------
def test_experiment_spec_validation():
    assert ExperimentSpec(name='maze').name == ExperimentName.MAZE

    with pytest.raises(SemanticViolation) as exc:
        ExperimentSpec(name='bogus')
    assert exc.value.path == 'name'
    with pytest.raises(SemanticViolation):
        ExperimentSpec(name='maze', seed=-1)
    with pytest.raises(SemanticViolation):
        ExperimentSpec(name='maze', max_ticks=0)


# -----------------------------------------------------------------------------
# Test Case 3: Exit statuses follow completion and the acceptance checks
# -----------------------------------------------------------------------------
def test_exit_status():
    assert exit_status(RunReport('voronoi', 0)) == EXIT_OK
    assert exit_status(RunReport('voronoi', 0, checks={'a': True})) == EXIT_OK
    assert exit_status(RunReport('voronoi', 0, checks={'a': False})) == EXIT_THRESHOLDS
    assert exit_status(RunReport('voronoi', 0, complete=False,
                                 checks={'a': False})) == EXIT_INCOMPLETE

    data = RunReport('voronoi', 0, seconds=1.5).to_dict()
    assert 'seconds' not in data
    assert data['incomplete'] is False
    assert RunReport('voronoi', 0, seconds=1.5).to_dict(timing=True)['seconds'] == 1.5


# -----------------------------------------------------------------------------
# Test Case 4: Default scenes for the generated experiments
# -----------------------------------------------------------------------------
def test_default_scenes():
    document = default_document('voronoi', seed=3)
    assert document == default_document('voronoi', seed=3)
    sites = [(s['x'], s['y']) for s in document['inoculation']]
    assert len(sites) == 5
    for (ax, ay), (bx, by) in zip(sites, sites[1:]):
        assert (ax - bx) ** 2 + (ay - by) ** 2 >= 40 ** 2

    scene = maze_scene(seed=2, cells=4)
    maze = maze_of(scene)
    assert maze.is_open(maze.start) and maze.is_open(maze.goal)
    assert len(scene_sites(scene, include_attractants=True)) == 2

    hungry = bundled_scene('self_avoidance', seed=4)
    assert [s.consumable for s in hungry.sources] == [False, True]
    assert hungry.params.seed == 4

    with pytest.raises(SemanticViolation):
        default_document('phase_space')


# -----------------------------------------------------------------------------
# Test Case 5: Rasters are written as binary PGM
# -----------------------------------------------------------------------------
def test_render_raster(tmp_path):
    partition = voronoi_raster(SiteSet([(2, 4), (12, 4)]), GridSpec(15, 9))

    pixels = read_pgm(render_raster(partition, str(tmp_path / 'oracle.pgm')))

    assert pixels.shape == (9, 15)
    assert (pixels[:, 7] == 255).all()
    assert (pixels[:, :7] == 0).all()

    ramp = read_pgm(render_raster(np.array([[0.0, 1.0], [2.0, 4.0]]), str(tmp_path / 'f.pgm')))
    assert ramp.tolist() == [[0.0, 64.0], [128.0, 255.0]]
    flat = read_pgm(render_raster(np.full((2, 2), 3.0), str(tmp_path / 'flat.pgm')))
    assert not flat.any()
    with pytest.raises(TypeError):
        render_raster('not a raster', str(tmp_path / 'bad.pgm'))


# -----------------------------------------------------------------------------
# Test Case 6: Tube SVGs dash abandoned tubes and draw the oracle as lines
# -----------------------------------------------------------------------------
def test_render_graph_svg(tmp_path):
    graph = TubeGraph()
    a = graph.add_node((0, 0), NodeKind.INOCULATION)
    b = graph.add_node((3, 0), NodeKind.FOOD)
    c = graph.add_node((3, 3), NodeKind.FOOD)
    graph.add_edge(a, b, [(0, 0), (1, 0), (2, 0), (3, 0)])
    graph.add_edge(b, c, [(3, 0), (3, 1), (3, 2), (3, 3)], abandoned=True)
    overlay = PlanarGraph([(0, 0), (3, 0), (3, 3)], [(0, 1), (1, 2), (0, 2)])

    path = render_graph_svg(graph, str(tmp_path / 'graph.svg'), overlay, extent=(10.0, 10.0))

    root = ET.parse(path).getroot()
    assert root.tag == f'{SVG}svg'
    polylines = root.findall(f'.//{SVG}polyline')
    assert len(polylines) == 2
    assert [p.get('stroke-dasharray') is not None for p in polylines] == [False, True]
    assert polylines[0].get('points') == '0.000,0.000 1.000,0.000 2.000,0.000 3.000,0.000'
    assert len(root.findall(f'.//{SVG}line')) == 3


# -----------------------------------------------------------------------------
# Test Case 7: The phase-space experiment places every exemplar correctly
# -----------------------------------------------------------------------------
def test_phase_space_experiment(tmp_path):
    report = run_experiment(ExperimentSpec(name='phase_space', output_dir=str(tmp_path)))

    assert exit_status(report) == EXIT_OK
    assert len(report.checks) == 4 and report.thresholds_met
    assert os.path.isfile(tmp_path / 'phase_space.svg')
    with open(tmp_path / 'report.json', encoding='utf-8') as handle:
        data = json.load(handle)
    assert data['metrics']['exemplars']['dense_regular']['quadrant'] == 'Creative'
    assert data['thresholds_met'] is True
    assert 'seconds' not in data

    quiet = tmp_path / 'quiet'
    run_experiment(ExperimentSpec(name='phase_space', output_dir=str(quiet),
                                  options=ReportOptions(report_only=True)))
    assert sorted(os.listdir(quiet)) == ['report.json']


# -----------------------------------------------------------------------------
# Test Case 8: A spanning-tree run on a custom scene, end to end
# -----------------------------------------------------------------------------
def test_spanning_tree_on_custom_scene(tmp_path, straight_scene):
    spec = ExperimentSpec(name='spanning_tree', scene=straight_scene,
                          output_dir=str(tmp_path), max_ticks=100)

    report = run_experiment(spec)

    assert report.complete and report.ticks == 20
    assert report.comparison.tree_length_ratio == pytest.approx(1.0)
    assert report.checks == {'spanning_tree': True, 'tree_length_ratio': True}
    assert report.comparison.self_avoidance_index is None
    assert report.morphology.quadrant.value == 'SavantAutism'
    assert exit_status(report) == EXIT_OK
    for name in ('report.json', 'trace.ndjson', 'occupancy.pgm', 'attractant.pgm',
                 'graph.svg', 'graph.json'):
        assert os.path.isfile(tmp_path / name), name
    with open(tmp_path / 'trace.ndjson', encoding='utf-8') as handle:
        lines = [json.loads(line) for line in handle]
    assert [r['tick'] for r in lines] == list(range(1, 21))
    assert PlanarGraph.load_json(str(tmp_path / 'graph.json')).total_length() == \
        pytest.approx(20.0)


# -----------------------------------------------------------------------------
# Test Case 9: Equal inputs give byte-identical reports
# -----------------------------------------------------------------------------
def test_reports_are_reproducible(tmp_path, straight_scene):
    outputs = []
    for run in ('a', 'b'):
        spec = ExperimentSpec(name='spanning_tree', scene=straight_scene, seed=5,
                              output_dir=str(tmp_path / run), max_ticks=100,
                              options=ReportOptions(report_only=True))
        run_experiment(spec)
        with open(tmp_path / run / 'report.json', 'rb') as handle:
            outputs.append(handle.read())

    assert outputs[0] == outputs[1]


# -----------------------------------------------------------------------------
# Test Case 10: Command-line listing, validation and oracles
# -----------------------------------------------------------------------------
def test_cli_commands(tmp_path, capsys, straight_document):
    assert main(['experiments']) == 0
    listing = capsys.readouterr().out
    assert all(e.value in listing for e in ExperimentName)

    scene_path = tmp_path / 'scene.json'
    scene_path.write_text(json.dumps(straight_document), encoding='utf-8')
    assert main(['validate', '--scene', str(scene_path)]) == 0
    assert 'ok: 40x16 grid, 1 sources, 1 inoculation sites' in capsys.readouterr().out

    broken = tmp_path / 'broken.json'
    straight_document['grid']['width'] = 0
    broken.write_text(json.dumps(straight_document), encoding='utf-8')
    assert main(['validate', '--scene', str(broken)]) == EXIT_ERROR

    sites_path = tmp_path / 'sites.json'
    sites_path.write_text('[[0, 0], [1, 0], [2, 0], [10, 0]]', encoding='utf-8')
    capsys.readouterr()
    assert main(['oracle', 'mst', '--sites', str(sites_path)]) == 0
    assert json.loads(capsys.readouterr().out)['edges'] == [[0, 1], [1, 2], [2, 3]]
    assert main(['oracle', 'voronoi', '--sites', str(sites_path)]) == EXIT_ERROR


# -----------------------------------------------------------------------------
# Test Case 11: Run exit statuses from the command line
# -----------------------------------------------------------------------------
def test_cli_run_exit_statuses(tmp_path, straight_document):
    scene_path = tmp_path / 'scene.json'
    scene_path.write_text(json.dumps(straight_document), encoding='utf-8')
    args = ['run', 'spanning_tree', '--scene', str(scene_path), '--report-only']

    assert main(args + ['--out', str(tmp_path / 'done'), '--ticks', '100']) == EXIT_OK
    assert main(args + ['--out', str(tmp_path / 'short'), '--ticks', '5']) == EXIT_INCOMPLETE
    with open(tmp_path / 'short' / 'report.json', encoding='utf-8') as handle:
        assert json.load(handle)['incomplete'] is True
    assert main(['run', 'bogus']) == EXIT_ERROR
    assert main(['run', 'spanning_tree', '--ticks', '0']) == EXIT_ERROR


# -----------------------------------------------------------------------------
# Test Case 12: The harness config owns the output directory and log level
# -----------------------------------------------------------------------------
def test_harness_config_owns_run_defaults():
    assert ExperimentSpec(name='maze').output_dir == Config.OUTPUT_DIR
    assert not hasattr(shared.config, 'PHYSARUM_OUTPUT_DIR')

    root = logging.getLogger()
    previous = root.level
    try:
        shared.config.configure_logging(Config.LOG_LEVEL)
        assert root.level == getattr(logging, Config.LOG_LEVEL.upper())
        shared.config.configure_logging('debug')
        assert root.level == logging.DEBUG
        shared.config.configure_logging()
        assert root.level == logging.INFO
    finally:
        root.setLevel(previous)
