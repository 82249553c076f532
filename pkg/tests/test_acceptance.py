import pytest

from physarum.harness.experiments import EXIT_OK, exit_status, run_experiment
from physarum.harness.models import ExperimentSpec, ReportOptions
from physarum.harness.scenes import bundled_scene, continuation_scene

pytestmark = pytest.mark.acceptance

SEEDS = range(10)

# experiment -> runs out of ten seeds that must pass every check
SEED_SWEEPS = {
    'voronoi': 9,
    'delaunay': 8,
    'spanning_tree': 9,
    'maze': 8,
}


def run_quietly(name, seed, out_dir, **kwargs):
    return run_experiment(ExperimentSpec(name=name, seed=seed, output_dir=str(out_dir),
                                         options=ReportOptions(report_only=True), **kwargs))


# -----------------------------------------------------------------------------
# Test Case 1: Seeded experiments pass on enough of ten seeds
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('name, required', sorted(SEED_SWEEPS.items()))
def test_seed_sweep(tmp_path, name, required):
    passed = [seed for seed in SEEDS
              if exit_status(run_quietly(name, seed, tmp_path / str(seed))) == EXIT_OK]

    assert len(passed) >= required, f'{name}: passed on seeds {passed}'


# -----------------------------------------------------------------------------
# Test Case 2: Single-scene experiments pass on their default scene
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('name', ['continuation', 'substrate_shape', 'phase_space'])
def test_default_experiment_passes(tmp_path, name):
    report = run_quietly(name, 0, tmp_path)

    failed = sorted(k for k, ok in report.checks.items() if not ok)
    assert report.complete, name
    assert not failed, failed
    assert exit_status(report) == EXIT_OK


# -----------------------------------------------------------------------------
# Test Case 3: Turning continuation off leaves the tube untouched
# -----------------------------------------------------------------------------
def test_continuation_off_has_no_revisits(tmp_path):
    spec = ExperimentSpec(name='continuation', scene=continuation_scene(continuation=False),
                          output_dir=str(tmp_path), options=ReportOptions(report_only=True))

    report = run_experiment(spec)

    assert report.metrics['max_edge_visits'] == 1
    assert report.checks == {'no_revisits': True}


# -----------------------------------------------------------------------------
# Test Case 4: Results do not depend on anything but the seed
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('name', ['voronoi', 'delaunay'])
def test_seeded_runs_are_identical(tmp_path, name):
    reports = []
    for run in ('a', 'b'):
        spec = ExperimentSpec(name=name, seed=9, output_dir=str(tmp_path / run),
                              options=ReportOptions(report_only=True))
        reports.append(run_experiment(spec).to_dict())

    assert reports[0] == reports[1]


# -----------------------------------------------------------------------------
# Test Case 5: After a food source runs out, zones avoid the collapsed tube
# -----------------------------------------------------------------------------
def test_self_avoidance_after_depletion(tmp_path):
    spec = ExperimentSpec(name='spanning_tree', scene=bundled_scene('self_avoidance'),
                          stop='max_ticks', max_ticks=1500, output_dir=str(tmp_path),
                          options=ReportOptions(report_only=True))

    report = run_experiment(spec)

    assert report.metrics['qualifying_steps'] >= 100
    assert report.comparison.self_avoidance_index > 0.3
    assert report.checks['self_avoidance_index'] and report.checks['qualifying_steps']
