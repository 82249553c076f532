"""Named experiments, their artifacts and the command-line runner."""

from physarum.harness.experiments import EXPERIMENTS, exit_status, run_experiment
from physarum.harness.models import ExperimentName, ExperimentSpec, ReportOptions, RunReport
from physarum.harness.render import render_graph_svg, render_phase_space_svg, render_raster
from physarum.harness.report import canonical_json, emit_report

__all__ = ['EXPERIMENTS', 'ExperimentName', 'ExperimentSpec', 'ReportOptions', 'RunReport',
           'canonical_json', 'emit_report', 'exit_status', 'render_graph_svg',
           'render_phase_space_svg', 'render_raster', 'run_experiment']
