"""_summary_
This module defines the data models of the experiment harness.

Models:
    ExperimentName: the closed set of named experiments.
    ReportOptions:
        - bisector_tol (int), node_tol_cells (float): comparison tolerances.
        - thresholds (Thresholds): quadrant splits of the morphology plane.
        - acceptance limits checked to decide the exit status.
        - continuation_ticks (int), report_only (bool), timing (bool).
    ExperimentSpec:
        - name (ExperimentName), scene (Optional[Scene]): None selects the default scene.
        - seed (int), output_dir (str), stop (Optional[StopCondition]), max_ticks (Optional[int]).
        - options (ReportOptions).
    RunReport:
        - experiment, seed, ticks, seconds, complete, stop.
        - comparison (Optional[ComparisonReport]), morphology (Optional[MorphologyReport]).
        - metrics (Dict[str, Any]): experiment-specific measurements.
        - checks (Dict[str, bool]): acceptance checks that applied to the run.
        - artifacts (Dict[str, str]): artifact name -> file name inside output_dir.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from physarum.engine.models import U64_MAX
from physarum.engine.runner import StopCondition
from physarum.environment.models import Scene
from physarum.errors import SemanticViolation
from physarum.harness.config import Config
from physarum.morphometrics.models import ComparisonReport, MorphologyReport, Thresholds


class ExperimentName(str, Enum):
    VORONOI = 'voronoi'
    DELAUNAY = 'delaunay'
    SPANNING_TREE = 'spanning_tree'
    CONTINUATION = 'continuation'
    MAZE = 'maze'
    SUBSTRATE_SHAPE = 'substrate_shape'
    PHASE_SPACE = 'phase_space'


@dataclass(frozen=True)
class ReportOptions:
    bisector_tol: int = Config.BISECTOR_TOLERANCE
    node_tol_cells: float = Config.NODE_TOLERANCE_CELLS
    thresholds: Thresholds = field(default_factory=Thresholds)
    continuation_ticks: int = Config.CONTINUATION_TICKS
    min_bisector_coverage: float = 0.9
    min_edge_precision: float = 0.8
    max_tree_length_ratio: float = 1.5
    max_path_ratio: float = 1.2
    min_density_ratio: float = 5.0
    min_revisits: int = 2
    min_self_avoidance: float = 0.3
    min_qualifying_steps: int = 100
    report_only: bool = False
    timing: bool = False


@dataclass
class ExperimentSpec:
    name: ExperimentName
    seed: int = 0
    output_dir: str = Config.OUTPUT_DIR
    scene: Optional[Scene] = None
    stop: Optional[StopCondition] = None
    max_ticks: Optional[int] = None
    options: ReportOptions = field(default_factory=ReportOptions)

    def __post_init__(self):
        try:
            self.name = ExperimentName(self.name)
        except ValueError as exc:
            names = ', '.join(e.value for e in ExperimentName)
            raise SemanticViolation(f'unknown experiment {self.name!r} (one of {names})',
                                    'name') from exc
        if not 0 <= self.seed <= U64_MAX:
            raise SemanticViolation('must be a 64-bit unsigned integer', 'seed')
        if self.stop is not None:
            self.stop = StopCondition(self.stop)
        if self.max_ticks is not None and self.max_ticks < 1:
            raise SemanticViolation('must be >= 1', 'max_ticks')


@dataclass
class RunReport:
    experiment: str
    seed: int
    ticks: int = 0
    seconds: Optional[float] = None
    complete: bool = True
    stop: Optional[str] = None
    comparison: Optional[ComparisonReport] = None
    morphology: Optional[MorphologyReport] = None
    metrics: Dict[str, Any] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    artifacts: Dict[str, str] = field(default_factory=dict)

    @property
    def thresholds_met(self) -> bool:
        return all(self.checks.values())

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        """
        Plain-data view of the report. Wall-clock seconds are left out unless
        timing is requested, so repeated runs serialize identically.
        """
        data: Dict[str, Any] = {
            'experiment': self.experiment,
            'seed': self.seed,
            'ticks': self.ticks,
            'complete': self.complete,
            'incomplete': not self.complete,
            'stop': self.stop,
            'comparison': None if self.comparison is None else self.comparison.to_dict(),
            'morphology': None if self.morphology is None else self.morphology.to_dict(),
            'metrics': self.metrics,
            'checks': self.checks,
            'thresholds_met': self.thresholds_met,
            'artifacts': self.artifacts,
        }
        if timing:
            data['seconds'] = self.seconds
        return data
