"""_summary_
This module defines the report types produced by the morphometrics.

Models:
    ComparisonReport:
        - bisector_coverage, edge_precision, edge_recall (Optional[float], fractions).
        - tree_length_ratio, path_ratio (Optional[float]).
        - self_avoidance_index (Optional[float]): None when undefined.
    Quadrant: Creative | SavantAutism | SevereAutism | Schizophrenic.
    Thresholds: degree_split (default 3.0), order_split (default 0.5).
    MorphologyReport:
        - mean_degree (float), order_score (float), quadrant (Quadrant).
"""

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Optional

from physarum.errors import GeometryError

DEFAULT_DEGREE_SPLIT = 3.0
DEFAULT_ORDER_SPLIT = 0.5


class Quadrant(str, Enum):
    CREATIVE = 'Creative'
    SAVANT_AUTISM = 'SavantAutism'
    SEVERE_AUTISM = 'SevereAutism'
    SCHIZOPHRENIC = 'Schizophrenic'


@dataclass(frozen=True)
class Thresholds:
    degree_split: float = DEFAULT_DEGREE_SPLIT
    order_split: float = DEFAULT_ORDER_SPLIT

    def __post_init__(self):
        if not (math.isfinite(self.degree_split) and math.isfinite(self.order_split)):
            raise GeometryError('quadrant thresholds must be finite')


@dataclass
class ComparisonReport:
    bisector_coverage: Optional[float] = None
    edge_precision: Optional[float] = None
    edge_recall: Optional[float] = None
    tree_length_ratio: Optional[float] = None
    path_ratio: Optional[float] = None
    self_avoidance_index: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class MorphologyReport:
    mean_degree: float
    order_score: float
    quadrant: Quadrant

    def to_dict(self) -> Dict[str, Any]:
        return {'mean_degree': self.mean_degree, 'order_score': self.order_score,
                'quadrant': self.quadrant.value}
