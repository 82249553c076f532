"""Scores for simulated networks: oracle comparisons and the morphology plane."""

from physarum.morphometrics.comparison import (as_planar, bisector_coverage, edge_match,
                                               is_spanning_tree, path_ratio,
                                               self_avoidance_index, site_graph,
                                               tree_length_ratio, tube_path_length)
from physarum.morphometrics.models import (ComparisonReport, MorphologyReport, Quadrant,
                                           Thresholds)
from physarum.morphometrics.morphology import (EXPECTED_QUADRANTS, classify_quadrant,
                                               exemplar_graphs, mean_degree,
                                               morphology_report, order_score)

__all__ = ['ComparisonReport', 'EXPECTED_QUADRANTS', 'MorphologyReport', 'Quadrant',
           'Thresholds', 'as_planar', 'bisector_coverage', 'classify_quadrant', 'edge_match',
           'exemplar_graphs', 'is_spanning_tree', 'mean_degree', 'morphology_report',
           'order_score', 'path_ratio', 'self_avoidance_index', 'site_graph',
           'tree_length_ratio', 'tube_path_length']
