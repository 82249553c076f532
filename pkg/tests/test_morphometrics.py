import math

import numpy as np
import pytest

from physarum.engine.models import ChoiceObservation, NodeKind, TubeGraph
from physarum.environment.models import GridSpec
from physarum.errors import DimensionMismatch, GeometryError, NonSpanningGraph, UndefinedMetric
from physarum.geometry import MazeGrid, PlanarGraph, SiteSet, voronoi_raster
from physarum.morphometrics import (EXPECTED_QUADRANTS, Quadrant, Thresholds, bisector_coverage,
                                    classify_quadrant, edge_match, exemplar_graphs,
                                    is_spanning_tree, mean_degree, morphology_report,
                                    order_score, path_ratio, self_avoidance_index, site_graph,
                                    tree_length_ratio, tube_path_length)


def l_shaped_network():
    """Inoculation at (0, 0), food at (4, 0) and (4, 3), joined by two live tubes."""
    graph = TubeGraph()
    start = graph.add_node((0, 0), NodeKind.INOCULATION)
    east = graph.add_node((4, 0), NodeKind.FOOD)
    corner = graph.add_node((4, 3), NodeKind.FOOD)
    graph.add_edge(start, east, [(x, 0) for x in range(5)])
    graph.add_edge(east, corner, [(4, y) for y in range(4)])
    return graph, (start, east, corner)


# -----------------------------------------------------------------------------
# Test Case 1: Mean degree and order score of a plain path
# -----------------------------------------------------------------------------
def test_degree_and_order_of_a_path():
    even = PlanarGraph([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])
    assert mean_degree(even) == pytest.approx(4.0 / 3.0)
    assert order_score(even) == 1.0

    uneven = PlanarGraph([(0, 0), (1, 0), (4, 0)], [(0, 1), (1, 2)])
    assert order_score(uneven) == pytest.approx(1.0 / 1.5)

    with pytest.raises(GeometryError):
        order_score(PlanarGraph([(0, 0), (1, 0)], []))
    with pytest.raises(GeometryError):
        mean_degree(TubeGraph())


# -----------------------------------------------------------------------------
# Test Case 2: Boundary values fall on the >= side of each split
# -----------------------------------------------------------------------------
def test_quadrant_boundaries():
    assert classify_quadrant(3.0, 0.5) == Quadrant.CREATIVE
    assert classify_quadrant(3.0, 0.49) == Quadrant.SCHIZOPHRENIC
    assert classify_quadrant(2.99, 0.5) == Quadrant.SAVANT_AUTISM
    assert classify_quadrant(2.99, 0.49) == Quadrant.SEVERE_AUTISM
    assert classify_quadrant(2.5, 0.9, Thresholds(degree_split=2.0)) == Quadrant.CREATIVE
    with pytest.raises(GeometryError):
        Thresholds(order_split=math.nan)


# -----------------------------------------------------------------------------
# Test Case 3: The four exemplars land in their own quadrants
# -----------------------------------------------------------------------------
def test_exemplars_cover_all_quadrants():
    graphs = exemplar_graphs()

    assert set(graphs) == set(EXPECTED_QUADRANTS)
    for name, graph in graphs.items():
        assert morphology_report(graph).quadrant == EXPECTED_QUADRANTS[name], name
    assert len(graphs['dense_regular'].nodes) == 37
    assert len(graphs['dense_regular'].edges) == 90
    assert len(graphs['sparse_regular'].edges) == len(graphs['sparse_regular'].nodes) - 1
    assert morphology_report(graphs['sparse_regular']).to_dict()['quadrant'] == 'SavantAutism'


# -----------------------------------------------------------------------------
# Test Case 4: Abandoned tubes and their orphaned nodes do not count
# -----------------------------------------------------------------------------
def test_abandoned_tubes_are_ignored():
    graph, (start, _, corner) = l_shaped_network()
    graph.add_edge(start, corner, [(0, 0), (1, 1), (2, 2), (3, 3), (4, 3)], abandoned=True)
    stray = graph.add_node((0, 5), NodeKind.BRANCH)
    graph.add_edge(start, stray, [(0, y) for y in range(6)], abandoned=True)

    assert mean_degree(graph) == pytest.approx(4.0 / 3.0)
    assert order_score(graph) == pytest.approx(1.0 / (1.0 + 0.5 / 3.5))
    assert graph.total_length() == pytest.approx(7.0)


# -----------------------------------------------------------------------------
# Test Case 5: Bisector coverage honours the Chebyshev tolerance
# -----------------------------------------------------------------------------
def test_bisector_coverage():
    oracle = voronoi_raster(SiteSet([(2, 4), (12, 4)]), GridSpec(15, 9))

    two_off = [(9, y) for y in range(9)]
    assert bisector_coverage(two_off, oracle, tol=2) == 1.0
    assert bisector_coverage(two_off, oracle, tol=1) == 0.0

    half = np.zeros(oracle.shape, dtype=bool)
    half[:5, 7] = True
    assert bisector_coverage(half, oracle, tol=0) == pytest.approx(5.0 / 9.0)

    with pytest.raises(DimensionMismatch):
        bisector_coverage(np.zeros((3, 3), dtype=bool), oracle)
    with pytest.raises(DimensionMismatch):
        bisector_coverage([(20, 1)], oracle)


# -----------------------------------------------------------------------------
# Test Case 6: Edge precision and recall after greedy node matching
# -----------------------------------------------------------------------------
def test_edge_match():
    oracle = PlanarGraph([(0, 0), (10, 0), (0, 10)], [(0, 1), (0, 2)])
    sim = PlanarGraph([(0.5, 0), (10, 0.5), (0, 9.5)], [(0, 1), (1, 2)])

    assert edge_match(sim, oracle, node_tol=1.0) == {'precision': 0.5, 'recall': 0.5}
    assert edge_match(sim, oracle, node_tol=0.1) == {'precision': 0.0, 'recall': 0.0}

    bare = PlanarGraph([(0, 0)], [])
    assert edge_match(bare, oracle, node_tol=1.0) == {'precision': 1.0, 'recall': 0.0}


# -----------------------------------------------------------------------------
# Test Case 7: Tube networks contracted onto their sites
# -----------------------------------------------------------------------------
def test_spanning_network_metrics():
    graph, (start, _, corner) = l_shaped_network()
    sites = SiteSet([(0, 0), (4, 0), (4, 3)])

    assert site_graph(graph, sites).edges == [(0, 1), (1, 2)]
    assert is_spanning_tree(graph, sites)
    assert tree_length_ratio(graph, sites) == pytest.approx(1.0)
    assert tube_path_length(graph, start, corner) == pytest.approx(7.0)

    far = SiteSet([(0, 0), (4, 0), (4, 3), (20, 20)])
    assert not is_spanning_tree(graph, far)
    with pytest.raises(NonSpanningGraph):
        tree_length_ratio(graph, far)

    lone = graph.add_node((10, 10), NodeKind.FOOD)
    with pytest.raises(NonSpanningGraph):
        tube_path_length(graph, start, lone)


# -----------------------------------------------------------------------------
# Test Case 8: Path ratio against the raster shortest path
# -----------------------------------------------------------------------------
def test_path_ratio():
    maze = MazeGrid(np.ones((5, 5), dtype=bool), (0, 0), (4, 4))

    assert path_ratio(8 * math.sqrt(2.0), maze) == pytest.approx(2.0)
    assert path_ratio(8 * math.sqrt(2.0), maze, cell_size=2.0) == pytest.approx(1.0)


# -----------------------------------------------------------------------------
# Test Case 9: Self-avoidance index from recorded choices
# -----------------------------------------------------------------------------
def test_self_avoidance_index():
    assert self_avoidance_index([True, True, False, True]) == pytest.approx(0.25)
    observations = [ChoiceObservation(tick=t, zone=0, chose_fresh=t % 2 == 0) for t in range(6)]
    assert self_avoidance_index(observations) == pytest.approx(0.0)
    with pytest.raises(UndefinedMetric):
        self_avoidance_index([])
