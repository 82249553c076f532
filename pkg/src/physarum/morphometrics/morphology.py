"""_summary_
Places networks on the branching-versus-regularity plane.

The x-axis is the mean node degree, the y-axis an order score 1 / (1 + CV)
where CV is the coefficient of variation of the edge lengths. Four exemplar
site sets span the quadrants:

    dense_regular     Gabriel graph of a hexagonal lattice patch        -> Creative
    sparse_regular    MST of a unit-spaced serpentine                   -> SavantAutism
    sparse_irregular  MST of a chain whose gaps double at every step    -> SevereAutism
    dense_irregular   Gabriel graph of a lattice patch ringed by far sites -> Schizophrenic

Functions:
    mean_degree(graph) -> float
    order_score(graph) -> float
    classify_quadrant(mean_degree, order_score, thresholds) -> Quadrant
    morphology_report(graph, thresholds) -> MorphologyReport
    exemplar_graphs(seed) -> Dict[str, PlanarGraph]
"""

import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from physarum.engine.models import TubeGraph
from physarum.errors import GeometryError
from physarum.geometry.models import PlanarGraph, SiteSet
from physarum.geometry.proximity import euclidean_mst, gabriel_graph
from physarum.morphometrics.models import MorphologyReport, Quadrant, Thresholds

Point = Tuple[float, float]

EXPECTED_QUADRANTS = {
    'dense_regular': Quadrant.CREATIVE,
    'sparse_regular': Quadrant.SAVANT_AUTISM,
    'sparse_irregular': Quadrant.SEVERE_AUTISM,
    'dense_irregular': Quadrant.SCHIZOPHRENIC,
}


def _live_lengths(graph) -> List[float]:
    if isinstance(graph, TubeGraph):
        return [e.length for e in graph.live_edges()]
    return graph.lengths()


def _live_counts(graph) -> Tuple[int, int]:
    if isinstance(graph, TubeGraph):
        live = graph.live_edges()
        # Nodes left only on abandoned tubes are not part of the network.
        nodes = [n for n in graph.nodes
                 if graph.degree(n) > 0 or graph.degree(n, include_abandoned=True) == 0]
        return len(nodes), len(live)
    return len(graph.nodes), len(graph.edges)


def mean_degree(graph) -> float:
    """
    2 |E| / |V| over live edges.
    Raises:
        GeometryError: the graph has no node.
    """
    nodes, edges = _live_counts(graph)
    if nodes == 0:
        raise GeometryError('mean degree of an empty graph')
    return 2.0 * edges / nodes


def order_score(graph) -> float:
    """
    1 / (1 + CV) of the live edge lengths (population standard deviation).
    Raises:
        GeometryError: the graph has no edge.
    """
    lengths = np.asarray(_live_lengths(graph), dtype=np.float64)
    if lengths.size == 0:
        raise GeometryError('order score of a graph without edges')
    mean = float(lengths.mean())
    if lengths.size == 1 or mean == 0.0:
        return 1.0
    cv = float(lengths.std()) / mean
    return 1.0 / (1.0 + cv)


def classify_quadrant(mean_degree_value: float, order_score_value: float,
                      thresholds: Optional[Thresholds] = None) -> Quadrant:
    """Boundary values belong to the >= side of each split."""
    thresholds = thresholds or Thresholds()
    branched = mean_degree_value >= thresholds.degree_split
    ordered = order_score_value >= thresholds.order_split
    if branched:
        return Quadrant.CREATIVE if ordered else Quadrant.SCHIZOPHRENIC
    return Quadrant.SAVANT_AUTISM if ordered else Quadrant.SEVERE_AUTISM


def morphology_report(graph, thresholds: Optional[Thresholds] = None) -> MorphologyReport:
    degree = mean_degree(graph)
    order = order_score(graph)
    return MorphologyReport(degree, order, classify_quadrant(degree, order, thresholds))


def hex_patch(radius: int, spacing: float = 1.0, centre: Point = (0.0, 0.0)) -> List[Point]:
    """Triangular-lattice points within hexagonal distance radius of the centre."""
    points = []
    for j in range(-radius, radius + 1):
        for i in range(-radius, radius + 1):
            if abs(i) > radius or abs(j) > radius or abs(i + j) > radius:
                continue
            x = centre[0] + spacing * (i + j / 2.0)
            y = centre[1] + spacing * (j * math.sqrt(3.0) / 2.0)
            points.append((x, y))
    return points


def serpentine(rows: int, row_length: int, row_gap: int = 3) -> List[Point]:
    """Unit-spaced points along a boustrophedon path."""
    points: List[Point] = []
    for r in range(rows):
        y = r * row_gap
        xs = range(row_length) if r % 2 == 0 else range(row_length - 1, -1, -1)
        points.extend((float(x), float(y)) for x in xs)
        if r < rows - 1:
            end = row_length - 1 if r % 2 == 0 else 0
            points.extend((float(end), float(y + k)) for k in range(1, row_gap))
    return points


def doubling_chain(links: int, seed: int = 0, max_turn_deg: float = 30.0) -> List[Point]:
    """Chain whose k-th link has length 2**k, turning at most max_turn_deg from east."""
    rng = np.random.default_rng(seed)
    points = [(0.0, 0.0)]
    for k in range(links):
        angle = math.radians(float(rng.uniform(-max_turn_deg, max_turn_deg)))
        x, y = points[-1]
        points.append((x + 2.0 ** k * math.cos(angle), y + 2.0 ** k * math.sin(angle)))
    return points


def ringed_patch(radius: int = 3, ring_radius: float = 60.0, ring_sites: int = 6) -> List[Point]:
    """A unit hexagonal patch surrounded by far sites facing its flat sides."""
    points = hex_patch(radius)
    for k in range(ring_sites):
        angle = math.radians(30.0 + 360.0 * k / ring_sites)
        points.append((ring_radius * math.cos(angle), ring_radius * math.sin(angle)))
    return points


def exemplar_graphs(seed: int = 0) -> Dict[str, PlanarGraph]:
    return {
        'dense_regular': gabriel_graph(SiteSet(hex_patch(3))),
        'sparse_regular': euclidean_mst(SiteSet(serpentine(4, 8))),
        'sparse_irregular': euclidean_mst(SiteSet(doubling_chain(10, seed))),
        'dense_irregular': gabriel_graph(SiteSet(ringed_patch())),
    }
