"""_summary_
Scores simulated outputs against the geometry oracles.

Functions:
    bisector_coverage(empty_cells, oracle, tol) -> float
    edge_match(sim, oracle, node_tol) -> Dict[str, float]
    tree_length_ratio(sim, sites, node_tol=None) -> float
    path_ratio(sim_path_length, maze, cell_size=1.0) -> float
    self_avoidance_index(choices) -> float
    site_graph(graph, sites, node_tol=None) -> PlanarGraph
    is_spanning_tree(graph, sites, node_tol=None) -> bool
    tube_path_length(graph, source, target) -> float
    as_planar(graph) -> PlanarGraph
"""

import logging
import math
from typing import Dict, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx
import numpy as np
from scipy import ndimage

from physarum.engine.models import SITE_KINDS, TubeGraph
from physarum.errors import DimensionMismatch, NonSpanningGraph, UndefinedMetric
from physarum.geometry.models import MazeGrid, PlanarGraph, RasterPartition, SiteSet
from physarum.geometry.paths import grid_shortest_path, path_cost
from physarum.geometry.proximity import euclidean_mst

logger = logging.getLogger(__name__)

AnyGraph = Union[TubeGraph, PlanarGraph]


def _empty_mask(empty_cells, shape) -> np.ndarray:
    if isinstance(empty_cells, np.ndarray):
        if empty_cells.shape != shape:
            raise DimensionMismatch(f'empty cells {empty_cells.shape} vs oracle {shape}')
        return empty_cells.astype(bool)
    mask = np.zeros(shape, dtype=bool)
    for x, y in empty_cells:
        if not (0 <= y < shape[0] and 0 <= x < shape[1]):
            raise DimensionMismatch(f'empty cell ({x}, {y}) outside the oracle grid {shape}')
        mask[y, x] = True
    return mask


def bisector_coverage(empty_cells, oracle: RasterPartition, tol: int = 2) -> float:
    """
    Fraction of the oracle's Boundary cells with an empty cell within
    Chebyshev distance tol.
    Args:
        empty_cells: Boolean raster [h, w] or an iterable of (x, y) cells.
        oracle (RasterPartition): The raster Voronoi partition.
        tol (int): Tolerance in cells, >= 0.
    Returns:
        float: Coverage in [0, 1]; 1.0 when the oracle has no Boundary cell.
    Raises:
        DimensionMismatch: the inputs are on different grids.
    """
    mask = _empty_mask(empty_cells, oracle.shape)
    boundary = oracle.boundary
    total = int(boundary.sum())
    if total == 0:
        return 1.0
    near = ndimage.maximum_filter(mask, size=2 * int(tol) + 1, mode='constant', cval=False)
    return float((near & boundary).sum()) / total


def as_planar(graph: AnyGraph) -> PlanarGraph:
    """Live edges of a TubeGraph as a straight-line PlanarGraph (node order by id)."""
    if isinstance(graph, PlanarGraph):
        return graph
    ids = sorted(graph.nodes)
    index = {node_id: i for i, node_id in enumerate(ids)}
    nodes = [graph.nodes[n].position for n in ids]
    nodes = [(x * graph.cell_size, y * graph.cell_size) for x, y in nodes]
    edges = {(index[e.endpoints[0]], index[e.endpoints[1]]) for e in graph.live_edges()}
    return PlanarGraph(nodes, sorted(edges))


def _greedy_match(sim: PlanarGraph, oracle: PlanarGraph, node_tol: float) -> Dict[int, int]:
    pairs = []
    for i, (sx, sy) in enumerate(sim.nodes):
        for j, (ox, oy) in enumerate(oracle.nodes):
            d = math.hypot(sx - ox, sy - oy)
            if d <= node_tol:
                pairs.append((d, i, j))
    match: Dict[int, int] = {}
    used: Set[int] = set()
    for _, i, j in sorted(pairs):
        if i in match or j in used:
            continue
        match[i] = j
        used.add(j)
    return match


def edge_match(sim: AnyGraph, oracle: PlanarGraph, node_tol: float) -> Dict[str, float]:
    """
    Matches sim nodes to oracle nodes greedily by distance (each oracle node
    used once, within node_tol millimetres) and counts sim edges whose matched
    endpoints form an oracle edge.
    An empty sim graph has precision 1.0 (vacuous); an oracle without edges
    has recall 1.0.
    Returns:
        Dict[str, float]: {'precision': ..., 'recall': ...}
    """
    sim = as_planar(sim)
    match = _greedy_match(sim, oracle, node_tol)
    oracle_edges = oracle.edge_set
    matched = 0
    hit: Set[Tuple[int, int]] = set()
    for i, j in sim.edges:
        if i not in match or j not in match:
            continue
        a, b = match[i], match[j]
        edge = (min(a, b), max(a, b))
        if edge in oracle_edges:
            matched += 1
            hit.add(edge)
    precision = matched / len(sim.edges) if sim.edges else 1.0
    recall = len(hit) / len(oracle_edges) if oracle_edges else 1.0
    return {'precision': precision, 'recall': recall}


def _live_multigraph(graph: TubeGraph) -> nx.MultiGraph:
    multi = nx.MultiGraph()
    multi.add_nodes_from(sorted(graph.nodes))
    for edge in sorted(graph.live_edges(), key=lambda e: e.id):
        multi.add_edge(*edge.endpoints, key=edge.id, length=edge.length)
    return multi


def _site_nodes(graph: TubeGraph, sites: SiteSet, node_tol: Optional[float]) -> List[Optional[int]]:
    """Site index -> Inoculation/Food node standing on it (None if absent)."""
    tol = graph.cell_size * math.sqrt(2.0) / 2.0 if node_tol is None else node_tol
    candidates = [n for n in sorted(graph.nodes) if graph.nodes[n].kind in SITE_KINDS]
    found: List[Optional[int]] = []
    for sx, sy in sites:
        best = None
        for n in candidates:
            x, y = graph.nodes[n].position
            d = math.hypot(x * graph.cell_size - sx, y * graph.cell_size - sy)
            if d <= tol and (best is None or d < best[0]):
                best = (d, n)
        found.append(None if best is None else best[1])
    return found


def site_graph(graph: TubeGraph, sites: SiteSet, node_tol: Optional[float] = None) -> PlanarGraph:
    """
    Contracts the live tube network onto the sites: sites i and j are adjacent
    when their nodes are joined by live tubes passing through non-site nodes only.
    Returns:
        PlanarGraph: Nodes are the site points in site order.
    """
    nodes = _site_nodes(graph, sites, node_tol)
    site_of = {n: i for i, n in enumerate(nodes) if n is not None}
    multi = _live_multigraph(graph)
    edges = set()
    for i, start in enumerate(nodes):
        if start is None:
            continue
        seen = {start}
        frontier = [start]
        while frontier:
            current = frontier.pop()
            for nxt in sorted(multi.neighbors(current)):
                if nxt in seen:
                    continue
                seen.add(nxt)
                if nxt in site_of:
                    j = site_of[nxt]
                    if j != i:
                        edges.add((min(i, j), max(i, j)))
                else:
                    frontier.append(nxt)
    return PlanarGraph(list(sites.points), sorted(edges))


def _spanning_component(graph: TubeGraph, sites: SiteSet,
                        node_tol: Optional[float]) -> Tuple[nx.MultiGraph, List[int]]:
    nodes = _site_nodes(graph, sites, node_tol)
    missing = [i for i, n in enumerate(nodes) if n is None]
    if missing:
        raise NonSpanningGraph(f'no tube node on site(s) {missing}')
    multi = _live_multigraph(graph)
    component = nx.node_connected_component(multi, nodes[0])
    unreached = [i for i, n in enumerate(nodes) if n not in component]
    if unreached:
        raise NonSpanningGraph(f'site(s) {unreached} are not connected to site 0')
    return multi.subgraph(component).copy(), nodes


def is_spanning_tree(graph: TubeGraph, sites: SiteSet, node_tol: Optional[float] = None) -> bool:
    """Whether the live tubes joining the sites form one connected acyclic network."""
    try:
        component, _ = _spanning_component(graph, sites, node_tol)
    except NonSpanningGraph:
        return False
    return nx.is_tree(component)


def tree_length_ratio(sim: TubeGraph, sites: SiteSet, node_tol: Optional[float] = None) -> float:
    """
    Total live tube length divided by the Euclidean MST length of the sites.
    Raises:
        NonSpanningGraph: a site has no node or is disconnected from the others.
    """
    _spanning_component(sim, sites, node_tol)
    oracle = euclidean_mst(sites).total_length()
    total = sim.total_length()
    if oracle == 0.0:
        return 1.0 if total == 0.0 else math.inf
    return total / oracle


def path_ratio(sim_path_length: float, maze: MazeGrid, cell_size: float = 1.0) -> float:
    """
    Simulated path length over the oracle shortest-path cost.
    Raises:
        NoPathError: the maze goal is unreachable.
    """
    oracle = path_cost(grid_shortest_path(maze, cell_size), cell_size)
    if oracle == 0.0:
        return 1.0
    return sim_path_length / oracle


def tube_path_length(graph: TubeGraph, source: int, target: int) -> float:
    """
    Length of the shortest live-tube route between two nodes.
    Raises:
        NonSpanningGraph: the nodes are not joined by live tubes.
    """
    multi = _live_multigraph(graph)
    try:
        return float(nx.shortest_path_length(multi, source, target, weight='length'))
    except (nx.NetworkXNoPath, nx.NodeNotFound) as exc:
        raise NonSpanningGraph(f'nodes {source} and {target} are not connected') from exc


def self_avoidance_index(choices: Iterable) -> float:
    """
    P(fresh cell chosen | an abandoned and a fresh cell were both admissible) - 0.5.
    Args:
        choices: Iterable of ChoiceObservation (or plain booleans, True = fresh).
    Raises:
        UndefinedMetric: there is no qualifying step.
    """
    flags = [c if isinstance(c, bool) else bool(c.chose_fresh) for c in choices]
    if not flags:
        raise UndefinedMetric('no step had both an abandoned and a fresh cell available')
    return sum(flags) / len(flags) - 0.5
