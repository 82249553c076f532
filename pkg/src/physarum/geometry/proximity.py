"""_summary_
Proximity graphs over a site set: the Euclidean minimum spanning tree and the
lune-based beta-skeletons (beta = 1 is the Gabriel graph, beta = 2 the relative
neighbourhood graph).

Functions:
    euclidean_mst(sites) -> PlanarGraph
    beta_skeleton(sites, beta) -> PlanarGraph
    gabriel_graph(sites) -> PlanarGraph
    relative_neighborhood_graph(sites) -> PlanarGraph
    lune_contains(p, q, r, beta) -> bool
"""

import logging
from typing import Sequence

import networkx as nx
import numpy as np

from physarum.errors import GeometryError
from physarum.geometry.models import PlanarGraph, SiteSet

logger = logging.getLogger(__name__)


def complete_graph(sites: SiteSet) -> nx.Graph:
    """Complete Euclidean graph, edges inserted in lexicographic (i, j) order."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(sites)))
    for i in range(len(sites)):
        for j in range(i + 1, len(sites)):
            graph.add_edge(i, j, weight=sites.distance(i, j))
    return graph


def euclidean_mst(sites: SiteSet) -> PlanarGraph:
    """
    Minimum spanning tree of the complete Euclidean graph (Kruskal). Equal
    lengths are taken in lexicographic (i, j) order, so the result is unique.
    """
    tree = nx.minimum_spanning_tree(complete_graph(sites), algorithm='kruskal')
    return PlanarGraph(list(sites.points), [tuple(e) for e in tree.edges()])


def _lune_centres(p: np.ndarray, q: np.ndarray, beta: float):
    return (1.0 - beta / 2.0) * p + (beta / 2.0) * q, (beta / 2.0) * p + (1.0 - beta / 2.0) * q


def lune_contains(p: Sequence[float], q: Sequence[float], r: Sequence[float],
                  beta: float) -> bool:
    """Whether r lies in the open lune of p and q for the given beta (>= 1)."""
    p, q, r = (np.asarray(v, dtype=np.float64) for v in (p, q, r))
    radius = beta * float(np.hypot(*(p - q))) / 2.0
    c1, c2 = _lune_centres(p, q, beta)
    return bool(np.hypot(*(r - c1)) < radius and np.hypot(*(r - c2)) < radius)


def beta_skeleton(sites: SiteSet, beta: float) -> PlanarGraph:
    """
    Lune-based beta-skeleton: (p, q) is an edge iff no other site lies in the
    intersection of the two open discs of radius beta*|pq|/2 centred at
    (1 - beta/2)p + (beta/2)q and (beta/2)p + (1 - beta/2)q. Direct O(n^3) test.
    Args:
        sites (SiteSet): At least two sites.
        beta (float): Lune parameter, >= 1.
    Raises:
        GeometryError: beta < 1 or fewer than two sites.
    """
    if beta < 1.0:
        raise GeometryError(f'beta must be >= 1, got {beta}')
    if len(sites) < 2:
        raise GeometryError('a beta-skeleton needs at least two sites')
    points = np.asarray(sites.points, dtype=np.float64)
    n = len(points)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            p, q = points[i], points[j]
            radius = beta * float(np.hypot(*(p - q))) / 2.0
            c1, c2 = _lune_centres(p, q, beta)
            inside = ((np.hypot(*(points - c1).T) < radius)
                      & (np.hypot(*(points - c2).T) < radius))
            inside[[i, j]] = False
            if not inside.any():
                edges.append((i, j))
    logger.debug('beta-skeleton beta=%s: %d sites, %d edges', beta, n, len(edges))
    return PlanarGraph(list(sites.points), edges)


def gabriel_graph(sites: SiteSet) -> PlanarGraph:
    return beta_skeleton(sites, 1.0)


def relative_neighborhood_graph(sites: SiteSet) -> PlanarGraph:
    return beta_skeleton(sites, 2.0)
