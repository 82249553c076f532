"""_summary_
Delaunay triangulation with exact predicates.

Sites are inserted in lexicographic order, so every new site lies outside the
current convex hull and is joined to the hull edges it sees. Lawson edge flips
then restore the empty-circumcircle property. Cocircular ties follow the
symbolic perturbation in predicates.perturbed_incircle, which keeps the
diagonal through the lexicographically smallest point.

Functions:
    delaunay(sites) -> PlanarGraph
    delaunay_triangles(sites) -> List[Tuple[int, int, int]]
"""

import logging
from typing import Dict, List, Set, Tuple

from physarum.errors import GeometryError
from physarum.geometry.models import PlanarGraph, SiteSet
from physarum.geometry.predicates import orient, perturbed_incircle

logger = logging.getLogger(__name__)

Triangle = Tuple[int, int, int]


def _ccw(points, a: int, b: int, c: int) -> Triangle:
    return (a, b, c) if orient(points[a], points[b], points[c]) > 0 else (a, c, b)


class _Triangulation:
    """Counter-clockwise triangles keyed by their directed edges."""

    def __init__(self, points):
        self.points = points
        self.triangles: Set[Triangle] = set()
        self.by_edge: Dict[Tuple[int, int], Triangle] = {}

    def add(self, t: Triangle) -> None:
        self.triangles.add(t)
        a, b, c = t
        for edge in ((a, b), (b, c), (c, a)):
            self.by_edge[edge] = t

    def remove(self, t: Triangle) -> None:
        self.triangles.discard(t)
        a, b, c = t
        for edge in ((a, b), (b, c), (c, a)):
            if self.by_edge.get(edge) == t:
                del self.by_edge[edge]

    @staticmethod
    def apex(t: Triangle, u: int, v: int) -> int:
        return next(k for k in t if k != u and k != v)

    def legalize(self, stack: List[Tuple[int, int]], ranks: List[int]) -> int:
        flips = 0
        while stack:
            u, v = stack.pop()
            left, right = self.by_edge.get((u, v)), self.by_edge.get((v, u))
            if left is None or right is None:
                continue
            c = self.apex(left, u, v)
            d = self.apex(right, u, v)
            quad = (self.points[u], self.points[v], self.points[c], self.points[d])
            if perturbed_incircle(*quad, (ranks[u], ranks[v], ranks[c], ranks[d])) <= 0:
                continue
            self.remove(left)
            self.remove(right)
            self.add((u, d, c))
            self.add((d, v, c))
            stack.extend([(u, d), (d, v), (v, c), (c, u)])
            flips += 1
        return flips


def delaunay_triangles(sites: SiteSet) -> List[Triangle]:
    """
    Counter-clockwise triangles of the Delaunay triangulation (empty for
    fewer than three sites or collinear sites).
    """
    points = list(sites.points)
    order = sorted(range(len(points)), key=lambda i: points[i])
    ranks = [0] * len(points)
    for rank, i in enumerate(order):
        ranks[i] = rank

    chain = order[:2]
    k = 2
    while k < len(order) and orient(points[chain[0]], points[chain[1]], points[order[k]]) == 0:
        chain.append(order[k])
        k += 1
    if k == len(order):
        return []

    mesh = _Triangulation(points)
    apex = order[k]
    for a, b in zip(chain, chain[1:]):
        mesh.add(_ccw(points, a, b, apex))
    # Hull as a counter-clockwise cycle.
    if orient(points[chain[0]], points[chain[-1]], points[apex]) > 0:
        hull = chain + [apex]
    else:
        hull = [apex] + chain[::-1]

    stack: List[Tuple[int, int]] = [(a, b) for a, b in zip(chain, chain[1:])]
    for p in order[k + 1:]:
        n = len(hull)
        visible = [orient(points[hull[i]], points[hull[(i + 1) % n]], points[p]) < 0
                   for i in range(n)]
        # Rotate so the visible run is contiguous from index 0.
        start = next(i for i in range(n) if visible[i] and not visible[i - 1])
        hull = hull[start:] + hull[:start]
        visible = visible[start:] + visible[:start]
        run = 0
        while run < n and visible[run]:
            a, b = hull[run], hull[(run + 1) % n]
            mesh.add((b, a, p))
            stack.append((a, b))
            run += 1
        hull = [hull[0], p] + hull[run:]
        mesh.legalize(stack, ranks)
    mesh.legalize(stack, ranks)
    return sorted(mesh.triangles)


def delaunay(sites: SiteSet) -> PlanarGraph:
    """
    Delaunay graph of a site set.
    Two sites give one edge; collinear sites give the path through them in
    lexicographic (x, then y) order.
    Args:
        sites (SiteSet): At least two distinct sites.
    Returns:
        PlanarGraph: Nodes in site order.
    Raises:
        GeometryError: fewer than two sites.
    """
    if len(sites) < 2:
        raise GeometryError('delaunay needs at least two sites')
    triangles = delaunay_triangles(sites)
    if not triangles:
        order = sorted(range(len(sites)), key=lambda i: sites[i])
        return PlanarGraph(list(sites.points), list(zip(order, order[1:])))
    edges = set()
    for a, b, c in triangles:
        edges.update({(min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(a, c), max(a, c))})
    logger.debug('delaunay: %d sites, %d triangles, %d edges', len(sites), len(triangles),
                 len(edges))
    return PlanarGraph(list(sites.points), sorted(edges))
