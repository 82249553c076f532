import itertools
import math

import networkx as nx
import numpy as np
import pytest

from physarum.environment.models import GridSpec
from physarum.errors import GeometryError, NoPathError
from physarum.geometry import (BOUNDARY, MazeGrid, PlanarGraph, SiteSet, beta_skeleton,
                               delaunay, euclidean_mst, gabriel_graph, generate_perfect_maze,
                               grid_shortest_path, path_cost, relative_neighborhood_graph,
                               voronoi_raster)
from physarum.geometry.delaunay import delaunay_triangles
from physarum.geometry.predicates import incircle, orient
from physarum.geometry.proximity import lune_contains


def random_sites(count, seed):
    rng = np.random.default_rng(seed)
    return SiteSet(rng.uniform(0.0, 100.0, size=(count, 2)))


# -----------------------------------------------------------------------------
# Test Case 1: Exact orientation and in-circle predicates
# -----------------------------------------------------------------------------
def test_predicates():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (0, 1), (1, 0)) == -1
    assert orient((0, 0), (1, 1), (2, 2)) == 0
    assert incircle((0, 0), (2, 0), (0, 2), (1, 1)) == 1
    assert incircle((0, 0), (2, 0), (0, 2), (2, 2)) == 0
    assert incircle((0, 0), (2, 0), (0, 2), (5, 5)) == -1


# -----------------------------------------------------------------------------
# Test Case 2: Delaunay of degenerate inputs
# -----------------------------------------------------------------------------
def test_delaunay_small_and_collinear():
    assert delaunay(SiteSet([(0, 0), (3, 4)])).edges == [(0, 1)]
    assert delaunay(SiteSet([(0, 0), (2, 0), (1, 0)])).edges == [(0, 2), (1, 2)]

    with pytest.raises(GeometryError):
        delaunay(SiteSet([(1, 1)]))
    with pytest.raises(GeometryError):
        SiteSet([])
    with pytest.raises(GeometryError):
        SiteSet([(1, 1), (1, 1)])


# -----------------------------------------------------------------------------
# Test Case 3: Cocircular square gets exactly one diagonal, deterministically
# -----------------------------------------------------------------------------
def test_delaunay_unit_square():
    sites = SiteSet([(0, 0), (1, 0), (1, 1), (0, 1)])

    graph = delaunay(sites)

    hull = {(0, 1), (1, 2), (2, 3), (0, 3)}
    assert hull <= graph.edge_set
    diagonals = graph.edge_set - hull
    assert len(diagonals) == 1
    assert diagonals <= {(0, 2), (1, 3)}
    assert delaunay(sites).edges == graph.edges


# -----------------------------------------------------------------------------
# Test Case 4: Every Delaunay triangle has an empty circumcircle
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('seed', [1, 2, 3])
def test_delaunay_empty_circumcircle(seed):
    sites = random_sites(12, seed)

    triangles = delaunay_triangles(sites)

    assert triangles
    for a, b, c in triangles:
        assert orient(sites[a], sites[b], sites[c]) > 0
        for d in range(len(sites)):
            if d not in (a, b, c):
                assert incircle(sites[a], sites[b], sites[c], sites[d]) < 0
    graph = nx.Graph(delaunay(sites).edges)
    assert nx.check_planarity(graph)[0]
    assert nx.is_connected(graph)


# -----------------------------------------------------------------------------
# Test Case 5: EMST within RNG within Gabriel within Delaunay
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('seed', [4, 5])
def test_proximity_hierarchy(seed):
    sites = random_sites(12, seed)

    mst = euclidean_mst(sites).edge_set
    rng = relative_neighborhood_graph(sites).edge_set
    gabriel = gabriel_graph(sites).edge_set
    dt = delaunay(sites).edge_set

    assert len(mst) == len(sites) - 1
    assert mst <= rng <= gabriel <= dt


# -----------------------------------------------------------------------------
# Test Case 6: Minimum spanning tree and lune membership
# -----------------------------------------------------------------------------
def test_mst_and_lunes():
    sites = SiteSet([(0, 0), (1, 0), (2, 0), (10, 0)])
    tree = euclidean_mst(sites)
    assert tree.edges == [(0, 1), (1, 2), (2, 3)]
    assert tree.total_length() == pytest.approx(10.0)

    assert lune_contains((0, 0), (2, 0), (1, 0.5), 1.0)
    assert not lune_contains((0, 0), (2, 0), (1, 1.5), 1.0)
    assert lune_contains((0, 0), (2, 0), (1, 1.5), 2.0)
    assert beta_skeleton(SiteSet([(0, 0), (2, 0), (1, 0.5)]), 1.0).edges == [(0, 2), (1, 2)]
    with pytest.raises(GeometryError):
        beta_skeleton(sites, 0.5)


# -----------------------------------------------------------------------------
# Test Case 7: Planar graphs normalize edges and survive JSON
# -----------------------------------------------------------------------------
def test_planar_graph_json(tmp_path):
    graph = PlanarGraph([(0, 0), (3, 4), (6, 0)], [(1, 0), (0, 1), (2, 1)])
    assert graph.edges == [(0, 1), (1, 2)]
    assert graph.total_length() == pytest.approx(10.0)

    path = graph.save_json(str(tmp_path / 'g.json'))
    assert PlanarGraph.load_json(path) == graph

    with pytest.raises(GeometryError):
        PlanarGraph([(0, 0)], [(0, 0)])
    with pytest.raises(GeometryError):
        PlanarGraph.from_dict({'nodes': [[0, 0]]})


# -----------------------------------------------------------------------------
# Test Case 8: Two sites split the raster along their perpendicular bisector
# -----------------------------------------------------------------------------
def test_voronoi_midline():
    partition = voronoi_raster(SiteSet([(2, 4), (12, 4)]), GridSpec(15, 9))

    assert (partition.labels[:, 7] == BOUNDARY).all()
    assert int(partition.boundary.sum()) == 9
    assert (partition.labels[:, :7] == 0).all()
    assert (partition.labels[:, 8:] == 1).all()
    assert partition.to_pixels()[0, 7] == 255

    with pytest.raises(GeometryError):
        voronoi_raster(SiteSet([(2, 4), (20, 4)]), GridSpec(15, 9))


# -----------------------------------------------------------------------------
# Test Case 9: Shortest paths on open and blocked rasters
# -----------------------------------------------------------------------------
def test_grid_shortest_path():
    open_grid = MazeGrid(np.ones((5, 5), dtype=bool), (0, 0), (4, 4))
    path = grid_shortest_path(open_grid)
    assert path[0] == (0, 0) and path[-1] == (4, 4)
    assert path_cost(path) == pytest.approx(4 * math.sqrt(2.0))
    assert path_cost(path, 2.0) == pytest.approx(8 * math.sqrt(2.0))

    passable = np.ones((5, 5), dtype=bool)
    passable[:, 2] = False
    with pytest.raises(NoPathError):
        grid_shortest_path(MazeGrid(passable, (0, 0), (4, 4)))
    with pytest.raises(GeometryError):
        MazeGrid(passable, (2, 0), (4, 4))


# -----------------------------------------------------------------------------
# Test Case 10: Generated mazes are perfect and solvable
# -----------------------------------------------------------------------------
def test_perfect_maze():
    maze = generate_perfect_maze(5, 4, seed=11)

    assert (maze.width, maze.height) == (11, 9)
    assert not maze.passable[0, :].any() and not maze.passable[:, 0].any()
    open_cells = {(x, y) for y, x in zip(*np.nonzero(maze.passable))}
    assert len(open_cells) == 5 * 4 + (5 * 4 - 1)
    corridors = nx.Graph()
    corridors.add_nodes_from(open_cells)
    for (x, y) in open_cells:
        for nxt in ((x + 1, y), (x, y + 1)):
            if nxt in open_cells:
                corridors.add_edge((x, y), nxt)
    assert nx.is_tree(corridors)

    path = grid_shortest_path(maze)
    assert path[0] == maze.start and path[-1] == maze.goal
    for a, b in zip(path, path[1:]):
        assert maze.is_open(b)
        assert max(abs(a[0] - b[0]), abs(a[1] - b[1])) == 1
    assert np.array_equal(generate_perfect_maze(5, 4, seed=11).passable, maze.passable)
    assert all(itertools.starmap(lambda x, y: x % 2 or y % 2, open_cells))
