"""Exact classical-geometry oracles the engine is checked against."""

from physarum.geometry.delaunay import delaunay
from physarum.geometry.models import BOUNDARY, MazeGrid, PlanarGraph, RasterPartition, SiteSet
from physarum.geometry.paths import generate_perfect_maze, grid_shortest_path, path_cost
from physarum.geometry.proximity import (beta_skeleton, euclidean_mst, gabriel_graph,
                                         relative_neighborhood_graph)
from physarum.geometry.voronoi import voronoi_raster

__all__ = ['BOUNDARY', 'MazeGrid', 'PlanarGraph', 'RasterPartition', 'SiteSet', 'beta_skeleton',
           'delaunay', 'euclidean_mst', 'gabriel_graph', 'generate_perfect_maze',
           'grid_shortest_path', 'path_cost', 'relative_neighborhood_graph', 'voronoi_raster']
