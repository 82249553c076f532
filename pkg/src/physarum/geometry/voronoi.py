"""_summary_
Raster Voronoi partition by brute-force nearest-site search.

Functions:
    tie_tolerance(cell_size) -> float
    voronoi_raster(sites, grid) -> RasterPartition
"""

import math

import numpy as np

from physarum.environment.models import GridSpec
from physarum.errors import GeometryError
from physarum.geometry.models import BOUNDARY, RasterPartition, SiteSet


def tie_tolerance(cell_size: float) -> float:
    """
    Half a cell diagonal. It bounds a cell centre's distance to the bisector
    rather than |d2 - d1|, so the bisector of every Delaunay edge keeps a
    BOUNDARY cell even where it runs between two cell centres.
    """
    return cell_size * math.sqrt(2.0) / 2.0


def voronoi_raster(sites: SiteSet, grid: GridSpec) -> RasterPartition:
    """
    Labels every cell with its nearest site (Euclidean distance between cell
    centres, in millimetres). A cell whose centre lies within tie_tolerance of
    the bisector of its two nearest sites is labelled BOUNDARY. Nearest-site
    ties among equal distances go to the lower site index.
    Args:
        sites (SiteSet): Sites in millimetres, inside the grid extent.
        grid (GridSpec): The raster to label.
    Returns:
        RasterPartition: labels[y, x] in {BOUNDARY, 0 .. len(sites) - 1}.
    Raises:
        GeometryError: a site lies outside the grid extent.
    """
    extent_x = (grid.width - 1) * grid.cell_size
    extent_y = (grid.height - 1) * grid.cell_size
    for i, (x, y) in enumerate(sites):
        if not (0.0 <= x <= extent_x and 0.0 <= y <= extent_y):
            raise GeometryError(f'site {i} ({x}, {y}) lies outside the grid extent')
    ys, xs = np.indices(grid.shape, dtype=np.float64) * grid.cell_size
    points = np.asarray(sites.points, dtype=np.float64)
    dist = np.stack([np.hypot(xs - px, ys - py) for px, py in points])
    order = np.argsort(dist, axis=0, kind='stable')
    nearest = order[0]
    labels = nearest.astype(np.int64)
    if len(points) > 1:
        second = order[1]
        d1 = np.take_along_axis(dist, nearest[None], axis=0)[0]
        d2 = np.take_along_axis(dist, second[None], axis=0)[0]
        gap = np.hypot(*(points[nearest] - points[second]).transpose(2, 0, 1))
        to_bisector = (d2 ** 2 - d1 ** 2) / (2.0 * gap)
        labels[to_bisector <= tie_tolerance(grid.cell_size)] = BOUNDARY
    return RasterPartition(labels, grid.cell_size)
