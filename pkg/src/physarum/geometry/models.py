"""_summary_
This module defines the data types of the classical-geometry oracles.

Models:
    SiteSet:
        - points (List[Tuple[float, float]]): planar sites in millimetres, pairwise distinct.
    RasterPartition:
        - labels (ndarray[h, w] int): nearest-site index per cell, BOUNDARY where tied.
        - cell_size (float): millimetres per cell.
    PlanarGraph:
        - nodes (List[Tuple[float, float]]), edges (List[Tuple[int, int]], i < j, sorted).
    MazeGrid:
        - passable (ndarray[h, w] bool), start (cell), goal (cell).
"""

import json
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from physarum.environment.pgm import write_pgm
from physarum.errors import GeometryError

Point = Tuple[float, float]
Cell = Tuple[int, int]

BOUNDARY = -1


@dataclass(frozen=True)
class SiteSet:
    points: Tuple[Point, ...]

    def __init__(self, points: Iterable[Sequence[float]]):
        pts = tuple((float(p[0]), float(p[1])) for p in points)
        if not pts:
            raise GeometryError('a site set needs at least one site')
        if len(set(pts)) != len(pts):
            raise GeometryError('sites must be pairwise distinct')
        object.__setattr__(self, 'points', pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def distance(self, i: int, j: int) -> float:
        (ax, ay), (bx, by) = self.points[i], self.points[j]
        return math.hypot(ax - bx, ay - by)


@dataclass
class RasterPartition:
    labels: np.ndarray
    cell_size: float = 1.0

    @property
    def boundary(self) -> np.ndarray:
        return self.labels == BOUNDARY

    @property
    def shape(self) -> Tuple[int, int]:
        return self.labels.shape

    def to_pixels(self) -> np.ndarray:
        """Boundary cells 255, region cells 0."""
        return np.where(self.boundary, 255, 0).astype(np.uint8)

    def save_pgm(self, path: str) -> str:
        return write_pgm(self.to_pixels(), path)


@dataclass
class PlanarGraph:
    nodes: List[Point]
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.nodes = [(float(x), float(y)) for x, y in self.nodes]
        normalized = set()
        for i, j in self.edges:
            if i == j:
                raise GeometryError(f'self-loop at node {i}')
            if not (0 <= i < len(self.nodes) and 0 <= j < len(self.nodes)):
                raise GeometryError(f'edge ({i}, {j}) references a missing node')
            normalized.add((min(i, j), max(i, j)))
        self.edges = sorted(normalized)

    @property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def length(self, edge: Tuple[int, int]) -> float:
        (ax, ay), (bx, by) = self.nodes[edge[0]], self.nodes[edge[1]]
        return math.hypot(ax - bx, ay - by)

    def lengths(self) -> List[float]:
        return [self.length(e) for e in self.edges]

    def total_length(self) -> float:
        return float(sum(self.lengths()))

    def to_dict(self) -> Dict[str, Any]:
        return {'nodes': [list(p) for p in self.nodes], 'edges': [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'PlanarGraph':
        try:
            return cls([tuple(p) for p in data['nodes']], [tuple(e) for e in data['edges']])
        except (KeyError, TypeError, ValueError) as exc:
            raise GeometryError(f'malformed planar graph document: {exc}') from exc

    def save_json(self, path: str) -> str:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(self.to_dict(), handle, sort_keys=True)
            handle.write('\n')
        return path

    @classmethod
    def load_json(cls, path: str) -> 'PlanarGraph':
        with open(path, 'r', encoding='utf-8') as handle:
            return cls.from_dict(json.load(handle))


@dataclass
class MazeGrid:
    passable: np.ndarray
    start: Cell
    goal: Cell

    def __post_init__(self):
        self.passable = np.asarray(self.passable, dtype=bool)
        self.start = (int(self.start[0]), int(self.start[1]))
        self.goal = (int(self.goal[0]), int(self.goal[1]))
        for name, cell in (('start', self.start), ('goal', self.goal)):
            if not self.contains(cell) or not self.is_open(cell):
                raise GeometryError(f'maze {name} {cell} is not a passable cell')

    @property
    def width(self) -> int:
        return self.passable.shape[1]

    @property
    def height(self) -> int:
        return self.passable.shape[0]

    def contains(self, cell: Cell) -> bool:
        return 0 <= cell[0] < self.width and 0 <= cell[1] < self.height

    def is_open(self, cell: Cell) -> bool:
        return bool(self.passable[cell[1], cell[0]])
