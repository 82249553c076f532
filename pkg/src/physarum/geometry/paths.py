"""_summary_
Mazes and shortest paths on 8-connected rasters.

Functions:
    neighbours(maze, cell) -> Iterator[Tuple[Cell, float]]
    grid_shortest_path(maze, cell_size=1.0) -> List[Cell]
    path_cost(path, cell_size=1.0) -> float
    generate_perfect_maze(cells_w, cells_h, seed) -> MazeGrid
"""

import heapq
import logging
import math
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from physarum.errors import GeometryError, NoPathError
from physarum.geometry.models import Cell, MazeGrid

logger = logging.getLogger(__name__)

# Compass order N, NE, E, SE, S, SW, W, NW.
COMPASS: Tuple[Cell, ...] = ((0, -1), (1, -1), (1, 0), (1, 1),
                             (0, 1), (-1, 1), (-1, 0), (-1, -1))
SQRT2 = math.sqrt(2.0)


def neighbours(maze: MazeGrid, cell: Cell) -> Iterator[Tuple[Cell, float]]:
    """Passable 8-neighbours in compass order with their step cost in cells.
    A diagonal step squeezing between two blocked cells is not allowed."""
    x, y = cell
    for dx, dy in COMPASS:
        nxt = (x + dx, y + dy)
        if not maze.contains(nxt) or not maze.is_open(nxt):
            continue
        if dx and dy:
            if not maze.is_open((x + dx, y)) and not maze.is_open((x, y + dy)):
                continue
            yield nxt, SQRT2
        else:
            yield nxt, 1.0


def path_cost(path: List[Cell], cell_size: float = 1.0) -> float:
    total = 0.0
    for (ax, ay), (bx, by) in zip(path, path[1:]):
        total += SQRT2 if ax != bx and ay != by else 1.0
    return total * cell_size


def grid_shortest_path(maze: MazeGrid, cell_size: float = 1.0) -> List[Cell]:
    """
    Minimum-cost 8-neighbour path from maze.start to maze.goal by uniform-cost
    search (orthogonal step 1, diagonal step sqrt(2), scaled by cell_size).
    Among equal-cost frontiers the earlier-discovered cell expands first and
    neighbours are discovered in compass order.
    Returns:
        List[Cell]: start ... goal.
    Raises:
        NoPathError: the goal is unreachable.
    """
    counter = 0
    frontier = [(0.0, counter, maze.start)]
    best: Dict[Cell, float] = {maze.start: 0.0}
    parent: Dict[Cell, Optional[Cell]] = {maze.start: None}
    done = set()
    while frontier:
        cost, _, cell = heapq.heappop(frontier)
        if cell in done:
            continue
        done.add(cell)
        if cell == maze.goal:
            path = [cell]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for nxt, step in neighbours(maze, cell):
            new_cost = cost + step * cell_size
            if nxt not in best or new_cost < best[nxt]:
                best[nxt] = new_cost
                parent[nxt] = cell
                counter += 1
                heapq.heappush(frontier, (new_cost, counter, nxt))
    raise NoPathError(f'goal {maze.goal} is unreachable from {maze.start}')


def generate_perfect_maze(cells_w: int, cells_h: int, seed: int = 0) -> MazeGrid:
    """
    Randomized depth-first carving of a perfect maze.
    The raster is (2*cells_w + 1) x (2*cells_h + 1): maze cells sit at odd
    coordinates and walls on even rows and columns. The start is the
    north-west cell and the goal the cell nearest the centre.
    Args:
        cells_w (int): Maze cells per row (>= 1).
        cells_h (int): Maze cells per column (>= 1).
        seed (int): Seed of the carving order.
    Returns:
        MazeGrid: The carved maze.
    """
    if cells_w < 1 or cells_h < 1:
        raise GeometryError('a maze needs at least one cell per side')
    rng = np.random.default_rng(seed)
    passable = np.zeros((2 * cells_h + 1, 2 * cells_w + 1), dtype=bool)
    visited = np.zeros((cells_h, cells_w), dtype=bool)
    stack = [(0, 0)]
    visited[0, 0] = True
    passable[1, 1] = True
    while stack:
        cx, cy = stack[-1]
        options = [(cx + dx, cy + dy) for dx, dy in ((0, -1), (1, 0), (0, 1), (-1, 0))
                   if 0 <= cx + dx < cells_w and 0 <= cy + dy < cells_h
                   and not visited[cy + dy, cx + dx]]
        if not options:
            stack.pop()
            continue
        nx_, ny_ = options[int(rng.integers(len(options)))]
        visited[ny_, nx_] = True
        passable[2 * ny_ + 1, 2 * nx_ + 1] = True
        passable[cy + ny_ + 1, cx + nx_ + 1] = True
        stack.append((nx_, ny_))
    goal = (2 * (cells_w // 2) + 1, 2 * (cells_h // 2) + 1)
    logger.debug('carved %dx%d maze, goal %s', cells_w, cells_h, goal)
    return MazeGrid(passable, (1, 1), goal)
