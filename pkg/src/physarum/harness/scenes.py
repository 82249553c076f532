"""_summary_
Default scenes of the experiments.

The Voronoi, Delaunay, continuation and maze scenes are generated from the
seed; the spanning-tree, substrate-shape and self-avoidance scenes are bundled
JSON documents under data/. Every scene goes through parse_document, so the
generated ones obey exactly the rules a user-supplied file does.

Functions:
    random_sites(seed, count, size, margin, min_separation) -> List[Cell]
    default_document(name, seed) -> dict
    default_scene(name, seed) -> Scene
    bundled_scene(stem, seed) -> Scene
    continuation_scene(seed, continuation) -> Scene
    maze_scene(seed, cells) -> Scene
    with_seed(scene, seed) -> Scene
    scene_sites(scene, include_attractants, exclude) -> SiteSet
    maze_of(scene) -> MazeGrid
"""

import dataclasses
import json
import logging
import os
from typing import Any, Dict, Iterable, List

import numpy as np

from physarum.environment.models import Cell, Scene, Species
from physarum.environment.scene import parse_document
from physarum.errors import SemanticViolation
from physarum.geometry.models import MazeGrid, SiteSet
from physarum.geometry.paths import generate_perfect_maze

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')

VORONOI_SIZE = 256
SITE_COUNT = 5
MAZE_CELLS = 15


def random_sites(seed: int, count: int = SITE_COUNT, size: int = VORONOI_SIZE,
                 margin: int = 16, min_separation: float = 40.0) -> List[Cell]:
    """
    Draws count distinct cells in [margin, size - margin) with pairwise
    distance >= min_separation, rejecting candidates in draw order.
    Raises:
        SemanticViolation: the separation cannot be met after many draws.
    """
    rng = np.random.default_rng(seed)
    sites: List[Cell] = []
    for _ in range(10000):
        x, y = (int(v) for v in rng.integers(margin, size - margin, size=2))
        if all((x - sx) ** 2 + (y - sy) ** 2 >= min_separation ** 2 for sx, sy in sites):
            sites.append((x, y))
            if len(sites) == count:
                return sites
    raise SemanticViolation(f'cannot place {count} sites {min_separation} cells apart',
                            'inoculation')


def _voronoi_document(seed: int) -> Dict[str, Any]:
    return {
        'comment': f'{SITE_COUNT} random inoculation sites on uniform nutrient agar (seed {seed})',
        'grid': {'width': VORONOI_SIZE, 'height': VORONOI_SIZE, 'cell_size_mm': 1.0},
        'substrate': {'default_nutrient': 1.0},
        'inoculation': [{'x': x, 'y': y} for x, y in random_sites(seed)],
        'diffusion': {'attractant': {'D': 0.2, 'lambda': 0.01, 'prime_ticks': 0}},
        'engine': {'seed': seed},
    }


def _delaunay_document(seed: int) -> Dict[str, Any]:
    sites = random_sites(seed)
    return {
        'comment': f'The Voronoi site set (seed {seed}) as fed inoculation points '
                   'on non-nutrient agar',
        'grid': {'width': VORONOI_SIZE, 'height': VORONOI_SIZE, 'cell_size_mm': 1.0},
        'substrate': {'default_nutrient': 0.0},
        'sources': [{'x': x, 'y': y, 'kind': 'attractant', 'strength': 1.0} for x, y in sites],
        'inoculation': [{'x': x, 'y': y} for x, y in sites],
        'engine': {'seed': seed, 'suppression_gain': 0.0},
    }


def _continuation_document(seed: int, continuation: bool = True) -> Dict[str, Any]:
    return {
        'comment': 'One inoculation and one attractant; growth continues after completion',
        'grid': {'width': 64, 'height': 32, 'cell_size_mm': 1.0},
        'substrate': {'default_nutrient': 0.0},
        'sources': [{'x': 52, 'y': 16, 'kind': 'attractant', 'strength': 1.0}],
        'inoculation': [{'x': 12, 'y': 16}],
        'engine': {'seed': seed, 'continuation': continuation},
    }


def _maze_document(seed: int, cells: int = MAZE_CELLS) -> Dict[str, Any]:
    maze = generate_perfect_maze(cells, cells, seed)
    walls = [[int(x), int(y)] for y, x in zip(*np.nonzero(~maze.passable))]
    return {
        'comment': f'{maze.width}x{maze.height} perfect maze (seed {seed}) with an attractant '
                   'in the central cell',
        'grid': {'width': maze.width, 'height': maze.height, 'cell_size_mm': 1.0},
        'substrate': {'default_nutrient': 0.0, 'wall_cells': walls},
        'sources': [{'x': maze.goal[0], 'y': maze.goal[1], 'kind': 'attractant',
                     'strength': 1.0}],
        'inoculation': [{'x': maze.start[0], 'y': maze.start[1]}],
        'diffusion': {'attractant': {'D': 0.2, 'lambda': 0.001, 'prime_ticks': 2000}},
        'engine': {'seed': seed},
    }


_GENERATED = {
    'voronoi': _voronoi_document,
    'delaunay': _delaunay_document,
    'continuation': _continuation_document,
    'maze': _maze_document,
}

_BUNDLED = ('spanning_tree', 'substrate_shape', 'self_avoidance')


def _bundled_document(stem: str, seed: int) -> Dict[str, Any]:
    with open(os.path.join(DATA_DIR, f'{stem}.json'), encoding='utf-8') as handle:
        document = json.load(handle)
    document.setdefault('engine', {})['seed'] = seed
    return document


def default_document(name: str, seed: int = 0) -> Dict[str, Any]:
    """
    Returns the scene document an experiment runs on when no scene is given.
    Raises:
        SemanticViolation: the experiment has no scene (phase_space) or is unknown.
    """
    if name in _GENERATED:
        return _GENERATED[name](seed)
    if name in _BUNDLED:
        return _bundled_document(name, seed)
    raise SemanticViolation(f'experiment {name!r} has no default scene', 'name')


def default_scene(name: str, seed: int = 0) -> Scene:
    return parse_document(default_document(name, seed), DATA_DIR)


def bundled_scene(stem: str, seed: int = 0) -> Scene:
    """Loads data/<stem>.json with the engine seed replaced."""
    return parse_document(_bundled_document(stem, seed), DATA_DIR)


def continuation_scene(seed: int = 0, continuation: bool = True) -> Scene:
    return parse_document(_continuation_document(seed, continuation))


def maze_scene(seed: int = 0, cells: int = MAZE_CELLS) -> Scene:
    return parse_document(_maze_document(seed, cells))


def with_seed(scene: Scene, seed: int) -> Scene:
    return dataclasses.replace(scene, params=dataclasses.replace(scene.params, seed=seed))


def scene_sites(scene: Scene, include_attractants: bool = False,
                exclude: Iterable[int] = ()) -> SiteSet:
    """
    Inoculation sites (then attractant cells not already listed) in millimetres.
    Args:
        scene (Scene): The scene.
        include_attractants (bool): Append the attractant source cells.
        exclude (Iterable[int]): Source indices to leave out, e.g. abandoned food.
    """
    cells = list(scene.inoculation_sites)
    skip = set(exclude)
    if include_attractants:
        for index, source in enumerate(scene.sources):
            if source.kind != Species.ATTRACTANT or index in skip:
                continue
            if source.cell not in cells:
                cells.append(source.cell)
    return SiteSet([scene.grid.centre_mm(c) for c in cells])


def maze_of(scene: Scene) -> MazeGrid:
    """
    Reads a maze back from a scene: walls block, the first inoculation site is
    the start and the first attractant the goal.
    Raises:
        SemanticViolation: the scene has no attractant to serve as the goal.
    """
    attractants = scene.sources_of(Species.ATTRACTANT)
    if not attractants:
        raise SemanticViolation('a maze scene needs an attractant at the goal', 'sources')
    return MazeGrid(~scene.substrate.wall, scene.inoculation_sites[0], attractants[0].cell)
