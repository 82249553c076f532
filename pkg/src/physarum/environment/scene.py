"""_summary_
Parsing and validation of scene documents.

A scene document is JSON checked first against shared/schemas/scene_schema.json
(shape and types, unknown keys rejected) and then semantically (bounds, walls,
diffusion stability, grid-size cap, engine parameter ranges). Every error names
the offending field with a dotted/indexed path such as 'sources[2]'.

Functions:
    parse_scene(text, base_dir=None) -> Scene
    load_scene(path) -> Scene
    scene_to_document(scene) -> dict
    rasterize_substrate(grid, document, base_dir) -> SubstrateMap
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

import numpy as np

from physarum.engine.models import EngineParams
from physarum.environment.models import (DEFAULT_ACCELERATED_DEPLETION, DiffusionParams,
                                         GridSpec, Scene, Species, StimulusSource,
                                         SubstrateMap, STABILITY_LIMIT)
from physarum.environment.pgm import read_pgm
from physarum.errors import SchemaViolation, SemanticViolation, StabilityViolation
from shared.config import max_cells
from shared.schemas import validator_for

logger = logging.getLogger(__name__)


def json_path(parts) -> str:
    path = ''
    for part in parts:
        if isinstance(part, int):
            path += f'[{part}]'
        else:
            path += f'.{part}' if path else str(part)
    return path or '<root>'


def _clip_rect(grid: GridSpec, rect: Dict[str, Any]):
    x0, y0 = max(0, rect['x']), max(0, rect['y'])
    x1 = min(grid.width, rect['x'] + rect['w'])
    y1 = min(grid.height, rect['y'] + rect['h'])
    return slice(y0, max(y0, y1)), slice(x0, max(x0, x1))


def _resample(image: np.ndarray, shape) -> np.ndarray:
    """Nearest-neighbour resampling of a raster to shape (rows, columns)."""
    if image.shape == tuple(shape):
        return image
    rows = (np.arange(shape[0]) * image.shape[0] // shape[0]).astype(int)
    cols = (np.arange(shape[1]) * image.shape[1] // shape[1]).astype(int)
    return image[np.ix_(rows, cols)]


def rasterize_substrate(grid: GridSpec, document: Dict[str, Any],
                        base_dir: Optional[str] = None) -> SubstrateMap:
    """
    Builds the substrate rasters: default nutrient, then the mask image, then
    nutrient rectangles in order, then wall rectangles and wall cells.
    Args:
        grid (GridSpec): Target grid.
        document (Dict[str, Any]): The 'substrate' block of a scene document.
        base_dir (Optional[str]): Directory that relative mask paths resolve against.
    Returns:
        SubstrateMap: Nutrient and wall rasters; walls carry no nutrient.
    Raises:
        SemanticViolation: the mask image cannot be read.
    """
    nutrient = np.full(grid.shape, float(document.get('default_nutrient', 0.0)))
    wall = np.zeros(grid.shape, dtype=bool)

    mask = document.get('mask_image')
    if mask:
        path = mask if os.path.isabs(mask) else os.path.join(base_dir or '.', mask)
        try:
            image = read_pgm(path)
        except (OSError, ValueError) as exc:
            raise SemanticViolation(f'cannot read mask image {path}: {exc}',
                                    'substrate.mask_image') from exc
        nutrient = _resample(image, grid.shape) / 255.0

    for rect in document.get('nutrient_rects', []):
        rows, cols = _clip_rect(grid, rect)
        nutrient[rows, cols] = float(rect.get('value', 1.0))
    for rect in document.get('wall_rects', []):
        rows, cols = _clip_rect(grid, rect)
        wall[rows, cols] = True
    for i, (x, y) in enumerate(document.get('wall_cells', [])):
        if not grid.contains((x, y)):
            raise SemanticViolation(f'wall cell ({x}, {y}) outside the grid',
                                    f'substrate.wall_cells[{i}]')
        wall[y, x] = True
    return SubstrateMap(np.clip(nutrient, 0.0, 1.0), wall)


def _diffusion(document: Dict[str, Any]) -> Dict[Species, DiffusionParams]:
    result: Dict[Species, DiffusionParams] = {}
    attractant_block = document.get('attractant')
    for species in Species:
        block = document.get(species.value, attractant_block)
        if block is None:
            result[species] = DiffusionParams()
            continue
        if block['D'] > STABILITY_LIMIT:
            raise StabilityViolation(
                f'D*dt = {block["D"]} exceeds the explicit-scheme bound {STABILITY_LIMIT}',
                f'diffusion.{species.value}.D')
        result[species] = DiffusionParams(D=float(block['D']), lam=float(block['lambda']),
                                          prime_ticks=block.get('prime_ticks'))
    return result


def parse_document(document: Any, base_dir: Optional[str] = None) -> Scene:
    """
    Validates an already-decoded scene document and builds the Scene.
    Raises:
        SchemaViolation: the document does not match the scene schema.
        SemanticViolation: bounds, walls, grid cap or engine ranges are violated.
        StabilityViolation: a diffusion coefficient exceeds 0.25.
    """
    errors = sorted(validator_for('scene').iter_errors(document),
                    key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        first = errors[0]
        raise SchemaViolation(first.message, json_path(first.absolute_path))

    g = document['grid']
    grid = GridSpec(g['width'], g['height'], float(g.get('cell_size_mm', 1.0)))
    if grid.cells > max_cells():
        raise SemanticViolation(f'{grid.width}x{grid.height} exceeds the cap of '
                                f'{max_cells()} cells', 'grid')

    substrate = rasterize_substrate(grid, document.get('substrate', {}), base_dir)

    sites: List = []
    for i, site in enumerate(document['inoculation']):
        cell = (site['x'], site['y'])
        if not grid.contains(cell):
            raise SemanticViolation(f'inoculation site {cell} outside the grid',
                                    f'inoculation[{i}]')
        if substrate.is_wall(cell):
            raise SemanticViolation(f'inoculation site {cell} is on a wall', f'inoculation[{i}]')
        if cell in sites:
            raise SemanticViolation(f'duplicate inoculation site {cell}', f'inoculation[{i}]')
        sites.append(cell)

    sources: List[StimulusSource] = []
    for i, src in enumerate(document.get('sources', [])):
        cell = (src['x'], src['y'])
        if not grid.contains(cell):
            raise SemanticViolation(f'source at {cell} outside the grid', f'sources[{i}]')
        if substrate.is_wall(cell):
            raise SemanticViolation(f'source at {cell} is on a wall', f'sources[{i}]')
        consumable = bool(src.get('consumable', False))
        sources.append(StimulusSource(
            x=cell[0], y=cell[1], kind=Species(src['kind']),
            strength=float(src.get('strength', 1.0)), consumable=consumable,
            remaining_mass=float(src.get('mass', 0.0)) if consumable else 0.0))

    params = EngineParams.from_dict(document.get('engine', {}))
    diffusion = _diffusion(document.get('diffusion', {}))

    scene = Scene(grid=grid, substrate=substrate, sources=sources, inoculation_sites=sites,
                  params=params, diffusion=diffusion,
                  accelerated_depletion=float(document.get('accelerated_depletion',
                                                           DEFAULT_ACCELERATED_DEPLETION)),
                  comment=document.get('comment', ''))
    logger.debug('parsed scene %dx%d with %d sources and %d sites', grid.width, grid.height,
                 len(sources), len(sites))
    return scene


def parse_scene(text: str, base_dir: Optional[str] = None) -> Scene:
    """
    Parses a scene document.
    Args:
        text (str): JSON text of the document.
        base_dir (Optional[str]): Directory used to resolve a relative mask_image.
    Returns:
        Scene: The validated scene.
    Raises:
        SchemaViolation: invalid JSON or a schema mismatch.
        SemanticViolation / StabilityViolation: see parse_document.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f'invalid JSON: {exc.msg} at line {exc.lineno}') from exc
    return parse_document(document, base_dir)


def load_scene(path: str) -> Scene:
    with open(path, encoding='utf-8') as handle:
        return parse_scene(handle.read(), os.path.dirname(os.path.abspath(path)))


def scene_to_document(scene: Scene) -> Dict[str, Any]:
    """
    Serializes a scene back to a document. Substrate rasters are written as
    per-cell nutrient rectangles and wall cells, so the result round-trips
    through parse_document without a mask file.
    """
    h, w = scene.grid.shape
    nutrient_rects = []
    values = np.unique(scene.substrate.nutrient)
    default = float(values[np.argmax([(scene.substrate.nutrient == v).sum() for v in values])])
    for y in range(h):
        for x in range(w):
            value = float(scene.substrate.nutrient[y, x])
            if value != default and not scene.substrate.wall[y, x]:
                nutrient_rects.append({'x': x, 'y': y, 'w': 1, 'h': 1, 'value': value})
    wall_cells = [[int(x), int(y)] for y, x in zip(*np.nonzero(scene.substrate.wall))]
    return {
        'comment': scene.comment,
        'grid': {'width': scene.grid.width, 'height': scene.grid.height,
                 'cell_size_mm': scene.grid.cell_size},
        'substrate': {'default_nutrient': default, 'nutrient_rects': nutrient_rects,
                      'wall_cells': wall_cells},
        'sources': [{'x': s.x, 'y': s.y, 'kind': s.kind.value, 'strength': s.strength,
                     'consumable': s.consumable, 'mass': s.remaining_mass}
                    for s in scene.sources],
        'inoculation': [{'x': x, 'y': y} for x, y in scene.inoculation_sites],
        'diffusion': {species.value: _diffusion_block(scene.diffusion[species])
                      for species in Species},
        'accelerated_depletion': scene.accelerated_depletion,
        'engine': scene.params.to_dict(),
    }


def _diffusion_block(params: DiffusionParams) -> Dict[str, Any]:
    block: Dict[str, Any] = {'D': params.D, 'lambda': params.lam}
    if params.prime_ticks is not None:
        block['prime_ticks'] = params.prime_ticks
    return block
