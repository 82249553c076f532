"""_summary_
This module defines the data types of the environment: the discretized dish
(GridSpec), its substrate (SubstrateMap), stimulus sources and the chemical
fields they emit, and the Scene that bundles them with the engine parameters.

Models:
    Species: attractant | repellent.
    GridSpec:
        - width (int), height (int): grid size in cells (>= 8 each).
        - cell_size (float): millimetres per cell (> 0).
    SubstrateMap:
        - nutrient (ndarray[h, w] float): 1 = nutrient agar, 0 = non-nutrient agar.
        - wall (ndarray[h, w] bool): impassable, no-flux cells.
    StimulusSource:
        - x, y (int): cell of the source.
        - kind (Species), strength (float): emission per tick.
        - consumable (bool), remaining_mass (float), colonized (bool).
    DiffusionParams:
        - D (float): cells^2 per tick; lam (float): decay fraction per tick.
        - prime_ticks (Optional[int]): pre-inoculation equilibration length.
    ChemicalField:
        - concentration (ndarray[h, w] float >= 0), species (Species).
    Scene:
        - grid, substrate, sources, inoculation_sites, params, diffusion,
          accelerated_depletion, comment.
"""

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from physarum.engine.models import EngineParams
from physarum.errors import DimensionMismatch, OutOfBounds

Cell = Tuple[int, int]

MIN_GRID_SIDE = 8
STABILITY_LIMIT = 0.25
DEFAULT_ACCELERATED_DEPLETION = 10.0


class Species(str, Enum):
    ATTRACTANT = 'attractant'
    REPELLENT = 'repellent'


@dataclass(frozen=True)
class GridSpec:
    width: int
    height: int
    cell_size: float = 1.0

    @property
    def shape(self) -> Tuple[int, int]:
        """Array shape (rows, columns) of rasters on this grid."""
        return (self.height, self.width)

    @property
    def cells(self) -> int:
        return self.width * self.height

    def contains(self, cell: Cell) -> bool:
        x, y = cell
        return 0 <= x < self.width and 0 <= y < self.height

    def require(self, cell: Cell) -> None:
        if not self.contains(cell):
            raise OutOfBounds(f'cell {cell} outside {self.width}x{self.height} grid')

    def centre_mm(self, cell: Cell) -> Tuple[float, float]:
        return (cell[0] * self.cell_size, cell[1] * self.cell_size)


@dataclass
class SubstrateMap:
    nutrient: np.ndarray
    wall: np.ndarray

    def __post_init__(self):
        if self.nutrient.shape != self.wall.shape:
            raise DimensionMismatch(
                f'nutrient {self.nutrient.shape} and wall {self.wall.shape} rasters differ')
        self.nutrient = np.where(self.wall, 0.0, self.nutrient).astype(np.float64)
        self.wall = self.wall.astype(bool)

    @classmethod
    def uniform(cls, grid: GridSpec, nutrient: float = 0.0) -> 'SubstrateMap':
        return cls(np.full(grid.shape, float(nutrient)), np.zeros(grid.shape, dtype=bool))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nutrient.shape

    def is_wall(self, cell: Cell) -> bool:
        return bool(self.wall[cell[1], cell[0]])

    def rich(self, threshold: float) -> np.ndarray:
        """Boolean raster of nutrient-rich, non-wall cells (nutrient >= threshold)."""
        return (self.nutrient >= threshold) & ~self.wall


@dataclass
class StimulusSource:
    x: int
    y: int
    kind: Species = Species.ATTRACTANT
    strength: float = 1.0
    consumable: bool = False
    remaining_mass: float = 0.0
    colonized: bool = False

    @property
    def cell(self) -> Cell:
        return (self.x, self.y)

    @property
    def depleted(self) -> bool:
        return self.consumable and self.remaining_mass <= 0.0


@dataclass(frozen=True)
class DiffusionParams:
    D: float = 0.2
    lam: float = 0.01
    prime_ticks: Optional[int] = None


@dataclass
class ChemicalField:
    concentration: np.ndarray
    species: Species = Species.ATTRACTANT

    @classmethod
    def zeros(cls, shape: Tuple[int, int], species: Species = Species.ATTRACTANT) -> 'ChemicalField':
        return cls(np.zeros(shape, dtype=np.float64), species)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.concentration.shape

    def total(self) -> float:
        return float(self.concentration.sum())

    def copy(self) -> 'ChemicalField':
        return ChemicalField(self.concentration.copy(), self.species)


@dataclass
class Scene:
    grid: GridSpec
    substrate: SubstrateMap
    sources: List[StimulusSource]
    inoculation_sites: List[Cell]
    params: EngineParams = field(default_factory=EngineParams)
    diffusion: Dict[Species, DiffusionParams] = field(default_factory=lambda: {
        Species.ATTRACTANT: DiffusionParams(), Species.REPELLENT: DiffusionParams()})
    accelerated_depletion: float = DEFAULT_ACCELERATED_DEPLETION
    comment: str = ''

    def fresh_sources(self) -> List[StimulusSource]:
        """Independent copies of the sources, for a run to consume."""
        return copy.deepcopy(self.sources)

    def sources_of(self, species: Species) -> List[StimulusSource]:
        return [s for s in self.sources if s.kind == species]
