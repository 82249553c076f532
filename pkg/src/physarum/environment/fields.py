"""_summary_
Evolution of the chemical fields of a scene: explicit 5-point-stencil diffusion
with no-flux walls, multiplicative decay, emission by stimulus sources, and the
signed stimulus a growing tip senses.

Functions:
    diffuse_step(field, substrate, D, lam) -> ChemicalField
    deposit_sources(field, sources, accelerated_depletion) -> ChemicalField
    stimulus_at(attractant, repellent, weights, cell) -> float
Classes:
    StimulusWeights: (w_a, w_r) pair.
    SimulationFields: one attractant plume per source plus the repellent field,
                      advanced together once per tick.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional

import numpy as np

from physarum.environment.models import (Cell, ChemicalField, DiffusionParams, Scene,
                                         Species, StimulusSource, SubstrateMap,
                                         STABILITY_LIMIT)
from physarum.errors import DimensionMismatch, OutOfBounds, StabilityViolation
from shared.config import default_prime_ticks

logger = logging.getLogger(__name__)


def diffuse_step(field: ChemicalField, substrate: SubstrateMap, D: float,
                 lam: float) -> ChemicalField:
    """
    Advances a field by one tick of explicit diffusion followed by decay.
    Flux only crosses faces between two open (non-wall) cells, so walls and the
    grid edge reflect. Every cell is updated from the read-only previous grid.
    Args:
        field (ChemicalField): Field to advance (not modified).
        substrate (SubstrateMap): Supplies the wall mask.
        D (float): Diffusion coefficient in cells^2 per tick, D <= 0.25.
        lam (float): Decay fraction per tick, 0 <= lam <= 1.
    Returns:
        ChemicalField: The advanced field; nonnegative, zero on walls.
    Raises:
        DimensionMismatch: field and substrate rasters differ.
        StabilityViolation: D or lam out of range.
    """
    if field.shape != substrate.shape:
        raise DimensionMismatch(f'field {field.shape} vs substrate {substrate.shape}')
    if not 0.0 <= D <= STABILITY_LIMIT:
        raise StabilityViolation(f'D*dt = {D} exceeds {STABILITY_LIMIT}', 'D')
    if not 0.0 <= lam <= 1.0:
        raise StabilityViolation(f'lambda = {lam} outside [0, 1]', 'lambda')

    c = field.concentration
    open_ = ~substrate.wall
    nxt = c.copy()

    horizontal = D * (c[:, 1:] - c[:, :-1]) * (open_[:, 1:] & open_[:, :-1])
    nxt[:, :-1] += horizontal
    nxt[:, 1:] -= horizontal

    vertical = D * (c[1:, :] - c[:-1, :]) * (open_[1:, :] & open_[:-1, :])
    nxt[:-1, :] += vertical
    nxt[1:, :] -= vertical

    nxt *= (1.0 - lam)
    np.maximum(nxt, 0.0, out=nxt)
    nxt[substrate.wall] = 0.0
    return ChemicalField(nxt, field.species)


def deposit_sources(field: ChemicalField, sources: Iterable[StimulusSource],
                    accelerated_depletion: float = 10.0) -> ChemicalField:
    """
    Adds each matching source's emission at its cell. Sources of the other
    species are skipped. Consumable sources lose the deposited amount; once
    colonized they lose accelerated_depletion * strength per tick instead.
    Args:
        field (ChemicalField): Field to deposit into (not modified).
        sources (Iterable[StimulusSource]): Sources; remaining_mass is updated in place.
        accelerated_depletion (float): Feeding multiplier for colonized sources.
    Returns:
        ChemicalField: The field with the emissions added.
    """
    nxt = field.concentration.copy()
    for source in sources:
        if source.kind != field.species:
            continue
        if source.consumable:
            if source.remaining_mass <= 0.0:
                continue
            amount = min(source.strength, source.remaining_mass)
            drain = accelerated_depletion * source.strength if source.colonized else amount
            source.remaining_mass = max(0.0, source.remaining_mass - max(drain, amount))
        else:
            amount = source.strength
        nxt[source.y, source.x] += amount
    return ChemicalField(nxt, field.species)


@dataclass(frozen=True)
class StimulusWeights:
    w_a: float = 1.0
    w_r: float = 1.0


def stimulus_at(attractant: ChemicalField, repellent: ChemicalField,
                weights: StimulusWeights, cell: Cell) -> float:
    """Signed stimulus S = w_a * A(cell) - w_r * R(cell); may be negative."""
    x, y = cell
    h, w = attractant.shape
    if not (0 <= x < w and 0 <= y < h):
        raise OutOfBounds(f'cell {cell} outside {w}x{h} field')
    return (weights.w_a * float(attractant.concentration[y, x])
            - weights.w_r * float(repellent.concentration[y, x]))


class SimulationFields:
    """
    The chemical state of a running scene.
    Each attractant source owns a plume (its own field); the attractant field
    is their sum, which lets a plasmodium ignore the sources it already fed on.
    Repellent sources share one field.
    Attributes:
        scene (Scene): The scene being simulated.
        sources (List[StimulusSource]): Live source objects (masses change).
        plumes (Dict[int, ChemicalField]): Source index -> attractant plume.
        repellent (ChemicalField): Summed repellent field.
    """

    def __init__(self, scene: Scene, sources: Optional[List[StimulusSource]] = None):
        self.scene = scene
        self.sources = sources if sources is not None else scene.fresh_sources()
        shape = scene.grid.shape
        self.plumes: Dict[int, ChemicalField] = {
            i: ChemicalField.zeros(shape, Species.ATTRACTANT)
            for i, s in enumerate(self.sources) if s.kind == Species.ATTRACTANT}
        self.repellent = ChemicalField.zeros(shape, Species.REPELLENT)
        self._sums: Dict[FrozenSet[int], ChemicalField] = {}

    @classmethod
    def prepared(cls, scene: Scene,
                 sources: Optional[List[StimulusSource]] = None) -> 'SimulationFields':
        """Builds the fields and primes them for the scene's priming length."""
        fields = cls(scene, sources)
        given = [p.prime_ticks for p in scene.diffusion.values() if p.prime_ticks is not None]
        if given:
            ticks = max(given)
        else:
            ticks = default_prime_ticks(scene.grid.width, scene.grid.height)
        fields.prime(ticks)
        return fields

    def _params(self, species: Species) -> DiffusionParams:
        return self.scene.diffusion[species]

    def _advance(self, sources: List[StimulusSource]) -> None:
        substrate = self.scene.substrate
        accel = self.scene.accelerated_depletion
        attractant = self._params(Species.ATTRACTANT)
        for index in self.plumes:
            plume = deposit_sources(self.plumes[index], [sources[index]], accel)
            self.plumes[index] = diffuse_step(plume, substrate, attractant.D, attractant.lam)
        repellent = self._params(Species.REPELLENT)
        field = deposit_sources(self.repellent, sources, accel)
        self.repellent = diffuse_step(field, substrate, repellent.D, repellent.lam)
        self._sums.clear()

    def advance(self) -> None:
        """deposit_sources then diffuse_step for every plume and the repellent."""
        self._advance(self.sources)

    def prime(self, ticks: int) -> None:
        """Equilibrates the dish before inoculation; source masses are not consumed."""
        if ticks <= 0:
            return
        shadow = [StimulusSource(s.x, s.y, s.kind, s.strength, s.consumable,
                                 s.remaining_mass, False) for s in self.sources]
        for _ in range(ticks):
            self._advance(shadow)
        logger.debug('primed fields for %d ticks', ticks)

    def attractant(self, exclude: Iterable[int] = ()) -> ChemicalField:
        """Sum of the plumes whose source index is not in exclude."""
        key = frozenset(exclude)
        cached = self._sums.get(key)
        if cached is None:
            total = np.zeros(self.scene.grid.shape, dtype=np.float64)
            for index in sorted(self.plumes):
                if index not in key:
                    total += self.plumes[index].concentration
            cached = ChemicalField(total, Species.ATTRACTANT)
            self._sums[key] = cached
        return cached

    def stimulus_grid(self, weights: StimulusWeights, exclude: Iterable[int] = ()) -> np.ndarray:
        return (weights.w_a * self.attractant(exclude).concentration
                - weights.w_r * self.repellent.concentration)
