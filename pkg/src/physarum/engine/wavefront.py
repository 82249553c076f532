"""_summary_
Omnidirectional expansion of the plasmodium over nutrient-rich substrate.

Each owner's wavefront radiates from its origins (inoculation sites on rich
agar, or cells where an active zone rooted) at wave_speed cells per tick,
spreading only through 8-connected free rich cells. Every claimed cell keeps
an arrival tick and the origin it inherited (its anchor). A free neighbour of
a claimed cell is reached at the later of
    anchor start + Euclidean distance to the anchor / wave_speed
    neighbour arrival + 1 / wave_speed
so the front is a Euclidean disc in open agar and still advances at most
wave_speed hops per tick when it has to bend around walls.

Claims are computed in two phases from the previous tick's occupancy: every
owner proposes, then cells proposed by or touching another owner become
permanent collision cells that stay Empty.

Functions:
    step_wavefront(state, scene, fields=None) -> PlasmodiumState
    arrival_times(state, scene, owner) -> (np.ndarray, np.ndarray)
"""

import logging
from typing import Dict, Tuple

import numpy as np
from scipy import ndimage

from physarum.engine.models import DIRECTIONS, PlasmodiumState, Tag
from physarum.environment.models import Scene

logger = logging.getLogger(__name__)

EIGHT = np.ones((3, 3), dtype=bool)
REACH_TOLERANCE = 1e-9


def free_rich_cells(state: PlasmodiumState, scene: Scene) -> np.ndarray:
    occ = state.occupancy
    return (scene.substrate.rich(scene.params.nutrient_threshold)
            & ~occ.collision & (occ.tag == Tag.EMPTY))


def _seed_origins(state: PlasmodiumState) -> None:
    occ = state.occupancy
    for index, origin in enumerate(state.wave_origins):
        x, y = origin.cell
        if occ.anchor[y, x] < 0:
            occ.anchor[y, x] = index
            occ.arrival[y, x] = float(origin.start_tick)


def _neighbour_view(array: np.ndarray, dx: int, dy: int, fill) -> np.ndarray:
    """array[y + dy, x + dx] for every cell (x, y), fill outside the grid."""
    h, w = array.shape
    padded = np.pad(array, 1, mode='constant', constant_values=fill)
    return padded[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]


def arrival_times(state: PlasmodiumState, scene: Scene,
                  owner: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Earliest tick at which the owner's wavefront can reach each cell from the
    cells it has already claimed.
    Args:
        state (PlasmodiumState): Claimed cells carry arrival and anchor.
        scene (Scene): Supplies walls and wave_speed.
        owner (int): Inoculation owner.
    Returns:
        (np.ndarray, np.ndarray): Arrival ticks (inf where unreachable) and the
        inherited anchors (-1 where unreachable), both [h, w].
    """
    occ = state.occupancy
    speed = scene.params.wave_speed
    wall = scene.substrate.wall
    h, w = occ.shape
    ys, xs = np.indices((h, w))
    origin_x = np.array([o.cell[0] for o in state.wave_origins], dtype=float)
    origin_y = np.array([o.cell[1] for o in state.wave_origins], dtype=float)
    origin_t = np.array([o.start_tick for o in state.wave_origins], dtype=float)

    claimed = occ.territory() & (occ.owner == owner) & (occ.anchor >= 0)
    best = np.full((h, w), np.inf)
    best_anchor = np.full((h, w), -1, dtype=np.int32)
    for dx, dy in DIRECTIONS:
        reached_from = _neighbour_view(claimed, dx, dy, False)
        if dx and dy:
            # no squeezing diagonally between two wall cells
            reached_from &= ~(_neighbour_view(wall, dx, 0, False)
                              & _neighbour_view(wall, 0, dy, False))
        if not reached_from.any():
            continue
        anchor = np.where(reached_from, _neighbour_view(occ.anchor, dx, dy, -1), 0)
        hop = _neighbour_view(occ.arrival, dx, dy, np.inf) + 1.0 / speed
        direct = origin_t[anchor] + np.hypot(xs - origin_x[anchor], ys - origin_y[anchor]) / speed
        candidate = np.where(reached_from, np.maximum(direct, hop), np.inf)
        better = candidate < best
        best[better] = candidate[better]
        best_anchor[better] = anchor[better]
    return best, best_anchor


def step_wavefront(state: PlasmodiumState, scene: Scene, fields=None) -> PlasmodiumState:
    """
    Advances every wavefront by one tick.
    Args:
        state (PlasmodiumState): Mutated in place and returned.
        scene (Scene): Supplies substrate, walls and wave_speed.
        fields: Unused; accepted so every tick phase shares one signature.
    Returns:
        PlasmodiumState: The same state.
    """
    occ = state.occupancy
    owners = sorted({o.owner for o in state.wave_origins})
    occ.tag[occ.tag == Tag.FRONT] = Tag.OCCUPIED
    if not owners:
        state.active_waves = set()
        return state
    _seed_origins(state)

    free = free_rich_cells(state, scene)
    claimed = (occ.tag == Tag.OCCUPIED)
    territories: Dict[int, np.ndarray] = {o: claimed & (occ.owner == o) for o in owners}

    proposals: Dict[int, np.ndarray] = {}
    reached: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
    horizon = state.tick + 1 + REACH_TOLERANCE
    for owner in owners:
        arrival, anchor = arrival_times(state, scene, owner)
        reached[owner] = (arrival, anchor)
        proposals[owner] = free & (arrival <= horizon)

    collisions = np.zeros(occ.shape, dtype=bool)
    if len(owners) > 1:
        for owner in owners:
            others = np.zeros(occ.shape, dtype=bool)
            for other in owners:
                if other != owner:
                    others |= proposals[other] | territories[other]
            collisions |= proposals[owner] & ndimage.binary_dilation(others, structure=EIGHT)

    for owner in owners:
        claim = proposals[owner] & ~collisions
        arrival, anchor = reached[owner]
        occ.tag[claim] = Tag.FRONT
        occ.owner[claim] = owner
        occ.arrival[claim] = arrival[claim]
        occ.anchor[claim] = anchor[claim]
    occ.collision |= collisions

    free = free_rich_cells(state, scene)
    active = set()
    for owner in owners:
        territory = occ.territory() & (occ.owner == owner)
        if (ndimage.binary_dilation(territory, structure=EIGHT) & free).any():
            active.add(owner)
    state.active_waves = active
    logger.debug('tick %d: wavefront claimed %d cells, %d collisions, %d active fronts',
                 state.tick, int((occ.tag == Tag.FRONT).sum()), int(collisions.sum()), len(active))
    return state
