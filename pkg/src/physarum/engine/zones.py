"""_summary_
Active-zone growth on non-nutrient substrate.

An active zone is a growth tip. Every tick it scores its admissible
8-neighbours by relative chemotaxis, heading momentum, seeded noise and the
abandoned/foreign tube penalty, then steps to the best one, laying tube behind
it. Zones branch, suppress each other, merge with foreign tubes, colonize
sources, root on rich agar, leave a finished wave, and are respawned when a
food source is exhausted or a plasmodium is left without a tip.

Functions:
    init_plasmodium(scene, fields=None) -> PlasmodiumState
    step_zones(state, scene, fields) -> PlasmodiumState
    branch_zones(state, scene, fields) -> PlasmodiumState
    update_dominance(state, scene=None, fields=None, local_stimulus=None) -> PlasmodiumState
    abandon_and_relocate(state, scene, fields=None) -> PlasmodiumState
    continuation_step(state, scene, fields) -> PlasmodiumState
"""

import logging
import math
from typing import Dict, List, Mapping, Optional, Set, Tuple

import numpy as np
from scipy import ndimage

from physarum.engine.graph import (abandon_edge, close_open_edge, retire_open_edge,
                                   split_closed_edge, split_open_edge)
from physarum.engine.models import (DIRECTIONS, SITE_KINDS, ActiveZone, ChoiceObservation,
                                    EngineParams, NodeKind, OccupancyState, PlasmodiumState,
                                    Tag, TubeGraph, WaveOrigin, alignment, angle_between,
                                    direction_index)
from physarum.engine.wavefront import EIGHT
from physarum.environment.fields import SimulationFields, StimulusWeights, stimulus_at
from physarum.environment.models import Cell, Scene, Species
from physarum.errors import InvariantViolation, NoPathError
from physarum.geometry.models import MazeGrid
from physarum.geometry.paths import grid_shortest_path

logger = logging.getLogger(__name__)

Scores = List[Optional[float]]

# stimuli of mirror-image cells differ by diffusion roundoff; closer than this is a tie
TIE_REL_TOL = 1e-9
TIE_ABS_TOL = 1e-12


def ties(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=TIE_REL_TOL, abs_tol=TIE_ABS_TOL)


# ---------------------------------------------------------------------------
# Organism bookkeeping
# ---------------------------------------------------------------------------

def attractant_indices(state: PlasmodiumState) -> List[int]:
    return [i for i, s in enumerate(state.sources) if s.kind == Species.ATTRACTANT]


def colonized_set(state: PlasmodiumState, owner: int) -> Set[int]:
    """Attractant sources already colonized by the owner's organism."""
    return {i for i in attractant_indices(state) if state.colonized_by_organism(i, owner)}


def remaining_targets(state: PlasmodiumState, owner: int) -> List[int]:
    done = colonized_set(state, owner)
    return [i for i in attractant_indices(state) if i not in done]


def weights_of(scene: Scene) -> StimulusWeights:
    return StimulusWeights(scene.params.w_attractant, scene.params.w_repellent)


def organism_stimulus(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields],
                      owner: int, cell: Cell) -> float:
    """Stimulus at a cell as sensed by the owner's organism."""
    if fields is None:
        return 0.0
    attractant = fields.attractant(colonized_set(state, owner))
    return stimulus_at(attractant, fields.repellent, weights_of(scene), cell)


def is_dormant(state: PlasmodiumState, scene: Scene, zone: ActiveZone) -> bool:
    x, y = zone.position
    return bool(scene.substrate.nutrient[y, x] >= scene.params.nutrient_threshold)


def _noise(state: PlasmodiumState, zone: ActiveZone) -> np.ndarray:
    key = np.random.SeedSequence([state.seed, state.tick, zone.id])
    rng = np.random.Generator(np.random.Philox(key))
    return rng.uniform(-1.0, 1.0, len(DIRECTIONS))


# ---------------------------------------------------------------------------
# Admissibility and scoring
# ---------------------------------------------------------------------------

def _corner_cut(scene: Scene, origin: Cell, k: int) -> bool:
    dx, dy = DIRECTIONS[k]
    if dx == 0 or dy == 0:
        return False
    x, y = origin
    wall = scene.substrate.wall
    return bool(wall[y, x + dx] and wall[y + dy, x])


def _foreign(state: PlasmodiumState, owner: int, other: int) -> bool:
    return other >= 0 and state.find(other) != state.find(owner)


def admissible(state: PlasmodiumState, scene: Scene, zone: ActiveZone, k: int) -> bool:
    """
    Whether the zone may step in compass direction k: inside the grid, off
    walls and collision loci, no corner cutting between two walls, not wave
    territory (except a foreign inoculation site), not its own organism's live
    tube or node.
    """
    x, y = zone.position
    dx, dy = DIRECTIONS[k]
    cell = (x + dx, y + dy)
    if not scene.grid.contains(cell):
        return False
    cx, cy = cell
    occ = state.occupancy
    if scene.substrate.wall[cy, cx] or occ.collision[cy, cx] or _corner_cut(scene, zone.position, k):
        return False
    node_id = state.graph.node_at(cell)
    tag = occ.tag[cy, cx]
    if node_id is not None:
        node_owner = state.graph.nodes[node_id].owner
        return _foreign(state, zone.owner, node_owner) and tag != Tag.ABANDONED
    if tag in (Tag.FRONT, Tag.OCCUPIED):
        return False
    if tag == Tag.TUBE:
        return _foreign(state, zone.owner, int(occ.owner[cy, cx]))
    return True


def _penalized(state: PlasmodiumState, zone: ActiveZone, cell: Cell) -> bool:
    x, y = cell
    tag = state.occupancy.tag[y, x]
    if tag == Tag.ABANDONED:
        return True
    return tag == Tag.TUBE and _foreign(state, zone.owner, int(state.occupancy.owner[y, x]))


def score_neighbours(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields],
                     zone: ActiveZone, noise: Optional[np.ndarray],
                     candidates: Optional[List[int]] = None, bonus: float = 0.0) -> Scores:
    """
    Scores the eight compass neighbours (None where inadmissible).
    score = S / max|S| + momentum * cos(turn) + noise_amplitude * u
            - self_avoid_penalty * [abandoned or foreign tube] + bonus
    """
    params = scene.params
    if candidates is None:
        candidates = [k for k in range(len(DIRECTIONS)) if admissible(state, scene, zone, k)]
    x, y = zone.position
    cells = {k: (x + DIRECTIONS[k][0], y + DIRECTIONS[k][1]) for k in candidates}
    raw = {k: organism_stimulus(state, scene, fields, zone.owner, c) for k, c in cells.items()}
    scale = max((abs(v) for v in raw.values()), default=0.0)
    scores: Scores = [None] * len(DIRECTIONS)
    for k in candidates:
        chem = raw[k] / scale if scale > 0.0 else 0.0
        value = chem + params.momentum * alignment(k, zone.heading) + bonus
        if noise is not None:
            value += params.noise_amplitude * float(noise[k])
        if _penalized(state, zone, cells[k]):
            value -= params.self_avoid_penalty
        scores[k] = value
    return scores


def best_direction(scores: Scores) -> Optional[int]:
    """
    Index of the highest score; ties (equal up to roundoff) go to the lowest
    compass index.
    """
    best = None
    for k, value in enumerate(scores):
        if value is None:
            continue
        if best is None or (value > scores[best] and not ties(value, scores[best])):
            best = k
    return best


def _steepest_heading(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields],
                      owner: int, cell: Cell) -> int:
    values: List[Optional[float]] = [None] * len(DIRECTIONS)
    for k, (dx, dy) in enumerate(DIRECTIONS):
        nxt = (cell[0] + dx, cell[1] + dy)
        if scene.grid.contains(nxt) and not scene.substrate.wall[nxt[1], nxt[0]]:
            values[k] = organism_stimulus(state, scene, fields, owner, nxt)
    best = best_direction(values)
    return 0 if best is None else best


# ---------------------------------------------------------------------------
# Zone life cycle
# ---------------------------------------------------------------------------

def spawn_zone(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields],
               owner: int, node_id: int, activity: float = 1.0) -> Optional[ActiveZone]:
    """Creates a zone on a node, heading up the local stimulus; None at the zone cap."""
    if len(state.live_zones()) >= scene.params.max_zones:
        return None
    position = state.graph.nodes[node_id].position
    zone = ActiveZone(id=state.new_zone_id(), owner=owner, position=position,
                      heading=_steepest_heading(state, scene, fields, owner, position),
                      activity=activity, tail_node=node_id,
                      edge_id=state.graph.reserve_edge_id(), polyline=[position],
                      since_branch=scene.params.branch_spacing)
    state.zones.append(zone)
    return zone


def _die(state: PlasmodiumState, zone: ActiveZone, fate: str) -> None:
    retire_open_edge(state, zone)
    zone.kill(fate)
    logger.debug('tick %d: zone %d died (%s)', state.tick, zone.id, fate)


def refresh_spanning(state: PlasmodiumState) -> None:
    indices = attractant_indices(state)
    complete = all(state.sources[i].colonized for i in indices)
    if complete and not state.spanning_complete:
        state.completed_at = state.tick
        logger.info('tick %d: every attractant source is colonized', state.tick)
    state.spanning_complete = complete


def _colonize(state: PlasmodiumState, owner: int, index: int, node_id: int) -> None:
    state.colonized_by.setdefault(index, set()).add(owner)
    state.sources[index].colonized = True
    state.food_nodes.setdefault(index, node_id)


def _sources_at(state: PlasmodiumState, cell: Cell) -> List[int]:
    return [i for i in attractant_indices(state) if state.sources[i].cell == tuple(cell)]


def init_plasmodium(scene: Scene, fields: Optional[SimulationFields] = None) -> PlasmodiumState:
    """
    Inoculates the dish.
    Every site becomes an Inoculation node on an Occupied cell with one zone of
    activity 1 heading up the strongest local stimulus (ties: lowest compass
    index, so N when nothing is sensed). Sites on rich agar also become wave
    origins. Attractants lying on a site count as colonized by its owner.
    Args:
        scene (Scene): A validated scene.
        fields (Optional[SimulationFields]): Fields whose sources the run will use;
            prepared (primed) fields are built if omitted.
    Returns:
        PlasmodiumState: State at tick 0.
    """
    if fields is None:
        fields = SimulationFields.prepared(scene)
    occupancy = OccupancyState.empty(scene.grid.shape)
    graph = TubeGraph(cell_size=scene.grid.cell_size)
    state = PlasmodiumState(occupancy=occupancy, zones=[], graph=graph, seed=scene.params.seed,
                            sources=fields.sources,
                            organism=list(range(len(scene.inoculation_sites))))
    rich = scene.substrate.rich(scene.params.nutrient_threshold)
    for owner, (x, y) in enumerate(scene.inoculation_sites):
        node = graph.add_node((x, y), NodeKind.INOCULATION, owner)
        occupancy.tag[y, x] = Tag.OCCUPIED
        occupancy.owner[y, x] = owner
        for index in _sources_at(state, (x, y)):
            _colonize(state, owner, index, node)
        if rich[y, x]:
            state.wave_origins.append(WaveOrigin(owner, (x, y), 0))
            state.active_waves.add(owner)
    for owner in range(len(scene.inoculation_sites)):
        zone = ActiveZone(id=state.new_zone_id(), owner=owner,
                          position=graph.nodes[owner].position,
                          heading=_steepest_heading(state, scene, fields, owner,
                                                    graph.nodes[owner].position),
                          activity=1.0, tail_node=owner, edge_id=graph.reserve_edge_id(),
                          polyline=[graph.nodes[owner].position],
                          since_branch=scene.params.branch_spacing)
        state.zones.append(zone)
    refresh_spanning(state)
    state.completed_at = None if not state.spanning_complete else 0
    logger.info('inoculated %d sites, %d attractant sources', len(scene.inoculation_sites),
                len(attractant_indices(state)))
    return state


# ---------------------------------------------------------------------------
# Moving
# ---------------------------------------------------------------------------

def _merge(state: PlasmodiumState, zone: ActiveZone, cell: Cell) -> None:
    """The zone ran into a foreign tube or node: join the two plasmodia there."""
    graph = state.graph
    occ = state.occupancy
    x, y = cell
    node_id = graph.node_at(cell)
    if node_id is None:
        edge_id = int(occ.edge[y, x])
        if edge_id in graph.edges:
            node_id = split_closed_edge(state, edge_id, cell)
        else:
            holder = next((z for z in state.zones if z.alive and z.edge_id == edge_id), None)
            if holder is None:
                raise InvariantViolation(f'tube cell {cell} references unknown edge {edge_id}')
            node_id = split_open_edge(state, holder, cell)
    other = graph.nodes[node_id].owner
    zone.polyline.append(cell)
    zone.position = cell
    close_open_edge(state, zone, node_id)
    state.fuse(zone.owner, other)
    for index in _sources_at(state, cell):
        _colonize(state, zone.owner, index, node_id)
    zone.kill('merged')
    logger.debug('tick %d: zone %d merged into owner %d at %s', state.tick, zone.id, other, cell)


def enter_cell(state: PlasmodiumState, scene: Scene, zone: ActiveZone, cell: Cell) -> None:
    """
    Moves a zone onto an admissible neighbouring cell and applies what the
    cell holds: a foreign tube or node (merge), an attractant (colonize and
    end the edge at a Food node), rich agar (root a new wavefront) or nothing
    (extend the tube).
    """
    graph = state.graph
    occ = state.occupancy
    x, y = cell
    node_id = graph.node_at(cell)
    tag = occ.tag[y, x]
    foreign_node = node_id is not None and _foreign(state, zone.owner, graph.nodes[node_id].owner)
    foreign_tube = tag == Tag.TUBE and _foreign(state, zone.owner, int(occ.owner[y, x]))
    if foreign_node or foreign_tube:
        _merge(state, zone, cell)
        return

    zone.polyline.append(cell)
    zone.position = cell
    targets = [i for i in _sources_at(state, cell) if not state.colonized_by_organism(i, zone.owner)]
    if targets:
        food = node_id if node_id is not None else graph.add_node(cell, NodeKind.FOOD, zone.owner)
        edge = close_open_edge(state, zone, food)
        if edge is not None:
            occ.set_tube(cell, edge, zone.owner)
        for index in targets:
            _colonize(state, zone.owner, index, food)
        logger.info('tick %d: owner %d colonized source(s) %s', state.tick, zone.owner, targets)
        return

    if scene.substrate.nutrient[y, x] >= scene.params.nutrient_threshold and tag == Tag.EMPTY:
        root = graph.add_node(cell, NodeKind.BRANCH, zone.owner)
        close_open_edge(state, zone, root)
        occ.tag[y, x] = Tag.FRONT
        occ.owner[y, x] = zone.owner
        state.wave_origins.append(WaveOrigin(zone.owner, cell, state.tick))
        state.active_waves.add(zone.owner)
        logger.debug('tick %d: zone %d rooted at %s', state.tick, zone.id, cell)
        return

    occ.set_tube(cell, zone.edge_id, zone.owner)


def _record_choice(state: PlasmodiumState, zone: ActiveZone, scores: Scores, chosen: int) -> None:
    occ = state.occupancy
    x, y = zone.position
    kinds: Dict[int, str] = {}
    for k, value in enumerate(scores):
        if value is None:
            continue
        cx, cy = x + DIRECTIONS[k][0], y + DIRECTIONS[k][1]
        tag = occ.tag[cy, cx]
        if tag == Tag.ABANDONED:
            kinds[k] = 'abandoned'
        elif tag == Tag.EMPTY:
            kinds[k] = 'fresh'
    present = set(kinds.values())
    if {'abandoned', 'fresh'} <= present and chosen in kinds:
        state.choices.append(ChoiceObservation(state.tick, zone.id, kinds[chosen] == 'fresh'))


def _emerge(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields],
            zone: ActiveZone) -> None:
    """
    A dormant zone whose wave has stopped leaves it: it jumps to the best
    admissible poor-agar cell bordering its patch, and the tube runs from its
    tail node through the patch along a shortest 8-neighbour path.
    """
    occ = state.occupancy
    territory = occ.territory() & (occ.owner == zone.owner)
    labels, _ = ndimage.label(territory, structure=EIGHT)
    x, y = zone.position
    patch = labels == labels[y, x]
    if labels[y, x] == 0:
        return
    poor = scene.substrate.nutrient < scene.params.nutrient_threshold
    ring = (ndimage.binary_dilation(patch, structure=EIGHT) & ~patch & poor
            & ~scene.substrate.wall & ~occ.collision & (occ.tag == Tag.EMPTY))
    if not ring.any():
        return
    attractant = (fields.attractant(colonized_set(state, zone.owner)) if fields is not None
                  else None)
    if attractant is not None:
        grid = (scene.params.w_attractant * attractant.concentration
                - scene.params.w_repellent * fields.repellent.concentration)
    else:
        grid = np.zeros(scene.grid.shape)
    masked = np.where(ring, grid, -np.inf)
    top = float(masked.max())
    near_top = ring & np.isclose(masked, top, rtol=TIE_REL_TOL, atol=TIE_ABS_TOL)
    flat = int(np.flatnonzero(near_top)[0])
    target = (flat % scene.grid.width, flat // scene.grid.width)
    passable = patch.copy()
    passable[target[1], target[0]] = True
    try:
        path = grid_shortest_path(MazeGrid(passable, zone.position, target),
                                  scene.grid.cell_size)
    except NoPathError:
        return
    for cell in path[1:-1]:
        zone.polyline.append(cell)
    zone.position = path[-2] if len(path) > 1 else zone.position
    zone.heading = direction_index(zone.position, target)
    enter_cell(state, scene, zone, target)
    zone.since_branch += 1
    logger.debug('tick %d: zone %d emerged at %s', state.tick, zone.id, target)


def step_zones(state: PlasmodiumState, scene: Scene,
               fields: Optional[SimulationFields]) -> PlasmodiumState:
    """
    Moves every live, non-idle zone one cell, in zone-id order.
    Dormant zones (on rich agar) wait for their wave to finish and then emerge.
    A zone without any admissible neighbour dies; its open tube is abandoned.
    """
    for zone in sorted(state.live_zones(), key=lambda z: z.id):
        if not zone.alive or zone.idle:
            continue
        if is_dormant(state, scene, zone):
            if zone.owner not in state.active_waves and remaining_targets(state, zone.owner):
                _emerge(state, scene, fields, zone)
            continue
        scores = score_neighbours(state, scene, fields, zone, _noise(state, zone))
        k = best_direction(scores)
        if k is None:
            _die(state, zone, 'trapped')
            continue
        _record_choice(state, zone, scores, k)
        dx, dy = DIRECTIONS[k]
        zone.heading = k
        zone.since_branch += 1
        enter_cell(state, scene, zone, (zone.position[0] + dx, zone.position[1] + dy))
    refresh_spanning(state)
    return state


# ---------------------------------------------------------------------------
# Branching and dominance
# ---------------------------------------------------------------------------

def _foraging(state: PlasmodiumState, scene: Scene) -> List[ActiveZone]:
    return sorted((z for z in state.live_zones()
                   if not z.idle and not is_dormant(state, scene, z)), key=lambda z: z.id)


def branch_zones(state: PlasmodiumState, scene: Scene,
                 fields: Optional[SimulationFields]) -> PlasmodiumState:
    """
    Binary branching. A zone splits when the best admissible direction scores
    above zero, the best direction at least 90 degrees away from it scores at
    least branch_ratio times as much, and the zone has walked branch_spacing
    cells since it last branched. A Branch node is placed at the zone (unless
    it stands on its tail node); the parent keeps the best direction and the
    child takes the rival with child_activity_factor times the parent's activity.
    """
    params = scene.params
    for zone in _foraging(state, scene):
        if len(state.live_zones()) >= params.max_zones:
            break
        if zone.since_branch < params.branch_spacing:
            continue
        scores = score_neighbours(state, scene, fields, zone, None)
        best = best_direction(scores)
        if best is None or scores[best] <= 0.0:
            continue
        rivals: Scores = [v if v is not None and angle_between(k, best) >= 90 else None
                          for k, v in enumerate(scores)]
        rival = best_direction(rivals)
        if rival is None:
            continue
        needed = params.branch_ratio * scores[best]
        if scores[rival] < needed and not ties(scores[rival], needed):
            continue
        if len(zone.polyline) > 1:
            node = state.graph.add_node(zone.position, NodeKind.BRANCH, zone.owner)
            close_open_edge(state, zone, node)
        child = ActiveZone(id=state.new_zone_id(), owner=zone.owner, position=zone.position,
                           heading=rival, activity=zone.activity * params.child_activity_factor,
                           tail_node=zone.tail_node, edge_id=state.graph.reserve_edge_id(),
                           polyline=[zone.position])
        state.zones.append(child)
        zone.heading = best
        zone.since_branch = 0
        logger.debug('tick %d: zone %d branched at %s, child %d', state.tick, zone.id,
                     zone.position, child.id)
    return state


def update_dominance(state: PlasmodiumState, scene: Optional[Scene] = None,
                     fields: Optional[SimulationFields] = None,
                     local_stimulus: Optional[Mapping[int, float]] = None) -> PlasmodiumState:
    """
    Global max-based inhibition among foraging zones:
        activity <- activity + local stimulus - suppression_gain * max(other activities)
    Zones dropping below activity_floor die and their open tube is abandoned,
    except the zone that led in activity at the start of the tick.
    Args:
        state (PlasmodiumState): Mutated in place.
        scene (Optional[Scene]): Supplies the parameters (defaults otherwise).
        fields (Optional[SimulationFields]): Source of the local stimulus.
        local_stimulus (Optional[Mapping[int, float]]): Zone id -> stimulus override.
    """
    params = scene.params if scene is not None else EngineParams()
    if scene is not None:
        zones = _foraging(state, scene)
    else:
        zones = sorted((z for z in state.live_zones() if not z.idle), key=lambda z: z.id)
    if not zones:
        return state
    before = {z.id: z.activity for z in zones}
    leader = max(zones, key=lambda z: (z.activity, -z.id)).id
    updated: Dict[int, float] = {}
    for zone in zones:
        others = [a for zid, a in before.items() if zid != zone.id]
        inhibition = params.suppression_gain * max(others) if others else 0.0
        if local_stimulus is not None:
            local = float(local_stimulus.get(zone.id, 0.0))
        elif scene is not None:
            local = organism_stimulus(state, scene, fields, zone.owner, zone.position)
        else:
            local = 0.0
        updated[zone.id] = max(0.0, zone.activity + local - inhibition)
    for zone in zones:
        zone.activity = updated[zone.id]
        if zone.activity < params.activity_floor and zone.id != leader:
            _die(state, zone, 'suppressed')
    return state


# ---------------------------------------------------------------------------
# Abandonment, re-foraging and completion
# ---------------------------------------------------------------------------

def _abandon_food(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields],
                  index: int, reason: str) -> None:
    node_id = state.food_nodes[index]
    for edge in state.graph.incident(node_id):
        if not edge.abandoned:
            abandon_edge(state, edge)
    state.abandoned_sources.add(index)
    owner = state.graph.nodes[node_id].owner
    zone = spawn_zone(state, scene, fields, owner, node_id)
    logger.info('tick %d: food node %d abandoned (%s)%s', state.tick, node_id, reason,
                f', zone {zone.id} relocated there' if zone else '')


def _retire_satisfied(state: PlasmodiumState, scene: Scene) -> None:
    for zone in sorted(state.live_zones(), key=lambda z: z.id):
        if zone.idle or remaining_targets(state, zone.owner):
            continue
        retire_open_edge(state, zone)
        zone.idle = True


def _reforage(state: PlasmodiumState, scene: Scene, fields: Optional[SimulationFields]) -> None:
    roots = sorted({state.find(o) for o in state.owners()})
    for root in roots:
        if any(state.find(z.owner) == root for z in state.live_zones()):
            continue
        if not remaining_targets(state, root):
            continue
        best: Optional[Tuple[float, int]] = None
        for node in sorted(state.graph.nodes.values(), key=lambda n: n.id):
            if node.kind not in SITE_KINDS or state.find(node.owner) != root:
                continue
            probe = ActiveZone(-1, node.owner, node.position, 0, 1.0, node.id, -1, [node.position])
            if not any(admissible(state, scene, probe, k) for k in range(len(DIRECTIONS))):
                continue
            value = organism_stimulus(state, scene, fields, node.owner, node.position)
            if best is None or (value > best[0] and not ties(value, best[0])):
                best = (value, node.id)
        if best is not None:
            node = state.graph.nodes[best[1]]
            zone = spawn_zone(state, scene, fields, node.owner, node.id)
            if zone is not None:
                logger.debug('tick %d: re-foraging zone %d at node %d', state.tick, zone.id,
                             node.id)


def abandon_and_relocate(state: PlasmodiumState, scene: Scene,
                         fields: Optional[SimulationFields] = None) -> PlasmodiumState:
    """
    Abandons the tubes of exhausted (or contaminated) food sources and
    relocates protoplasm: a fresh zone starts from the abandoned Food node.
    Zones of a plasmodium with nothing left to find pull back to their tail
    node and idle; a plasmodium left without zones while sources remain gets a
    new zone at its most stimulated site.
    """
    threshold = scene.params.metabolite_threshold
    for index in sorted(state.food_nodes):
        if index in state.abandoned_sources:
            continue
        source = state.sources[index]
        if state.graph.nodes[state.food_nodes[index]].kind != NodeKind.FOOD:
            continue
        if source.consumable and source.colonized and source.remaining_mass <= 0.0:
            _abandon_food(state, scene, fields, index, 'exhausted')
        elif threshold is not None and fields is not None:
            x, y = source.cell
            if fields.repellent.concentration[y, x] > threshold:
                _abandon_food(state, scene, fields, index, 'contaminated')
    _retire_satisfied(state, scene)
    _reforage(state, scene, fields)
    refresh_spanning(state)
    return state


# ---------------------------------------------------------------------------
# Continuation
# ---------------------------------------------------------------------------

def _tube_moves(state: PlasmodiumState, owner: int) -> Dict[Cell, List[Tuple[Cell, int, bool]]]:
    """Cell -> (next cell, edge id, leaves an endpoint) along live tubes of the organism."""
    moves: Dict[Cell, List[Tuple[Cell, int, bool]]] = {}
    root = state.find(owner)
    for edge in state.graph.edges.values():
        if edge.abandoned or state.find(edge.owner) != root:
            continue
        line = edge.polyline
        last = len(line) - 1
        for i in range(last):
            a, b = line[i], line[i + 1]
            moves.setdefault(a, []).append((b, edge.id, i == 0))
            moves.setdefault(b, []).append((a, edge.id, i + 1 == last))
    return moves


def continuation_step(state: PlasmodiumState, scene: Scene,
                      fields: Optional[SimulationFields]) -> PlasmodiumState:
    """
    After completion, with continuation on, idle zones keep moving along their
    organism's live tubes: the tube penalty becomes a bonus of the same size,
    no new tube is laid, and each departure from a node into an edge counts a
    visit on that edge. Abandoned tubes get no bonus and are not followed.
    """
    params = scene.params
    if not (params.continuation and state.spanning_complete):
        return state
    for zone in sorted(state.live_zones(), key=lambda z: z.id):
        if not zone.idle:
            continue
        moves = _tube_moves(state, zone.owner).get(zone.position, [])
        if not moves:
            continue
        by_direction = {direction_index(zone.position, cell): (cell, edge_id, leaving)
                        for cell, edge_id, leaving in moves}
        scores = score_neighbours(state, scene, fields, zone, _noise(state, zone),
                                  candidates=sorted(by_direction),
                                  bonus=params.self_avoid_penalty)
        k = best_direction(scores)
        if k is None:
            continue
        cell, edge_id, leaving = by_direction[k]
        if leaving:
            state.graph.edges[edge_id].visits += 1
        zone.position = cell
        zone.heading = k
        zone.polyline = [cell]
    return state
