"""_summary_
This module defines the data models of the growth engine.

Models:
    EngineParams: knobs of both growth regimes (wavefront and active zones).
    Tag: occupancy tags (Empty, Front, Occupied, Tube, AbandonedTube).
    OccupancyState: per-cell tag, owner and tube-edge rasters plus the collision mask.
    ActiveZone: a growth tip with heading, activity and its open tube polyline.
    NodeKind / Node / Edge / TubeGraph: the planar graph of protoplasmic tubes.
    PlasmodiumState: everything that evolves from tick to tick.
    TraceRecord / ChoiceObservation: per-tick summaries and per-step choice records.
"""

import math
from dataclasses import dataclass, field, fields as dataclass_fields
from enum import Enum, IntEnum
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np

from physarum.errors import InvariantViolation, SemanticViolation

Cell = Tuple[int, int]

# Compass order N, NE, E, SE, S, SW, W, NW; north is decreasing y.
DIRECTIONS: Tuple[Cell, ...] = ((0, -1), (1, -1), (1, 0), (1, 1),
                                (0, 1), (-1, 1), (-1, 0), (-1, -1))
SQRT2 = math.sqrt(2.0)
U64_MAX = 2 ** 64 - 1


def step_length(a: Cell, b: Cell) -> float:
    """Length in cells of one 8-neighbour step."""
    dx, dy = abs(a[0] - b[0]), abs(a[1] - b[1])
    if max(dx, dy) != 1:
        raise InvariantViolation(f'{a} and {b} are not 8-neighbours')
    return SQRT2 if dx and dy else 1.0


def direction_index(a: Cell, b: Cell) -> int:
    return DIRECTIONS.index((b[0] - a[0], b[1] - a[1]))


def alignment(i: int, j: int) -> float:
    """Cosine of the angle between compass directions i and j."""
    return math.cos(math.pi / 4.0 * ((i - j) % 8))


def angle_between(i: int, j: int) -> int:
    """Angle in degrees between compass directions i and j (0..180)."""
    d = (i - j) % 8
    return 45 * min(d, 8 - d)


@dataclass(frozen=True)
class EngineParams:
    wave_speed: float = 1.0
    nutrient_threshold: float = 0.5
    branch_ratio: float = 0.9
    noise_amplitude: float = 0.05
    self_avoid_penalty: float = 2.0
    suppression_gain: float = 0.02
    activity_floor: float = 0.05
    continuation: bool = False
    max_zones: int = 64
    seed: int = 0
    momentum: float = 0.1
    branch_spacing: int = 4
    child_activity_factor: float = 0.5
    metabolite_threshold: Optional[float] = None
    w_attractant: float = 1.0
    w_repellent: float = 1.0

    def __post_init__(self):
        checks = [
            ('wave_speed', 0.0 < self.wave_speed <= 1.0, 'must be in (0, 1]'),
            ('nutrient_threshold', 0.0 <= self.nutrient_threshold <= 1.0, 'must be in [0, 1]'),
            ('branch_ratio', 0.0 < self.branch_ratio <= 1.0, 'must be in (0, 1]'),
            ('noise_amplitude', self.noise_amplitude >= 0.0, 'must be >= 0'),
            ('self_avoid_penalty', self.self_avoid_penalty >= 0.0, 'must be >= 0'),
            ('suppression_gain', self.suppression_gain >= 0.0, 'must be >= 0'),
            ('activity_floor', self.activity_floor >= 0.0, 'must be >= 0'),
            ('max_zones', self.max_zones >= 1, 'must be >= 1'),
            ('seed', 0 <= self.seed <= U64_MAX, 'must be a 64-bit unsigned integer'),
            ('momentum', self.momentum >= 0.0, 'must be >= 0'),
            ('branch_spacing', self.branch_spacing >= 1, 'must be >= 1'),
            ('child_activity_factor', 0.0 < self.child_activity_factor <= 1.0,
             'must be in (0, 1]'),
            ('metabolite_threshold',
             self.metabolite_threshold is None or self.metabolite_threshold >= 0.0,
             'must be >= 0 or null'),
            ('w_attractant', self.w_attractant >= 0.0, 'must be >= 0'),
            ('w_repellent', self.w_repellent >= 0.0, 'must be >= 0'),
        ]
        for name, ok, message in checks:
            if not ok:
                raise SemanticViolation(message, f'engine.{name}')

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EngineParams':
        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in dataclass_fields(self)}


class Tag(IntEnum):
    EMPTY = 0
    FRONT = 1
    OCCUPIED = 2
    TUBE = 3
    ABANDONED = 4


@dataclass
class OccupancyState:
    """
    Per-cell tags plus the wavefront bookkeeping: the tick a claimed cell was
    reached (arrival) and the index of the wave origin it inherited (anchor).
    """
    tag: np.ndarray
    owner: np.ndarray
    edge: np.ndarray
    collision: np.ndarray
    arrival: np.ndarray
    anchor: np.ndarray

    @classmethod
    def empty(cls, shape: Tuple[int, int]) -> 'OccupancyState':
        return cls(tag=np.zeros(shape, dtype=np.int8),
                   owner=np.full(shape, -1, dtype=np.int32),
                   edge=np.full(shape, -1, dtype=np.int32),
                   collision=np.zeros(shape, dtype=bool),
                   arrival=np.full(shape, np.inf),
                   anchor=np.full(shape, -1, dtype=np.int32))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.tag.shape

    def tag_at(self, cell: Cell) -> Tag:
        return Tag(int(self.tag[cell[1], cell[0]]))

    def territory(self) -> np.ndarray:
        """Cells claimed by a wavefront (Front or Occupied)."""
        return (self.tag == Tag.FRONT) | (self.tag == Tag.OCCUPIED)

    def set_tube(self, cell: Cell, edge_id: int, owner: int) -> None:
        x, y = cell
        self.tag[y, x] = Tag.TUBE
        self.edge[y, x] = edge_id
        self.owner[y, x] = owner

    def copy(self) -> 'OccupancyState':
        return OccupancyState(self.tag.copy(), self.owner.copy(), self.edge.copy(),
                              self.collision.copy(), self.arrival.copy(), self.anchor.copy())


@dataclass
class ActiveZone:
    id: int
    owner: int
    position: Cell
    heading: int
    activity: float
    tail_node: int
    edge_id: int
    polyline: List[Cell]
    alive: bool = True
    fate: Optional[str] = None
    idle: bool = False
    since_branch: int = 0

    @property
    def steps_since_node(self) -> int:
        return len(self.polyline) - 1

    def kill(self, fate: str) -> None:
        self.alive = False
        self.activity = 0.0
        self.fate = fate


class NodeKind(str, Enum):
    INOCULATION = 'Inoculation'
    BRANCH = 'Branch'
    FOOD = 'Food'
    TIP = 'Tip'


SITE_KINDS = (NodeKind.INOCULATION, NodeKind.FOOD)


@dataclass
class Node:
    id: int
    position: Cell
    kind: NodeKind
    owner: int = -1


@dataclass
class Edge:
    id: int
    endpoints: Tuple[int, int]
    polyline: List[Cell]
    length: float
    abandoned: bool = False
    owner: int = -1
    visits: int = 1


@dataclass
class TubeGraph:
    cell_size: float = 1.0
    nodes: Dict[int, Node] = field(default_factory=dict)
    edges: Dict[int, Edge] = field(default_factory=dict)
    next_node_id: int = 0
    next_edge_id: int = 0
    by_position: Dict[Cell, int] = field(default_factory=dict)

    def add_node(self, position: Cell, kind: NodeKind, owner: int = -1) -> int:
        position = (int(position[0]), int(position[1]))
        if position in self.by_position:
            raise InvariantViolation(f'a node already stands on {position}')
        node_id = self.next_node_id
        self.next_node_id += 1
        self.nodes[node_id] = Node(node_id, position, kind, owner)
        self.by_position[position] = node_id
        return node_id

    def remove_node(self, node_id: int) -> None:
        node = self.nodes.pop(node_id)
        self.by_position.pop(node.position, None)

    def node_at(self, position: Cell) -> Optional[int]:
        return self.by_position.get(tuple(position))

    def copy(self) -> 'TubeGraph':
        return TubeGraph(
            cell_size=self.cell_size,
            nodes={i: Node(n.id, n.position, n.kind, n.owner) for i, n in self.nodes.items()},
            edges={i: Edge(e.id, e.endpoints, list(e.polyline), e.length, e.abandoned,
                           e.owner, e.visits) for i, e in self.edges.items()},
            next_node_id=self.next_node_id, next_edge_id=self.next_edge_id,
            by_position=dict(self.by_position))

    def reserve_edge_id(self) -> int:
        edge_id = self.next_edge_id
        self.next_edge_id += 1
        return edge_id

    def polyline_length(self, polyline: List[Cell]) -> float:
        return self.cell_size * sum(step_length(a, b) for a, b in zip(polyline, polyline[1:]))

    def add_edge(self, u: int, v: int, polyline: List[Cell], owner: int = -1,
                 edge_id: Optional[int] = None, abandoned: bool = False) -> int:
        """
        Adds an edge between existing nodes u and v along polyline.
        Raises:
            InvariantViolation: self-loop, unknown node, or a polyline that does not
                                join the two node positions through 8-neighbour steps.
        """
        if u == v:
            raise InvariantViolation(f'self-loop edge at node {u}')
        if u not in self.nodes or v not in self.nodes:
            raise InvariantViolation(f'edge references unknown node ({u}, {v})')
        if polyline[0] != self.nodes[u].position or polyline[-1] != self.nodes[v].position:
            raise InvariantViolation('polyline endpoints do not match node positions')
        length = self.polyline_length(polyline)
        if edge_id is None:
            edge_id = self.reserve_edge_id()
        elif edge_id in self.edges:
            raise InvariantViolation(f'edge id {edge_id} already used')
        self.edges[edge_id] = Edge(edge_id, (u, v), list(polyline), length, abandoned, owner)
        return edge_id

    def incident(self, node_id: int) -> List[Edge]:
        return [e for e in self.edges.values() if node_id in e.endpoints]

    def live_edges(self) -> List[Edge]:
        return [e for e in self.edges.values() if not e.abandoned]

    def degree(self, node_id: int, include_abandoned: bool = False) -> int:
        return sum(1 for e in self.incident(node_id) if include_abandoned or not e.abandoned)

    def total_length(self, include_abandoned: bool = False) -> float:
        return sum(e.length for e in self.edges.values() if include_abandoned or not e.abandoned)


@dataclass(frozen=True)
class TraceRecord:
    tick: int
    zones: int
    occupied: int
    colonized: int

    def to_dict(self) -> Dict[str, int]:
        return {'tick': self.tick, 'zones': self.zones, 'occupied': self.occupied,
                'colonized': self.colonized}


@dataclass(frozen=True)
class ChoiceObservation:
    """One zone step where both an AbandonedTube cell and a fresh cell were admissible."""
    tick: int
    zone: int
    chose_fresh: bool


@dataclass(frozen=True)
class WaveOrigin:
    """A point a wavefront radiates from, starting at a given tick."""
    owner: int
    cell: Cell
    start_tick: int


@dataclass
class PlasmodiumState:
    """
    Everything that evolves during a run.
    Attributes:
        occupancy (OccupancyState): Per-cell tags.
        zones (List[ActiveZone]): Every zone ever created, dead ones included.
        graph (TubeGraph): Closed tube edges; open edges live on the zones.
        seed (int): Key of the per-(tick, zone) random streams.
        sources (List[StimulusSource]): The run's own copies of the scene sources.
        organism (List[int]): Union-find parents over inoculation owners.
        colonized_by (Dict[int, Set[int]]): Source index -> owners that colonized it.
        food_nodes (Dict[int, int]): Source index -> node standing on it.
        wave_origins (List[WaveOrigin]): Where wavefronts radiate from.
        active_waves (Set[int]): Owners whose wavefront can still claim a cell.
        choices (List[ChoiceObservation]): Fresh-versus-abandoned decisions.
    """
    occupancy: OccupancyState
    zones: List[ActiveZone]
    graph: TubeGraph
    seed: int
    sources: List[Any] = field(default_factory=list)
    tick: int = 0
    spanning_complete: bool = False
    completed_at: Optional[int] = None
    incomplete: bool = False
    organism: List[int] = field(default_factory=list)
    colonized_by: Dict[int, Set[int]] = field(default_factory=dict)
    food_nodes: Dict[int, int] = field(default_factory=dict)
    abandoned_sources: Set[int] = field(default_factory=set)
    wave_origins: List[WaveOrigin] = field(default_factory=list)
    active_waves: Set[int] = field(default_factory=set)
    choices: List[ChoiceObservation] = field(default_factory=list)
    next_zone_id: int = 0

    def live_zones(self) -> List[ActiveZone]:
        return [z for z in self.zones if z.alive]

    def owners(self) -> List[int]:
        return list(range(len(self.organism)))

    def members(self, owner: int) -> List[int]:
        root = self.find(owner)
        return [o for o in self.owners() if self.find(o) == root]

    def find(self, owner: int) -> int:
        """Organism (fused-plasmodium) representative of an inoculation owner."""
        root = owner
        while self.organism[root] != root:
            root = self.organism[root]
        return root

    def fuse(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            self.organism[hi] = lo

    def colonized_by_organism(self, source_index: int, owner: int) -> bool:
        root = self.find(owner)
        return any(self.find(o) == root for o in self.colonized_by.get(source_index, ()))

    def new_zone_id(self) -> int:
        zone_id = self.next_zone_id
        self.next_zone_id += 1
        return zone_id
