"""_summary_
Incremental maintenance of the tube graph and its extraction.

Closed edges live in PlasmodiumState.graph; every live zone additionally carries
an open polyline under a reserved edge id. The helpers here close, split and
abandon edges while keeping the occupancy tags in step with the graph.

Functions:
    close_open_edge(state, zone, node_id, abandoned) -> Optional[int]
    retire_open_edge(state, zone) -> None
    split_closed_edge(state, edge_id, cell) -> int
    split_open_edge(state, zone, cell) -> int
    abandon_edge(state, edge) -> None
    extract_graph(state) -> TubeGraph
    canonicalize(graph) -> TubeGraph
    check_graph(graph) -> None
"""

import logging
import math
from typing import Dict, List, Optional

from physarum.engine.models import (ActiveZone, Edge, NodeKind, PlasmodiumState, Tag,
                                    TubeGraph, direction_index)
from physarum.errors import InvariantViolation

logger = logging.getLogger(__name__)

LENGTH_TOLERANCE = 1e-9


def _retag(state: PlasmodiumState, cells, old_edge: int, new_edge: int) -> None:
    occ = state.occupancy
    for x, y in cells:
        if occ.edge[y, x] == old_edge and occ.tag[y, x] in (Tag.TUBE, Tag.ABANDONED):
            occ.edge[y, x] = new_edge


def close_open_edge(state: PlasmodiumState, zone: ActiveZone, node_id: int,
                    abandoned: bool = False) -> Optional[int]:
    """
    Turns the zone's open polyline (which must end on node_id's cell) into a
    closed edge from its tail node to node_id. The zone then restarts from that
    node under a fresh reserved edge id.
    Returns:
        Optional[int]: The closed edge id, or None if the polyline had no step.
    """
    graph = state.graph
    position = graph.nodes[node_id].position
    if zone.polyline[-1] != position:
        raise InvariantViolation(f'zone {zone.id} is not on node {node_id}')
    closed = None
    if len(zone.polyline) > 1 and zone.tail_node != node_id:
        closed = graph.add_edge(zone.tail_node, node_id, zone.polyline, owner=zone.owner,
                                edge_id=zone.edge_id, abandoned=abandoned)
        if abandoned:
            abandon_edge(state, graph.edges[closed])
        zone.edge_id = graph.reserve_edge_id()
    zone.tail_node = node_id
    zone.polyline = [position]
    return closed


def retire_open_edge(state: PlasmodiumState, zone: ActiveZone) -> None:
    """
    Closes the zone's open polyline with a Tip node and abandons it (the tube
    collapses as its protoplasm is pumped back). The zone is put back on its
    tail node. A zone that has not left its tail node is left unchanged.
    """
    if len(zone.polyline) <= 1:
        return
    tail = zone.tail_node
    tip = state.graph.add_node(zone.position, NodeKind.TIP, zone.owner)
    close_open_edge(state, zone, tip, abandoned=True)
    zone.tail_node = tail
    zone.position = state.graph.nodes[tail].position
    zone.polyline = [zone.position]


def abandon_edge(state: PlasmodiumState, edge: Edge) -> None:
    """Marks an edge abandoned and retags its tube cells AbandonedTube."""
    edge.abandoned = True
    occ = state.occupancy
    for x, y in edge.polyline:
        if occ.edge[y, x] == edge.id and occ.tag[y, x] == Tag.TUBE:
            occ.tag[y, x] = Tag.ABANDONED


def split_closed_edge(state: PlasmodiumState, edge_id: int, cell) -> int:
    """
    Inserts a Branch node on an interior cell of a closed edge. The edge keeps
    its id for the part before the cell; the rest becomes a new edge.
    Returns:
        int: The new Branch node id.
    """
    graph = state.graph
    edge = graph.edges[edge_id]
    try:
        i = edge.polyline.index(tuple(cell))
    except ValueError as exc:
        raise InvariantViolation(f'cell {cell} is not on edge {edge_id}') from exc
    if i == 0 or i == len(edge.polyline) - 1:
        return edge.endpoints[0] if i == 0 else edge.endpoints[1]
    u, v = edge.endpoints
    branch = graph.add_node(cell, NodeKind.BRANCH, edge.owner)
    head, rest = edge.polyline[:i + 1], edge.polyline[i:]
    edge.endpoints = (u, branch)
    edge.polyline = head
    edge.length = graph.polyline_length(head)
    second = graph.add_edge(branch, v, rest, owner=edge.owner, abandoned=edge.abandoned)
    graph.edges[second].visits = edge.visits
    _retag(state, rest[1:], edge_id, second)
    return branch


def split_open_edge(state: PlasmodiumState, zone: ActiveZone, cell) -> int:
    """
    Inserts a Branch node on the open polyline of another live zone: the part
    behind the cell is closed as an edge, and that zone continues from the new
    node with the remainder as its open polyline.
    Returns:
        int: The Branch node id (or the zone's tail node if the cell is its tail).
    """
    graph = state.graph
    cell = tuple(cell)
    i = zone.polyline.index(cell)
    if i == 0:
        return zone.tail_node
    branch = graph.add_node(cell, NodeKind.BRANCH, zone.owner)
    graph.add_edge(zone.tail_node, branch, zone.polyline[:i + 1], owner=zone.owner,
                   edge_id=zone.edge_id)
    old_id = zone.edge_id
    zone.edge_id = graph.reserve_edge_id()
    zone.tail_node = branch
    zone.polyline = zone.polyline[i:]
    _retag(state, zone.polyline[1:], old_id, zone.edge_id)
    return branch


def check_graph(graph: TubeGraph) -> None:
    """
    Verifies the tube-graph invariants.
    Raises:
        InvariantViolation: dangling endpoint, self-loop, polyline not joining its
                            endpoints by 8-neighbour steps, or a wrong length.
    """
    for edge in graph.edges.values():
        u, v = edge.endpoints
        if u == v:
            raise InvariantViolation(f'edge {edge.id} is a self-loop')
        if u not in graph.nodes or v not in graph.nodes:
            raise InvariantViolation(f'edge {edge.id} references a missing node')
        if (edge.polyline[0] != graph.nodes[u].position
                or edge.polyline[-1] != graph.nodes[v].position):
            raise InvariantViolation(f'edge {edge.id} polyline does not meet its endpoints')
        expected = graph.polyline_length(edge.polyline)
        if not math.isclose(expected, edge.length, rel_tol=LENGTH_TOLERANCE,
                            abs_tol=LENGTH_TOLERANCE):
            raise InvariantViolation(f'edge {edge.id} length {edge.length} != {expected}')


def _collinear_through(node_id: int, first: Edge, second: Edge) -> bool:
    """True if walking first into node_id and then out along second keeps direction."""
    a = first.polyline if first.endpoints[1] == node_id else first.polyline[::-1]
    b = second.polyline if second.endpoints[0] == node_id else second.polyline[::-1]
    return direction_index(a[-2], a[-1]) == direction_index(b[0], b[1])


def canonicalize(graph: TubeGraph) -> TubeGraph:
    """
    Fuses every degree-2 Branch node whose two incident polylines continue in a
    straight line into a single edge (lower id kept). Works on a copy.
    """
    result = graph.copy()
    changed = True
    while changed:
        changed = False
        for node_id in sorted(result.nodes):
            node = result.nodes[node_id]
            if node.kind != NodeKind.BRANCH:
                continue
            incident = sorted(result.incident(node_id), key=lambda e: e.id)
            if len(incident) != 2:
                continue
            first, second = incident
            if first.abandoned != second.abandoned:
                continue
            far_a = first.endpoints[0] if first.endpoints[1] == node_id else first.endpoints[1]
            far_b = second.endpoints[1] if second.endpoints[0] == node_id else second.endpoints[0]
            if far_a == far_b or not _collinear_through(node_id, first, second):
                continue
            a = first.polyline if first.endpoints[1] == node_id else first.polyline[::-1]
            b = second.polyline if second.endpoints[0] == node_id else second.polyline[::-1]
            first.endpoints = (far_a, far_b)
            first.polyline = a + b[1:]
            first.length = first.length + second.length
            first.visits = max(first.visits, second.visits)
            del result.edges[second.id]
            result.remove_node(node_id)
            changed = True
            break
    return result


def extract_graph(state: PlasmodiumState) -> TubeGraph:
    """
    Returns a consistency-checked canonical copy of the tube graph. Open
    polylines of live zones are included as edges ending at Tip nodes.
    Raises:
        InvariantViolation: the maintained graph is inconsistent (an engine bug).
    """
    graph = state.graph.copy()
    for zone in state.zones:
        if not zone.alive or len(zone.polyline) <= 1:
            continue
        if zone.tail_node not in graph.nodes:
            raise InvariantViolation(f'zone {zone.id} tail node {zone.tail_node} is missing')
        tip = graph.add_node(zone.position, NodeKind.TIP, zone.owner)
        graph.add_edge(zone.tail_node, tip, zone.polyline, owner=zone.owner,
                       edge_id=zone.edge_id)
    check_graph(graph)
    occ = state.occupancy
    for y, x in zip(*((occ.tag == Tag.TUBE) | (occ.tag == Tag.ABANDONED)).nonzero()):
        if int(occ.edge[y, x]) not in graph.edges:
            raise InvariantViolation(f'cell ({x}, {y}) references missing edge {occ.edge[y, x]}')
    return canonicalize(graph)


def edge_index(graph: TubeGraph) -> Dict[int, List[int]]:
    """Node id -> ids of incident edges."""
    index: Dict[int, List[int]] = {n: [] for n in graph.nodes}
    for edge in graph.edges.values():
        for n in edge.endpoints:
            index[n].append(edge.id)
    return index
