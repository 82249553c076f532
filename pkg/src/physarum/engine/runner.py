"""_summary_
Drives a scene tick by tick until a stop condition holds.

One tick runs, in this order: deposit and diffusion of every field,
step_wavefront, step_zones, branch_zones, update_dominance,
abandon_and_relocate and continuation_step.

Functions:
    tick(state, scene, fields) -> PlasmodiumState
    stop_reached(state, stop) -> bool
    run_until(state, scene, stop, max_ticks, fields=None, sinks=None) -> Tuple[PlasmodiumState, RunTrace]
    simulate(scene, stop, max_ticks, sinks=None) -> Tuple[PlasmodiumState, RunTrace, SimulationFields]
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from physarum.engine.events import Sink, TraceRecorder
from physarum.engine.models import ChoiceObservation, PlasmodiumState, TraceRecord
from physarum.engine.wavefront import step_wavefront
from physarum.engine.zones import (abandon_and_relocate, branch_zones, continuation_step,
                                   init_plasmodium, is_dormant, remaining_targets,
                                   step_zones, update_dominance)
from physarum.environment.fields import SimulationFields
from physarum.environment.models import Scene

logger = logging.getLogger(__name__)


class StopCondition(str, Enum):
    MAX_TICKS = 'max_ticks'
    ALL_SOURCES_COLONIZED = 'all_sources_colonized'
    SINGLE_ZONE_REMAINING = 'single_zone_remaining'
    FRONTS_EXHAUSTED = 'fronts_exhausted'
    GROWTH_SETTLED = 'growth_settled'


@dataclass
class RunTrace:
    records: List[TraceRecord] = field(default_factory=list)
    choices: List[ChoiceObservation] = field(default_factory=list)
    stop: StopCondition = StopCondition.MAX_TICKS
    complete: bool = False


def tick(state: PlasmodiumState, scene: Scene, fields: SimulationFields) -> PlasmodiumState:
    fields.advance()
    step_wavefront(state, scene, fields)
    step_zones(state, scene, fields)
    branch_zones(state, scene, fields)
    update_dominance(state, scene, fields)
    abandon_and_relocate(state, scene, fields)
    continuation_step(state, scene, fields)
    state.tick += 1
    return state


def _settled(state: PlasmodiumState, scene: Scene) -> bool:
    if state.active_waves:
        return False
    for zone in state.live_zones():
        if zone.idle:
            continue
        if is_dormant(state, scene, zone) and not remaining_targets(state, zone.owner):
            continue
        return False
    return True


def stop_reached(state: PlasmodiumState, scene: Scene, stop: StopCondition) -> bool:
    if stop == StopCondition.MAX_TICKS:
        return False
    if stop == StopCondition.ALL_SOURCES_COLONIZED:
        return state.spanning_complete
    if stop == StopCondition.SINGLE_ZONE_REMAINING:
        return len(state.live_zones()) == 1 and len(state.zones) > 1
    if stop == StopCondition.FRONTS_EXHAUSTED:
        return not state.active_waves
    return _settled(state, scene)


def run_until(state: PlasmodiumState, scene: Scene, stop: StopCondition, max_ticks: int,
              fields: Optional[SimulationFields] = None,
              sinks: Optional[Iterable[Sink]] = None) -> Tuple[PlasmodiumState, RunTrace]:
    """
    Runs ticks until the stop condition holds or max_ticks ticks have run.
    Args:
        state (PlasmodiumState): Initial state, advanced in place.
        scene (Scene): The scene the state was initialized from.
        stop (StopCondition): When to stop early.
        max_ticks (int): Upper bound on executed ticks, >= 1.
        fields (Optional[SimulationFields]): Fields sharing state.sources; primed
            fields are built if omitted.
        sinks (Optional[Iterable[Sink]]): Subscribers for the per-tick records.
    Returns:
        Tuple[PlasmodiumState, RunTrace]: The final state and the run trace. A
        stop condition other than max_ticks that is not reached leaves
        state.incomplete set.
    Raises:
        ValueError: max_ticks < 1.
    """
    if max_ticks < 1:
        raise ValueError(f'max_ticks must be >= 1, got {max_ticks}')
    stop = StopCondition(stop)
    if fields is None:
        fields = SimulationFields.prepared(scene, state.sources)
    recorder = TraceRecorder(sinks)
    reached = False
    for _ in range(max_ticks):
        tick(state, scene, fields)
        recorder.publish(state)
        if stop_reached(state, scene, stop):
            reached = True
            break
    complete = reached or stop == StopCondition.MAX_TICKS
    state.incomplete = not complete
    if complete:
        logger.info('run stopped at tick %d (%s)', state.tick, stop.value)
    else:
        logger.warning('run incomplete: %s not reached within %d ticks', stop.value, max_ticks)
    trace = RunTrace(records=recorder.records, choices=list(state.choices), stop=stop,
                     complete=complete)
    return state, trace


def simulate(scene: Scene, stop: StopCondition, max_ticks: int,
             sinks: Optional[Iterable[Sink]] = None
             ) -> Tuple[PlasmodiumState, RunTrace, SimulationFields]:
    """Primes the fields, inoculates the dish and runs it."""
    fields = SimulationFields.prepared(scene)
    state = init_plasmodium(scene, fields)
    state, trace = run_until(state, scene, stop, max_ticks, fields=fields, sinks=sinks)
    return state, trace, fields
