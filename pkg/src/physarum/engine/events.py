"""_summary_
Publishes per-tick summaries of a run to any number of subscribers.

A subscriber (sink) is any callable taking one TraceRecord; the harness uses
one that appends newline-delimited JSON to trace.ndjson, tests use a list's
append. The recorder always keeps its own copy of the records.

Functions:
    summarize(state) -> TraceRecord
Classes:
    TraceRecorder
"""

import json
import logging
from typing import Callable, IO, Iterable, List, Optional

from physarum.engine.models import PlasmodiumState, Tag, TraceRecord

logger = logging.getLogger(__name__)

Sink = Callable[[TraceRecord], None]


def summarize(state: PlasmodiumState) -> TraceRecord:
    """Zone, occupied-cell and colonized-source counts of the current tick."""
    occ = state.occupancy
    occupied = int(((occ.tag != Tag.EMPTY)).sum())
    colonized = sum(1 for s in state.sources if s.colonized)
    return TraceRecord(tick=state.tick, zones=len(state.live_zones()), occupied=occupied,
                       colonized=colonized)


def ndjson_sink(handle: IO[str]) -> Sink:
    """Returns a sink writing one sorted-key JSON object per line to handle."""

    def write(record: TraceRecord) -> None:
        handle.write(json.dumps(record.to_dict(), sort_keys=True) + '\n')

    return write


class TraceRecorder:
    def __init__(self, sinks: Optional[Iterable[Sink]] = None):
        self.records: List[TraceRecord] = []
        self.sinks: List[Sink] = list(sinks or [])

    def subscribe(self, sink: Sink) -> None:
        self.sinks.append(sink)

    def publish(self, state: PlasmodiumState) -> TraceRecord:
        """
        Summarizes the state and hands the record to every sink.
        Args:
            state (PlasmodiumState): State after a completed tick.
        Returns:
            TraceRecord: The published record.
        """
        record = summarize(state)
        self.records.append(record)
        for sink in self.sinks:
            sink(record)
        logger.debug('tick %d: %d zones, %d occupied, %d colonized', record.tick, record.zones,
                     record.occupied, record.colonized)
        return record
