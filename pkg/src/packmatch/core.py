"""Result and instrumentation types shared by every engine."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple


class Occurrence(NamedTuple):
    pattern_id: int
    start: int
    end: int  # inclusive


def occurrence_order(o: Occurrence) -> tuple[int, int, int]:
    return (o.end, o.start, o.pattern_id)


def sort_occurrences(occs) -> list[Occurrence]:
    return sorted(occs, key=occurrence_order)


@dataclass
class Stats:
    """Operation counters filled in by the matchers' query loops."""

    report_steps: int = 0
    transitions: int = 0
    stab1_queries: int = 0
    stab2_queries: int = 0
    suffix_index_queries: int = 0
    prefix_index_queries: int = 0
    mph_lookups: int = 0
    table_lookups: int = 0
    windows: int = 0

    @property
    def stab_queries(self) -> int:
        return self.stab1_queries + self.stab2_queries

    def as_dict(self) -> dict:
        d = asdict(self)
        d["stab_queries"] = self.stab_queries
        return d
