"""Data models shared by the tools, the engine and the command line."""

from .lts import REMOVED, ActionTable, Lts, StateMap
from .partition import (
    MinimizationResult,
    Partition,
    PreprocessReport,
    SplitOutcome,
    WorkCounters,
)
from .report import REPORT_SCHEMA, GenConfig, LtsStatistics, RunReport

__all__ = [
    "REMOVED",
    "ActionTable",
    "Lts",
    "StateMap",
    "MinimizationResult",
    "Partition",
    "PreprocessReport",
    "SplitOutcome",
    "WorkCounters",
    "REPORT_SCHEMA",
    "GenConfig",
    "LtsStatistics",
    "RunReport",
]
