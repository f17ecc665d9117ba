"""Mutable data structures and operations of the partition refinement."""
from .bunches import BlockBunchSliceTable, BunchTable, SplitterList
from .partition import StatePartition
from .refinement import RefinementEngine
from .splitter import split
from .transitions import TransitionIndex


__all__ = [
    "BlockBunchSliceTable",
    "BunchTable",
    "SplitterList",
    "StatePartition",
    "RefinementEngine",
    "split",
    "TransitionIndex",
]
