"""Partition, work counter and result entities."""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from branchmin.entities.lts import REMOVED, Lts, StateMap


class Partition(BaseModel):
    """
    A partition of states into dense block ids.

    Entries equal to REMOVED mark states that are not covered (for instance
    unreachable states of the original LTS).
    """

    block_of: tuple[int, ...]
    block_count: int = Field(ge=0)
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_dense(self) -> "Partition":
        used = {b for b in self.block_of if b != REMOVED}
        if used != set(range(self.block_count)):
            raise ValueError("block ids must be dense and every block nonempty")
        return self

    @classmethod
    def from_labels(cls, labels: list[int]) -> "Partition":
        """Renumbers arbitrary block labels by smallest member state."""
        dense: dict[int, int] = {}
        block_of = []
        for label in labels:
            if label == REMOVED:
                block_of.append(REMOVED)
                continue
            if label not in dense:
                dense[label] = len(dense)
            block_of.append(dense[label])
        return cls(block_of=tuple(block_of), block_count=len(dense))

    def blocks(self) -> list[list[int]]:
        """The blocks as sorted state lists, ordered by smallest member."""
        members: list[list[int]] = [[] for _ in range(self.block_count)]
        for state, block in enumerate(self.block_of):
            if block != REMOVED:
                members[block].append(state)
        return sorted(members)

    def same_relation(self, other: "Partition") -> bool:
        """True iff both partitions induce the same equivalence relation."""
        if len(self.block_of) != len(other.block_of):
            return False
        return Partition.from_labels(
            list(self.block_of)
        ) == Partition.from_labels(list(other.block_of))

    def is_discrete(self) -> bool:
        covered = sum(1 for b in self.block_of if b != REMOVED)
        return covered == self.block_count


class WorkCounters(BaseModel):
    """
    Abstract work units charged by the refinement loop.

    bunch_units is charged to transitions that enter a small bunch,
    smaller_block_units to the states and transitions of the smaller side
    of every block split, and new_bottom_units to states that become bottom
    together with their outgoing transitions.
    """

    bunch_units: int = 0
    smaller_block_units: int = 0
    new_bottom_units: int = 0

    @property
    def total(self) -> int:
        return (
            self.bunch_units
            + self.smaller_block_units
            + self.new_bottom_units
        )


class PreprocessReport(BaseModel):
    """What pruning and tau-SCC contraction did to the input."""

    removed_unreachable: int = 0
    scc_count_contracted: int = 0
    tau_self_loops_dropped: int = 0
    preprocessed_n: int = 0
    preprocessed_m: int = 0
    map: StateMap


class SplitOutcome(BaseModel):
    """
    The result of splitting a block under a splitter slice.

    After the split, the block's slice of the state order holds four zones:
    U-bottom [begin, u_bottom_end), R-bottom [u_bottom_end, bottom_end),
    U-non-bottom [bottom_end, u_nonbottom_end) and R-non-bottom
    [u_nonbottom_end, end).
    """

    block: int
    u_bottom_end: int
    u_nonbottom_end: int
    r_size: int
    u_size: int
    smaller_side: Literal["R", "U"]
    new_bottom_candidates: list[int] = Field(default_factory=list)
    u_steps: int = 0
    r_steps: int = 0

    @property
    def u_empty(self) -> bool:
        return self.u_size == 0

    @property
    def steps(self) -> int:
        return self.u_steps + self.r_steps


class MinimizationResult(BaseModel):
    """Everything a minimisation run produces."""

    partition: Partition
    quotient: Lts
    state_map: StateMap
    counters: WorkCounters
    preprocess: PreprocessReport
