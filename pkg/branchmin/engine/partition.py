"""Refinable partition of states."""


class StatePartition:
    """
    States grouped per block in one permutation array.

    Every block is a contiguous slice [begin, end) of `order`. Its bottom
    states come first, up to `bottom_end`; the remaining states have at
    least one inert outgoing transition. Each block also knows the ids of
    its block-bunch-slices.
    """

    def __init__(self, n: int):
        self.order: list[int] = list(range(n))
        self.pos: list[int] = list(range(n))
        self.block_of: list[int] = [0] * n
        self.blk_begin: list[int] = []
        self.blk_bottom_end: list[int] = []
        self.blk_end: list[int] = []
        self.blk_slices: list[set[int]] = []

    @classmethod
    def from_blocks(
        cls, n: int, groups: list[tuple[list[int], list[int]]]
    ) -> "StatePartition":
        """Builds a partition from (bottom states, non-bottom states) pairs."""
        partition = cls(n)
        i = 0
        for bottom, nonbottom in groups:
            block = partition.add_block(i, i + len(bottom), 0)
            for state in bottom + nonbottom:
                partition.order[i] = state
                partition.pos[state] = i
                partition.block_of[state] = block
                i += 1
            partition.blk_end[block] = i
        assert i == n, "groups must cover every state"
        return partition

    @property
    def block_count(self) -> int:
        return len(self.blk_begin)

    def add_block(self, begin: int, bottom_end: int, end: int) -> int:
        self.blk_begin.append(begin)
        self.blk_bottom_end.append(bottom_end)
        self.blk_end.append(end)
        self.blk_slices.append(set())
        return len(self.blk_begin) - 1

    def size(self, block: int) -> int:
        return self.blk_end[block] - self.blk_begin[block]

    def states(self, block: int) -> list[int]:
        return self.order[self.blk_begin[block] : self.blk_end[block]]

    def bottom_states(self, block: int) -> list[int]:
        return self.order[self.blk_begin[block] : self.blk_bottom_end[block]]

    def is_bottom(self, state: int) -> bool:
        return self.pos[state] < self.blk_bottom_end[self.block_of[state]]

    def swap(self, i: int, j: int) -> None:
        order, pos = self.order, self.pos
        a, b = order[i], order[j]
        order[i], order[j] = b, a
        pos[a], pos[b] = j, i

    def exchange(self, left: int, middle: int, right: int) -> None:
        """
        Reorders [left, right) so that the states of [middle, right) come
        before those of [left, middle), in time proportional to the shorter
        range. Order inside each range is not kept.
        """
        first, second = middle - left, right - middle
        if first <= second:
            for k in range(first):
                self.swap(left + k, right - first + k)
        else:
            for k in range(second):
                self.swap(left + k, middle + k)

    def make_bottom(self, state: int) -> None:
        """Moves a non-bottom state into the bottom zone of its block."""
        block = self.block_of[state]
        boundary = self.blk_bottom_end[block]
        assert self.pos[state] >= boundary, "state is already bottom"
        self.swap(self.pos[state], boundary)
        self.blk_bottom_end[block] = boundary + 1
