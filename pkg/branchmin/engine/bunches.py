"""
Bunches, action-block-slices, block-bunch-slices and the splitter list.

Each of the first two orderings of the transitions is one permutation
array in which the non-inert transitions come first and the inert ones
form a tail starting at the `*_inert_begin` boundary. A bunch is a slice
of the bunch-ordered array; its action-block-slices are consecutive
sub-slices. A block-bunch-slice is a slice of the second array whose
marked transitions form a prefix.
"""

from typing import Iterator, Optional


def _swap(arr: list[int], pos: list[int], i: int, j: int) -> None:
    a, b = arr[i], arr[j]
    arr[i], arr[j] = b, a
    pos[a], pos[b] = j, i


class BunchTable:
    """The transition partition into bunches and action-block-slices."""

    def __init__(self, m: int):
        self.a_arr: list[int] = list(range(m))
        self.a_pos: list[int] = list(range(m))
        self.a_inert_begin = 0
        self.bunch_begin: list[int] = []
        self.bunch_end: list[int] = []
        self.in_stack: list[bool] = []
        self.stack: list[int] = []
        self.abs_begin: list[int] = []
        self.abs_end: list[int] = []
        self.abs_bunch: list[int] = []
        self.abs_of: list[int] = [-1] * m

    @classmethod
    def initial(
        cls,
        src: list[int],
        key: list[int],
        tgt: list[int],
        block_of: list[int],
        tau: int,
    ) -> "BunchTable":
        """
        One bunch with every non-inert transition, grouped into
        action-block-slices by (action, target block).
        """
        table = cls(len(src))
        slices: dict[tuple[int, int], list[int]] = {}
        inert = []
        for t in range(len(src)):
            if key[t] == tau and block_of[src[t]] == block_of[tgt[t]]:
                inert.append(t)
            else:
                slices.setdefault((key[t], block_of[tgt[t]]), []).append(t)
        i = 0
        if slices:
            bunch = table.new_bunch(0)
            for members in slices.values():
                action_slice = table.new_action_slice(i, bunch)
                for t in members:
                    table.a_arr[i] = t
                    table.a_pos[t] = i
                    table.abs_of[t] = action_slice
                    i += 1
                table.abs_end[action_slice] = i
            table.bunch_end[bunch] = i
            table.push(bunch)
        table.a_inert_begin = i
        for t in inert:
            table.a_arr[i] = t
            table.a_pos[t] = i
            i += 1
        return table

    @property
    def bunch_count(self) -> int:
        return len(self.bunch_begin)

    def new_bunch(self, at: int) -> int:
        self.bunch_begin.append(at)
        self.bunch_end.append(at)
        self.in_stack.append(False)
        return len(self.bunch_begin) - 1

    def new_action_slice(self, at: int, bunch: int) -> int:
        self.abs_begin.append(at)
        self.abs_end.append(at)
        self.abs_bunch.append(bunch)
        return len(self.abs_begin) - 1

    def size(self, bunch: int) -> int:
        return self.bunch_end[bunch] - self.bunch_begin[bunch]

    def abs_size(self, action_slice: int) -> int:
        return self.abs_end[action_slice] - self.abs_begin[action_slice]

    def first_abs(self, bunch: int) -> int:
        return self.abs_of[self.a_arr[self.bunch_begin[bunch]]]

    def last_abs(self, bunch: int) -> int:
        return self.abs_of[self.a_arr[self.bunch_end[bunch] - 1]]

    def is_trivial(self, bunch: int) -> bool:
        return self.first_abs(bunch) == self.last_abs(bunch)

    def transitions(self, bunch: int) -> list[int]:
        return self.a_arr[self.bunch_begin[bunch] : self.bunch_end[bunch]]

    def abs_transitions(self, action_slice: int) -> list[int]:
        return self.a_arr[
            self.abs_begin[action_slice] : self.abs_end[action_slice]
        ]

    def push(self, bunch: int) -> None:
        """Puts a nontrivial bunch on the work stack (once)."""
        if not self.in_stack[bunch] and not self.is_trivial(bunch):
            self.in_stack[bunch] = True
            self.stack.append(bunch)

    def pop(self) -> Optional[int]:
        while self.stack:
            bunch = self.stack.pop()
            self.in_stack[bunch] = False
            if not self.is_trivial(bunch):
                return bunch
        return None

    def split_off_small_abs(self, bunch: int) -> tuple[int, int]:
        """
        Moves the first action-block-slice of `bunch` to a bunch of its own
        if it holds at most half the transitions, else the last one.

        Returns:
            (moved action-block-slice, new bunch id)
        """
        first = self.first_abs(bunch)
        if 2 * self.abs_size(first) <= self.size(bunch):
            chosen = first
            self.bunch_begin[bunch] = self.abs_end[first]
        else:
            chosen = self.last_abs(bunch)
            self.bunch_end[bunch] = self.abs_begin[chosen]
        new = self.new_bunch(self.abs_begin[chosen])
        self.bunch_end[new] = self.abs_end[chosen]
        self.abs_bunch[chosen] = new
        return chosen, new

    def carve_abs(self, t: int, carved: dict[int, int]) -> None:
        """
        Moves `t` out of its action-block-slice into the slice `carved`
        assigns to it, created directly behind the old one.
        """
        old = self.abs_of[t]
        new = carved.get(old)
        if new is None:
            end = self.abs_end[old]
            new = carved[old] = self.new_action_slice(end, self.abs_bunch[old])
            self.abs_end[new] = end
        j = self.abs_end[old] - 1
        _swap(self.a_arr, self.a_pos, self.a_pos[t], j)
        self.abs_end[old] = j
        self.abs_begin[new] = j
        self.abs_of[t] = new

    def append_noninert(self, t: int, bunch: int, action_slice: int) -> None:
        """Moves an inert transition to the end of a bunch at the boundary."""
        i = self.a_inert_begin
        assert self.bunch_end[bunch] == i, "bunch is not at the inert boundary"
        _swap(self.a_arr, self.a_pos, self.a_pos[t], i)
        self.a_inert_begin = i + 1
        self.bunch_end[bunch] = i + 1
        self.abs_end[action_slice] = i + 1
        self.abs_of[t] = action_slice


class BlockBunchSliceTable:
    """
    Block-bunch-slices with a marked prefix, a stability flag and a
    primary/secondary tag used while they are splitters.
    """

    def __init__(self, m: int):
        self.b_arr: list[int] = list(range(m))
        self.b_pos: list[int] = list(range(m))
        self.b_inert_begin = 0
        self.bbs_begin: list[int] = []
        self.bbs_marked_end: list[int] = []
        self.bbs_end: list[int] = []
        self.bbs_bunch: list[int] = []
        self.bbs_block: list[int] = []
        self.bbs_stable: list[bool] = []
        self.bbs_primary: list[bool] = []
        self.bbs_of: list[int] = [-1] * m

    @classmethod
    def initial(
        cls, src: list[int], block_of: list[int], bunches: BunchTable
    ) -> "BlockBunchSliceTable":
        """One stable slice per block with transitions in the initial bunch."""
        table = cls(len(src))
        per_block: dict[int, list[int]] = {}
        for t in bunches.a_arr[: bunches.a_inert_begin]:
            per_block.setdefault(block_of[src[t]], []).append(t)
        i = 0
        for block, members in per_block.items():
            slice_id = table.new_slice(i, 0, block, stable=True)
            for t in members:
                table.b_arr[i] = t
                table.b_pos[t] = i
                table.bbs_of[t] = slice_id
                i += 1
            table.bbs_end[slice_id] = i
        table.b_inert_begin = i
        for t in bunches.a_arr[bunches.a_inert_begin :]:
            table.b_arr[i] = t
            table.b_pos[t] = i
            i += 1
        return table

    def new_slice(self, at: int, bunch: int, block: int, stable: bool) -> int:
        self.bbs_begin.append(at)
        self.bbs_marked_end.append(at)
        self.bbs_end.append(at)
        self.bbs_bunch.append(bunch)
        self.bbs_block.append(block)
        self.bbs_stable.append(stable)
        self.bbs_primary.append(False)
        return len(self.bbs_begin) - 1

    def size(self, slice_id: int) -> int:
        return self.bbs_end[slice_id] - self.bbs_begin[slice_id]

    def transitions(self, slice_id: int) -> list[int]:
        return self.b_arr[self.bbs_begin[slice_id] : self.bbs_end[slice_id]]

    def marked(self, slice_id: int) -> list[int]:
        return self.b_arr[
            self.bbs_begin[slice_id] : self.bbs_marked_end[slice_id]
        ]

    def is_marked(self, t: int) -> bool:
        return self.b_pos[t] < self.bbs_marked_end[self.bbs_of[t]]

    def mark(self, t: int) -> None:
        """Swaps `t` into the marked prefix of its (unstable) slice."""
        slice_id = self.bbs_of[t]
        assert not self.bbs_stable[slice_id], "marking in a stable slice"
        boundary = self.bbs_marked_end[slice_id]
        p = self.b_pos[t]
        if p < boundary:
            return
        _swap(self.b_arr, self.b_pos, p, boundary)
        self.bbs_marked_end[slice_id] = boundary + 1

    def mark_all(self, slice_id: int) -> None:
        self.bbs_marked_end[slice_id] = self.bbs_end[slice_id]

    def make_stable(self, slice_id: int) -> None:
        self.bbs_stable[slice_id] = True
        self.bbs_primary[slice_id] = False
        self.bbs_marked_end[slice_id] = self.bbs_begin[slice_id]

    def move_to_tail(self, t: int, carved: dict[int, int], bunch: int) -> int:
        """
        Moves `t` from an unmarked slice into the slice `carved` assigns to
        it, created directly behind the old one for `bunch`. Returns the
        new slice id.
        """
        old = self.bbs_of[t]
        new = carved.get(old)
        if new is None:
            end = self.bbs_end[old]
            new = carved[old] = self.new_slice(
                end, bunch, self.bbs_block[old], stable=True
            )
            self.bbs_marked_end[new] = self.bbs_end[new] = end
        j = self.bbs_end[old] - 1
        _swap(self.b_arr, self.b_pos, self.b_pos[t], j)
        self.bbs_end[old] = j
        self.bbs_marked_end[old] = min(self.bbs_marked_end[old], j)
        self.bbs_begin[new] = self.bbs_marked_end[new] = j
        self.bbs_of[t] = new
        return new

    def carve(
        self, old: int, marked: list[int], unmarked: list[int], block: int
    ) -> int:
        """
        Moves the given transitions of slice `old` into a new slice for
        `block` at the tail of `old`'s range, keeping their marks. The new
        slice inherits the stability flag and the primary tag.
        """
        arr, pos = self.b_arr, self.b_pos
        end = self.bbs_end[old]
        for t in unmarked:
            end -= 1
            _swap(arr, pos, pos[t], end)
        marked_end = self.bbs_marked_end[old]
        for t in marked:
            marked_end -= 1
            _swap(arr, pos, pos[t], marked_end)
        # [kept marked | moved marked | kept unmarked | moved unmarked]
        left, middle = marked_end, self.bbs_marked_end[old]
        right = end
        first, second = middle - left, right - middle
        if first <= second:
            for k in range(first):
                _swap(arr, pos, left + k, right - first + k)
        else:
            for k in range(second):
                _swap(arr, pos, left + k, middle + k)

        moved = len(marked) + len(unmarked)
        new_begin = self.bbs_end[old] - moved
        new = self.new_slice(
            new_begin, self.bbs_bunch[old], block, self.bbs_stable[old]
        )
        self.bbs_primary[new] = self.bbs_primary[old]
        self.bbs_marked_end[new] = new_begin + len(marked)
        self.bbs_end[new] = self.bbs_end[old]
        self.bbs_end[old] = new_begin
        self.bbs_marked_end[old] -= len(marked)
        for t in arr[new_begin : self.bbs_end[new]]:
            self.bbs_of[t] = new
        return new

    def append_noninert(self, t: int, slice_id: int) -> None:
        """Moves an inert transition to the end of a slice at the boundary."""
        i = self.b_inert_begin
        assert self.bbs_end[slice_id] == i, "slice is not at the inert boundary"
        _swap(self.b_arr, self.b_pos, self.b_pos[t], i)
        self.b_inert_begin = i + 1
        self.bbs_end[slice_id] = i + 1
        self.bbs_of[t] = slice_id


class SplitterList:
    """Doubly linked, ordered list of unstable block-bunch-slices."""

    def __init__(self):
        self._next: dict[int, Optional[int]] = {}
        self._prev: dict[int, Optional[int]] = {}
        self.head: Optional[int] = None
        self.tail: Optional[int] = None

    def __len__(self) -> int:
        return len(self._next)

    def __bool__(self) -> bool:
        return self.head is not None

    def __contains__(self, slice_id: int) -> bool:
        return slice_id in self._next

    def __iter__(self) -> Iterator[int]:
        node = self.head
        while node is not None:
            yield node
            node = self._next[node]

    def append(self, slice_id: int) -> None:
        assert slice_id not in self._next
        self._next[slice_id] = None
        self._prev[slice_id] = self.tail
        if self.tail is None:
            self.head = slice_id
        else:
            self._next[self.tail] = slice_id
        self.tail = slice_id

    def prepend(self, slice_id: int) -> None:
        assert slice_id not in self._next
        self._prev[slice_id] = None
        self._next[slice_id] = self.head
        if self.head is None:
            self.tail = slice_id
        else:
            self._prev[self.head] = slice_id
        self.head = slice_id

    def insert_after(self, anchor: int, slice_id: int) -> None:
        assert slice_id not in self._next
        follower = self._next[anchor]
        self._prev[slice_id] = anchor
        self._next[slice_id] = follower
        self._next[anchor] = slice_id
        if follower is None:
            self.tail = slice_id
        else:
            self._prev[follower] = slice_id

    def remove(self, slice_id: int) -> None:
        prev = self._prev.pop(slice_id)
        follower = self._next.pop(slice_id)
        if prev is None:
            self.head = follower
        else:
            self._next[prev] = follower
        if follower is None:
            self.tail = prev
        else:
            self._prev[follower] = prev

    def first_two(self) -> list[int]:
        if self.head is None:
            return []
        second = self._next[self.head]
        return [self.head] if second is None else [self.head, second]
