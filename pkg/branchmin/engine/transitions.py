"""Per-source and per-target orderings of the transitions."""


class TransitionIndex:
    """
    Transition attributes plus two orderings of the transition ids.

    Per source state (`out_arr`), the non-inert transitions come first,
    grouped per bunch into out-groups, followed by the inert transitions
    from `out_inert_begin[s]` on. Per target state (`in_arr`), non-inert
    transitions precede the inert ones starting at `in_inert_begin[s]`.

    Out-groups are never relabelled: when a bunch is split, the moved
    transitions of a group go to a fresh group and an emptied group is
    simply abandoned.
    """

    def __init__(
        self,
        n: int,
        src: list[int],
        key: list[int],
        tgt: list[int],
        block_of: list[int],
        tau: int,
        initial_bunch: int = 0,
    ):
        m = len(src)
        self.n = n
        self.m = m
        self.src = src
        self.key = key
        self.tgt = tgt
        self.tau = tau

        inert = [
            key[t] == tau and block_of[src[t]] == block_of[tgt[t]]
            for t in range(m)
        ]

        self.out_arr, self.out_pos, self.out_begin, self.out_inert_begin = (
            self._group(n, src, inert)
        )
        self.in_arr, self.in_pos, self.in_begin, self.in_inert_begin = (
            self._group(n, tgt, inert)
        )

        self.og_of: list[int] = [-1] * m
        self.og_begin: list[int] = []
        self.og_end: list[int] = []
        self.og_bunch: list[int] = []
        for state in range(n):
            begin, end = self.out_begin[state], self.out_inert_begin[state]
            if begin < end:
                group = self.new_group(begin, end, initial_bunch)
                for i in range(begin, end):
                    self.og_of[self.out_arr[i]] = group

    @staticmethod
    def _group(n: int, endpoint: list[int], inert: list[bool]):
        """Counting sort of the transitions by endpoint, inert ones last."""
        begin = [0] * (n + 1)
        for state in endpoint:
            begin[state + 1] += 1
        for state in range(n):
            begin[state + 1] += begin[state]
        noninert_fill = begin[:-1]
        inert_count = [0] * n
        for t, state in enumerate(endpoint):
            if inert[t]:
                inert_count[state] += 1
        inert_begin = [begin[s + 1] - inert_count[s] for s in range(n)]
        inert_fill = list(inert_begin)
        arr = [0] * len(endpoint)
        pos = [0] * len(endpoint)
        for t, state in enumerate(endpoint):
            if inert[t]:
                i = inert_fill[state]
                inert_fill[state] += 1
            else:
                i = noninert_fill[state]
                noninert_fill[state] += 1
            arr[i] = t
            pos[t] = i
        return arr, pos, begin, inert_begin

    def new_group(self, begin: int, end: int, bunch: int) -> int:
        self.og_begin.append(begin)
        self.og_end.append(end)
        self.og_bunch.append(bunch)
        return len(self.og_begin) - 1

    def outgoing_noninert(self, state: int) -> list[int]:
        return self.out_arr[self.out_begin[state] : self.out_inert_begin[state]]

    def outgoing_inert(self, state: int) -> list[int]:
        return self.out_arr[
            self.out_inert_begin[state] : self.out_begin[state + 1]
        ]

    def incoming_noninert(self, state: int) -> list[int]:
        return self.in_arr[self.in_begin[state] : self.in_inert_begin[state]]

    def incoming_inert(self, state: int) -> list[int]:
        return self.in_arr[
            self.in_inert_begin[state] : self.in_begin[state + 1]
        ]

    def inert_out_count(self, state: int) -> int:
        return self.out_begin[state + 1] - self.out_inert_begin[state]

    def degree(self, state: int) -> int:
        return (
            self.out_begin[state + 1]
            - self.out_begin[state]
            + self.in_begin[state + 1]
            - self.in_begin[state]
        )

    def group_starts(self, state: int) -> list[int]:
        """First transition of every out-group of `state`."""
        starts = []
        i, end = self.out_begin[state], self.out_inert_begin[state]
        while i < end:
            t = self.out_arr[i]
            starts.append(t)
            i = self.og_end[self.og_of[t]]
        return starts

    def _swap_out(self, i: int, j: int) -> None:
        arr, pos = self.out_arr, self.out_pos
        a, b = arr[i], arr[j]
        arr[i], arr[j] = b, a
        pos[a], pos[b] = j, i

    def _swap_in(self, i: int, j: int) -> None:
        arr, pos = self.in_arr, self.in_pos
        a, b = arr[i], arr[j]
        arr[i], arr[j] = b, a
        pos[a], pos[b] = j, i

    def move_to_group(self, t: int, carved: dict[int, int], bunch: int) -> None:
        """
        Moves `t` from its out-group into the group that `carved` assigns to
        that out-group, creating the new group directly behind the old one.
        """
        group = self.og_of[t]
        new = carved.get(group)
        if new is None:
            end = self.og_end[group]
            new = carved[group] = self.new_group(end, end, bunch)
        j = self.og_end[group] - 1
        self._swap_out(self.out_pos[t], j)
        self.og_end[group] = j
        self.og_begin[new] = j
        self.og_of[t] = new

    def group_nonempty(self, group: int) -> bool:
        return self.og_begin[group] < self.og_end[group]

    def make_noninert(self, t: int, bunch: int) -> None:
        """
        Moves a transition that stopped being inert out of the inert tails.
        On the source side it joins the last out-group if that group belongs
        to `bunch`, else it starts a new one.
        """
        u = self.tgt[t]
        k = self.in_inert_begin[u]
        self._swap_in(self.in_pos[t], k)
        self.in_inert_begin[u] = k + 1

        s = self.src[t]
        i = self.out_inert_begin[s]
        self._swap_out(self.out_pos[t], i)
        self.out_inert_begin[s] = i + 1
        if i > self.out_begin[s]:
            last = self.og_of[self.out_arr[i - 1]]
            if self.og_bunch[last] == bunch and self.og_end[last] == i:
                self.og_end[last] = i + 1
                self.og_of[t] = last
                return
        self.og_of[t] = self.new_group(i, i + 1, bunch)
