"""Labelled transition system entities."""

from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from branchmin.exceptions import UnknownLabelError

# Marks an original state that has no counterpart in a derived LTS.
REMOVED = -1

DEFAULT_INTERNAL_LABELS = ("tau", "i")

Transition = tuple[int, int, int]


class ActionTable(BaseModel):
    """
    Interned action labels with the subset that counts as the internal action.
    """

    labels: tuple[str, ...]
    internal: frozenset[int] = frozenset()
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_labels(self) -> "ActionTable":
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("action labels must be unique")
        for index in self.internal:
            if not 0 <= index < len(self.labels):
                raise ValueError(f"internal label index {index} out of range")
        return self

    def index(self, label: str) -> int:
        """Returns the dense index of `label`.

        Raises:
            UnknownLabelError: if the label is not in the table.
        """
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(f"unknown label {label!r}") from None

    @property
    def tau_index(self) -> Optional[int]:
        """The representative index all internal labels are identified with."""
        return min(self.internal) if self.internal else None

    def action_keys(self) -> list[int]:
        """Per label index, the key used to compare actions.

        Every internal label maps to `tau_index`; visible labels map to
        themselves.
        """
        tau = self.tau_index
        return [
            tau if index in self.internal else index
            for index in range(len(self.labels))
        ]

    def internal_names(self) -> frozenset[str]:
        return frozenset(self.labels[index] for index in self.internal)


class Lts(BaseModel):
    """
    A labelled transition system over dense state and label indices.
    """

    n: int = Field(ge=1)
    initial: int = Field(ge=0)
    transitions: tuple[Transition, ...] = ()
    actions: ActionTable
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_indices(self) -> "Lts":
        if self.initial >= self.n:
            raise ValueError(
                f"initial state {self.initial} outside [0, {self.n})"
            )
        n = self.n
        label_count = len(self.actions.labels)
        for src, label, tgt in self.transitions:
            if not (0 <= src < n and 0 <= tgt < n):
                raise ValueError(
                    f"transition ({src}, {label}, {tgt}) leaves [0, {n})"
                )
            if not 0 <= label < label_count:
                raise ValueError(f"transition label {label} is not interned")
        if len(set(self.transitions)) != len(self.transitions):
            raise ValueError("duplicate transitions")
        return self

    @property
    def m(self) -> int:
        return len(self.transitions)

    def tau_count(self) -> int:
        """Number of transitions carrying an internal label."""
        internal = self.actions.internal
        return sum(1 for _, label, _ in self.transitions if label in internal)

    @classmethod
    def normalized(
        cls,
        n: int,
        initial: int,
        transitions: Iterable[Transition],
        labels: Sequence[str],
        internal_labels: Iterable[str] = DEFAULT_INTERNAL_LABELS,
    ) -> "Lts":
        """Builds the canonical form of an LTS.

        Duplicate transitions are dropped, unused labels are dropped, the
        remaining labels are sorted and re-interned, and transitions are
        sorted by (source, label, target).

        Args:
            n: The number of states.
            initial: The initial state.
            transitions: (source, label index, target) triples over `labels`.
            labels: The label strings the triples refer to.
            internal_labels: Label names treated as the internal action.

        Returns:
            A normalized Lts.
        """
        unique = set(transitions)
        used = sorted({labels[label] for _, label, _ in unique})
        new_index = {name: index for index, name in enumerate(used)}
        remap = [new_index.get(name, -1) for name in labels]
        canonical = sorted(
            (src, remap[label], tgt) for src, label, tgt in unique
        )
        internal_names = set(internal_labels)
        actions = ActionTable(
            labels=tuple(used),
            internal=frozenset(
                index
                for index, name in enumerate(used)
                if name in internal_names
            ),
        )
        return cls(
            n=n,
            initial=initial,
            transitions=tuple(canonical),
            actions=actions,
        )

    def normalize(self) -> "Lts":
        """Returns the canonical form of this LTS (idempotent)."""
        return Lts.normalized(
            self.n,
            self.initial,
            self.transitions,
            self.actions.labels,
            self.actions.internal_names(),
        )


class StateMap(BaseModel):
    """
    Maps every original state to its representative in a derived LTS.
    """

    map: tuple[int, ...]
    target_n: int = Field(ge=0)
    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_targets(self) -> "StateMap":
        for entry in self.map:
            if entry != REMOVED and not 0 <= entry < self.target_n:
                raise ValueError(
                    f"state map entry {entry} outside [0, {self.target_n})"
                )
        return self

    @classmethod
    def identity(cls, n: int) -> "StateMap":
        return cls(map=tuple(range(n)), target_n=n)

    def __getitem__(self, state: int) -> int:
        return self.map[state]

    def __len__(self) -> int:
        return len(self.map)

    def compose(self, then: "StateMap") -> "StateMap":
        """Returns the map `state -> then[self[state]]`."""
        return StateMap(
            map=tuple(
                REMOVED if entry == REMOVED else then.map[entry]
                for entry in self.map
            ),
            target_n=then.target_n,
        )
