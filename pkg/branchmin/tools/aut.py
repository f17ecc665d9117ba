"""
Aldébaran (.aut) reading and writing.

The reader streams its input line by line so large benchmark files never
have to be held in memory as text.
"""

import logging
import re
from typing import IO, Iterable

from branchmin.entities.lts import DEFAULT_INTERNAL_LABELS, ActionTable, Lts
from branchmin.exceptions import AutParseError, UnknownLabelError

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^\s*des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_TRANSITION = re.compile(
    r'^\s*\(\s*(\d+)\s*,\s*(?:"([^"]*)"|([^,()\s"]+))\s*,\s*(\d+)\s*\)\s*$'
)


def parse_aut(
    stream: IO[bytes] | Iterable[bytes],
    internal_labels: Iterable[str] = DEFAULT_INTERNAL_LABELS,
) -> Lts:
    """
    Reads an Aldébaran file into a normalized Lts.

    Args:
        stream (IO[bytes]): Binary input positioned at the header line.
        internal_labels (Iterable[str]): Label names treated as internal.

    Returns:
        Lts: The normalized transition system. Duplicate transitions are
        dropped, so its m can be smaller than the declared count.

    Raises:
        AutParseError: On a malformed header or transition line, a state
        index outside the declared range, an unterminated quote, a line that
        is not valid UTF-8 or a transition count that differs from the
        header.
    """
    header = None
    line_number = 0
    declared_m = n = initial = 0
    seen = 0
    label_index: dict[str, int] = {}
    labels: list[str] = []
    triples: list[tuple[int, int, int]] = []

    for raw in stream:
        line_number += 1
        try:
            line = raw.decode("utf-8").rstrip("\r\n")
        except UnicodeDecodeError:
            raise AutParseError("not valid UTF-8", line_number) from None
        if not line.strip():
            continue
        if header is None:
            header = _HEADER.match(line)
            if header is None:
                raise AutParseError("malformed header", line_number)
            initial, declared_m, n = (int(g) for g in header.groups())
            if n == 0:
                raise AutParseError(
                    "malformed header: state count must be positive",
                    line_number,
                )
            if initial >= n:
                raise AutParseError(
                    f"initial state {initial} is not below {n}", line_number
                )
            continue

        match = _TRANSITION.match(line)
        if match is None:
            if line.count('"') % 2 == 1:
                raise AutParseError("unterminated quote", line_number)
            raise AutParseError("malformed transition", line_number)
        seen += 1
        if seen > declared_m:
            raise AutParseError(
                f"more transitions than the declared {declared_m}",
                line_number,
            )
        src, tgt = int(match.group(1)), int(match.group(4))
        if src >= n or tgt >= n:
            raise AutParseError(
                f"state index {max(src, tgt)} is not below {n}", line_number
            )
        label = match.group(2) if match.group(2) is not None else match.group(3)
        index = label_index.get(label)
        if index is None:
            index = label_index[label] = len(labels)
            labels.append(label)
        triples.append((src, index, tgt))

    if header is None:
        raise AutParseError("missing header", max(line_number, 1))
    if seen != declared_m:
        raise AutParseError(
            f"declared {declared_m} transitions, found {seen}", line_number
        )

    lts = Lts.normalized(n, initial, triples, labels, internal_labels)
    logger.info(
        "Parsed %d states, %d transitions (%d declared), %d labels",
        lts.n,
        lts.m,
        declared_m,
        len(lts.actions.labels),
    )
    return lts


def write_aut(lts: Lts) -> bytes:
    """Serializes an LTS with transitions sorted by (source, label, target)."""
    labels = lts.actions.labels
    lines = [f"des ({lts.initial},{lts.m},{lts.n})\n"]
    lines.extend(
        f'({src},"{labels[label]}",{tgt})\n'
        for src, label, tgt in sorted(lts.transitions)
    )
    return "".join(lines).encode("utf-8")


def set_internal(lts: Lts, labels: Iterable[str]) -> Lts:
    """
    Returns a copy of `lts` whose internal labels are exactly `labels`.

    Raises:
        UnknownLabelError: if a name is not in the action table.
    """
    table = lts.actions
    internal = set()
    for name in labels:
        if name not in table.labels:
            raise UnknownLabelError(f"unknown label {name!r}")
        internal.add(table.labels.index(name))
    actions = ActionTable(labels=table.labels, internal=frozenset(internal))
    return lts.model_copy(update={"actions": actions})
