# Copyright 2025 The branchmin Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import logging
from typing import Any, Callable, Optional

from pydantic import BaseModel, ConfigDict

from branchmin.exceptions import InvariantViolation
from branchmin.shared_libraries.validation import (
    check_marked_bottom_states,
    check_split_outcome,
    validate_engine,
)

logger = logging.getLogger(__name__)


class EngineCallbacks(BaseModel):
    """
    Hooks the main loop calls at its checkpoints.

    before_iteration(engine) runs before a nontrivial bunch is taken from
    the stack, before_split(engine, block, slice_id) before every call of
    the split routine and after_split(engine, block, slice_id, outcome)
    right after it, while the block is still undivided.
    """

    before_iteration: Optional[Callable[[Any], None]] = None
    before_split: Optional[Callable[[Any, int, int], None]] = None
    after_split: Optional[Callable[[Any, int, int, Any], None]] = None
    model_config = ConfigDict(frozen=True)


def validate_iteration(engine) -> None:
    """Raises InvariantViolation when the engine is inconsistent."""
    violations = validate_engine(engine)
    if violations:
        logger.error("Engine inconsistent before iteration: %s", violations[0])
        raise InvariantViolation("before iteration", violations)


def validate_split(engine, block: int, slice_id: int) -> None:
    """Checks the marked-transition precondition of a split call."""
    violations = check_marked_bottom_states(engine, block, slice_id)
    if violations:
        logger.error(
            "Splitter %d of block %d violates the marking precondition",
            slice_id,
            block,
        )
        raise InvariantViolation(f"split of block {block}", violations)


def validate_split_outcome(
    engine, block: int, slice_id: int, outcome
) -> None:
    violations = check_split_outcome(engine, block, slice_id, outcome)
    if violations:
        logger.error("Split of block %d on slice %d is wrong", block, slice_id)
        raise InvariantViolation(
            f"result of splitting block {block}", violations
        )


def validating_callbacks() -> EngineCallbacks:
    return EngineCallbacks(
        before_iteration=validate_iteration,
        before_split=validate_split,
        after_split=validate_split_outcome,
    )
