"""Generator settings, LTS statistics and run report entities."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from branchmin.entities.partition import WorkCounters

REPORT_SCHEMA_VERSION = 1


class GenConfig(BaseModel):
    """
    Parameters of the seeded random LTS generator.
    """

    n_max: int = Field(default=40, ge=1)
    m_max: int = Field(default=160, ge=0)
    label_count: int = Field(default=4, ge=1)
    tau_fraction: float = Field(default=0.4, ge=0.0, le=1.0)
    seed: int = 0
    model_config = ConfigDict(frozen=True)


class LtsStatistics(BaseModel):
    """Size figures of an LTS, optionally with its reduced size."""

    n: int
    m: int
    m_tau: int
    action_count: int
    min_n: Optional[int] = None
    min_m: Optional[int] = None

    def to_text(self) -> str:
        lines = [
            f"states        {self.n}",
            f"transitions   {self.m}",
            f"tau           {self.m_tau}",
            f"actions       {self.action_count}",
        ]
        if self.min_n is not None:
            lines.append(f"min. states   {self.min_n}")
            lines.append(f"min. trans.   {self.min_m}")
        return "\n".join(lines) + "\n"


class RunReport(BaseModel):
    """
    Machine-readable summary of one minimisation run.
    """

    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schema")
    input_n: int
    input_m: int
    input_actions: int
    preprocessed_n: int
    preprocessed_m: int
    output_n: int
    output_m: int
    block_count: int
    counters: WorkCounters
    elapsed_seconds: float
    peak_memory_bytes: Optional[int] = None
    model_config = ConfigDict(populate_by_name=True)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=4)

    def to_text(self) -> str:
        c = self.counters
        return (
            f"input        n={self.input_n} m={self.input_m}"
            f" actions={self.input_actions}\n"
            f"preprocessed n={self.preprocessed_n} m={self.preprocessed_m}\n"
            f"output       n={self.output_n} m={self.output_m}"
            f" blocks={self.block_count}\n"
            f"work         bunch={c.bunch_units}"
            f" smaller_block={c.smaller_block_units}"
            f" new_bottom={c.new_bottom_units} total={c.total}\n"
            f"elapsed      {self.elapsed_seconds:.3f}s\n"
        )


_COUNT = {"type": "integer", "minimum": 0}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "branchmin run report",
    "type": "object",
    "required": [
        "schema",
        "input_n",
        "input_m",
        "input_actions",
        "preprocessed_n",
        "preprocessed_m",
        "output_n",
        "output_m",
        "block_count",
        "counters",
        "elapsed_seconds",
    ],
    "properties": {
        "schema": {"const": REPORT_SCHEMA_VERSION},
        "input_n": _COUNT,
        "input_m": _COUNT,
        "input_actions": _COUNT,
        "preprocessed_n": _COUNT,
        "preprocessed_m": _COUNT,
        "output_n": _COUNT,
        "output_m": _COUNT,
        "block_count": _COUNT,
        "counters": {
            "type": "object",
            "required": [
                "bunch_units",
                "smaller_block_units",
                "new_bottom_units",
            ],
            "properties": {
                "bunch_units": _COUNT,
                "smaller_block_units": _COUNT,
                "new_bottom_units": _COUNT,
            },
        },
        "elapsed_seconds": {"type": "number", "minimum": 0},
        "peak_memory_bytes": {"type": ["integer", "null"], "minimum": 0},
    },
}
