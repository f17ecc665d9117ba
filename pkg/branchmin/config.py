import os
import logging
from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import BaseModel, Field


logger = logging.getLogger(__name__)


class EngineSettings(BaseModel):

    # Refinement engine setup
    validate_engine: bool = Field(default=False)
    internal_labels: list[str] = Field(default_factory=lambda: ["tau", "i"])


class GeneratorSettings(BaseModel):

    # Defaults for `branchmin gen random`
    n_max: int = Field(default=40, ge=1)
    m_max: int = Field(default=160, ge=0)
    label_count: int = Field(default=4, ge=1)
    tau_fraction: float = Field(default=0.4, ge=0.0, le=1.0)
    seed: int = Field(default=0)


class Config(BaseSettings):

    # Configuration settings for the minimiser and its command line
    model_config = SettingsConfigDict(
        env_file=os.path.join(
            os.path.dirname(os.path.abspath(__file__)), "../.env"
        ),
        env_prefix="BRANCHMIN_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )
    engine: EngineSettings = Field(default_factory=EngineSettings)
    generator: GeneratorSettings = Field(default_factory=GeneratorSettings)
    app_name: str = "branchmin"
    report_format: Literal["text", "json"] = Field(default="text")
    log_level: str = Field(default="WARNING")
    vlts_dir: str | None = Field(default=None)
