"""Toolkit configuration loaded from configs/config.yml."""

import logging
import os
from pathlib import Path
from typing import Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field

from tools.gf import DEFAULT_MAX_ORDER

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "configs" / "config.yml"
CONFIG_ENV_VAR = "SEDF_CONFIG"


class FieldSection(BaseModel):
    max_order: int = Field(default=DEFAULT_MAX_ORDER, ge=2, description="Largest q with exp/log tables")


class SearchSection(BaseModel):
    max_nodes: Optional[int] = Field(default=None, ge=1, description="Node limit; None searches fully")
    use_automorphisms: bool = False


class ScanSection(BaseModel):
    q_max: int = Field(default=243, ge=2)
    m_min: int = Field(default=5, ge=2)


class WorkflowSection(BaseModel):
    enable_parallel_execution: bool = False
    max_workers: int = Field(default=1, ge=1)
    timeout: Optional[float] = Field(default=None, gt=0, description="Seconds per work unit")


class OutputSection(BaseModel):
    format: Optional[Literal["tsv", "json"]] = Field(default=None, description="None uses the command default")


class LoggingSection(BaseModel):
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class ToolkitConfig(BaseModel):
    field: FieldSection = Field(default_factory=FieldSection)
    search: SearchSection = Field(default_factory=SearchSection)
    scan: ScanSection = Field(default_factory=ScanSection)
    workflow: WorkflowSection = Field(default_factory=WorkflowSection)
    output: OutputSection = Field(default_factory=OutputSection)
    logging: LoggingSection = Field(default_factory=LoggingSection)

    @property
    def workers(self) -> int:
        """Process count the task runner should use."""
        return self.workflow.max_workers if self.workflow.enable_parallel_execution else 1


def load_config(path: Optional[str] = None) -> ToolkitConfig:
    """Load configuration from path, else $SEDF_CONFIG (.env honoured), else configs/config.yml.

    A missing default file yields the built-in defaults; a missing explicit file is an error.
    """
    load_dotenv()
    explicit = path or os.getenv(CONFIG_ENV_VAR)
    config_path = Path(explicit) if explicit else DEFAULT_CONFIG_PATH

    if not config_path.exists():
        if explicit:
            raise FileNotFoundError(f"Config file not found: {config_path}")
        logger.debug(f"No config at {config_path}; using defaults")
        return ToolkitConfig()

    with open(config_path, "r") as f:
        data = yaml.safe_load(f) or {}
    logger.debug(f"Loaded config from {config_path}")
    return ToolkitConfig.model_validate(data)
