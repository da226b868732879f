"""Command workflows for the SEDF toolkit."""

from .base_workflow import BaseWorkflow, WorkflowState
from .run_config import RunConfig
from .sedf_workflows import WORKFLOWS, run_command

__all__ = [
    "BaseWorkflow",
    "RunConfig",
    "WORKFLOWS",
    "WorkflowState",
    "run_command",
]
