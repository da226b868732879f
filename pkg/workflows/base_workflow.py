"""State-in, state-out command workflows and the exit-code convention they share."""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, TypedDict

from typing_extensions import NotRequired

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


class WorkflowState(TypedDict):
    """What a command receives (input_data) and what it leaves behind."""

    input_data: Dict[str, Any]
    results: NotRequired[List[Any]]
    report: NotRequired[str]
    exit_code: NotRequired[int]
    errors: NotRequired[list[str]]
    metadata: NotRequired[Dict[str, Any]]


class BaseWorkflow(ABC):
    """One command. Subclasses fill report, results and exit_code in process()."""

    def __init__(self, name: str, config: Optional[Dict[str, Any]] = None):
        """config is a dumped ToolkitConfig; an empty dict means built-in defaults."""
        self.name = name
        self.config = config or {}
        self.logger = logging.getLogger(f"{__name__}.{name}")

    @abstractmethod
    def process(self, state: WorkflowState) -> WorkflowState:
        """Run the command on state['input_data']."""

    def validate_input(self, state: WorkflowState) -> bool:
        return "input_data" in state

    def handle_error(self, error: Exception, state: WorkflowState) -> WorkflowState:
        """Input, usage and capacity failures all end the run with EXIT_USAGE and no report."""
        message = f"{self.name} error: {error}"
        self.logger.error(message, exc_info=self.logger.isEnabledFor(logging.DEBUG))
        state.setdefault("errors", []).append(message)
        state["exit_code"] = EXIT_USAGE
        state.pop("report", None)
        return state

    def __call__(self, state: WorkflowState) -> WorkflowState:
        if not self.validate_input(state):
            return self.handle_error(ValueError(f"State is not a {self.name} request"), state)
        try:
            return self.process(state)
        except (ValueError, OSError) as exc:
            return self.handle_error(exc, state)
