"""Formatter interface shared by the TSV and JSON-lines report writers."""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence


class BaseFormatter(ABC):
    """Turns ordered records into one text payload and reads such payloads back."""

    def __init__(self, name: str, config: Optional[Dict[str, Any]] = None):
        self.name = name
        self.config = config or {}
        self.logger = logging.getLogger(f"{__name__}.{name}")

    @abstractmethod
    def render(self, records: Sequence[Any], **kwargs: Any) -> str:
        """Records are pydantic models or dicts; output ends in a newline unless empty.

        The same records must always render to the same bytes.
        """

    @abstractmethod
    def parse_output(self, output: str) -> List[Dict[str, Any]]:
        """Inverse of render, one dict per record."""
