"""TSV and JSON-lines formatters for scan rows, tables and certificate streams."""

import io
import json
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from pydantic import BaseModel

from tools.base_formatter import BaseFormatter
from tools.edf import SedfCertificate


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    return str(value)


class TsvFormatter(BaseFormatter):
    """Tab-separated tables; booleans as true/false, missing values as empty cells."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("tsv", config)

    def render_frame(self, frame: pd.DataFrame, header_lines: Sequence[str] = (), index: bool = False) -> str:
        buffer = io.StringIO()
        for line in header_lines:
            buffer.write(f"# {line}\n")
        frame.to_csv(buffer, sep="\t", index=index, lineterminator="\n")
        return buffer.getvalue()

    def render(
        self,
        records: Sequence[Any],
        columns: Optional[Sequence[str]] = None,
        header_lines: Sequence[str] = (),
        **kwargs: Any,
    ) -> str:
        rows = [r.model_dump(by_alias=True) if isinstance(r, BaseModel) else dict(r) for r in records]
        if columns is None:
            columns = list(rows[0].keys()) if rows else []
        frame = pd.DataFrame(
            [[_cell(row.get(c)) for c in columns] for row in rows], columns=list(columns), dtype=str
        )
        self.logger.debug(f"Rendering {len(frame)} rows with columns {list(columns)}")
        return self.render_frame(frame, header_lines)

    def parse_output(self, output: str) -> List[Dict[str, Any]]:
        if not output.strip():
            return []
        frame = pd.read_csv(
            io.StringIO(output), sep="\t", comment="#", dtype=str, keep_default_na=False
        )
        return frame.to_dict(orient="records")


class JsonFormatter(BaseFormatter):
    """One compact JSON object per line, keys by alias (lambda, not lambda_)."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("json", config)

    def render(self, records: Sequence[BaseModel], **kwargs: Any) -> str:
        return "".join(r.model_dump_json(by_alias=True) + "\n" for r in records)

    def parse_output(self, output: str) -> List[Dict[str, Any]]:
        return [json.loads(line) for line in output.splitlines() if line.strip()]

    def parse_certificates(self, output: str) -> List[SedfCertificate]:
        """Read a certificate stream back into validated records."""
        return [SedfCertificate.model_validate(d) for d in self.parse_output(output)]


def get_formatter(fmt: str, config: Optional[Dict[str, Any]] = None) -> BaseFormatter:
    if fmt == "tsv":
        return TsvFormatter(config)
    if fmt == "json":
        return JsonFormatter(config)
    raise ValueError(f"Unknown output format: {fmt}")
