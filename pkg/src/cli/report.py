import csv
import io
from datetime import datetime, timezone

from ..config.core import flatten_config, format_value
from ..entities.config import ExperimentConfig
from ..entities.enums import ReportFormat

SCHEMA_VERSION = 1


class Report:
    """Line-oriented `key: value` report with `[section]` headers.

    The provenance section, holding the only time-dependent field, is always
    written last so reruns can be compared byte for byte above it.
    """

    def __init__(self, command: str, config: ExperimentConfig):
        self.command = command
        self.sections: dict[str, list[tuple[str, object]]] = {}
        self.header = [("schema_version", SCHEMA_VERSION), ("command", command)]
        self.table_columns: list[str] = []
        self.table_rows: list[list[object]] = []
        for key, value in flatten_config(config).items():
            self.add("config", key, value)

    def add(self, section: str, key: str, value) -> None:
        self.sections.setdefault(section, []).append((key, value))

    def set_table(self, columns: list[str], rows: list[list[object]]) -> None:
        """Per-item table, emitted as a list section in text and as the whole CSV output."""
        self.table_columns = columns
        self.table_rows = rows

    def render_text(self, generated_at: datetime | None = None) -> str:
        lines = [f"{key}: {format_value(value)}" for key, value in self.header]
        for section, entries in self.sections.items():
            lines.append(f"[{section}]")
            lines.extend(f"{key}: {format_value(value)}" for key, value in entries)
        if self.table_rows:
            lines.append("[table]")
            lines.append(f"columns: {' '.join(self.table_columns)}")
            for row in self.table_rows:
                lines.append(f"{format_value(row[0])}: {' '.join(format_value(v) for v in row[1:])}")
        lines.append("[provenance]")
        lines.append(f"generated_at: {(generated_at or datetime.now(timezone.utc)).isoformat()}")
        return "\n".join(lines) + "\n"

    def render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.table_columns)
        for row in self.table_rows:
            writer.writerow([format_value(v) for v in row])
        return buffer.getvalue()

    def render(self, fmt: ReportFormat = ReportFormat.TEXT) -> str:
        if ReportFormat(fmt) == ReportFormat.CSV:
            return self.render_csv()
        return self.render_text()


def parse_report(text: str) -> dict[str, dict[str, str]]:
    """Read a text report back into `{section: {key: value}}`; top-level keys sit under ''."""
    sections: dict[str, dict[str, str]] = {"": {}}
    current = ""
    for line in text.splitlines():
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            sections.setdefault(current, {})
        elif ": " in line or line.endswith(":"):
            key, _, value = line.partition(":")
            sections[current][key] = value.strip()
    return sections
