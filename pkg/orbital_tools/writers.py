"""
This module provides the text encoders of orbital_tools reports (CSV, JSON and Markdown) and the decoders
used to read eligibility tables back.
@author: orbital-measure-tools developers
"""
import csv
import io
import json
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence

from orbital_tools.config import parse_config
from orbital_tools.enumerations import Marker, ReportFormat, Space

PAIR_FIELDS = ["x_config", "y_config", "eligible", "verdict", "rank", "target", "agree"]
POWER_FIELDS = ["config", "minimal_l", "l", "verdict", "rank", "target"]


def pair_rows(reports) -> List[Dict]:
    """One record per PairReport with the fields of PAIR_FIELDS."""
    return [{"x_config": report.x_config.label(),
             "y_config": report.y_config.label(),
             "eligible": report.eligible,
             "verdict": report.cert.verdict.value,
             "rank": report.cert.achieved_rank,
             "target": report.cert.target_dim,
             "agree": report.agree} for report in reports]


def power_rows(reports) -> List[Dict]:
    """One record per (configuration, tried l) of a list of PowerReports."""
    rows = []
    for report in reports:
        for l, cert in sorted(report.certs.items()):
            rows.append({"config": report.config.label(),
                         "minimal_l": report.minimal_l,
                         "l": l,
                         "verdict": cert.verdict.value,
                         "rank": cert.achieved_rank,
                         "target": cert.target_dim})
    return rows


def cert_row(cert) -> Dict:
    return {"verdict": cert.verdict.value, "rank": cert.achieved_rank, "target": cert.target_dim,
            "trials": cert.trials, "mode": cert.mode.value, "tolerance": cert.tolerance}


def _text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return f"{value}"


class ReportWriter(ABC):
    """Encoder of flat records (list of dicts with equal keys) and of eligibility tables."""
    format: ReportFormat = None

    @abstractmethod
    def records(self, rows: Sequence[Dict], fields: Optional[Sequence[str]] = None) -> str:
        pass

    @abstractmethod
    def table(self, document) -> str:
        pass

    @staticmethod
    def _fields(rows: Sequence[Dict], fields: Optional[Sequence[str]]) -> List[str]:
        if fields is not None:
            return list(fields)
        return list(rows[0].keys()) if rows else []


class CsvWriter(ReportWriter):
    format = ReportFormat.CSV

    def records(self, rows: Sequence[Dict], fields: Optional[Sequence[str]] = None) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        fields = self._fields(rows, fields)
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_text(row.get(field)) for field in fields])
        return buffer.getvalue()

    def table(self, document) -> str:
        """Corner cell holds the space, first row and column the labels, cells the marker values."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([document.space.value] + document.labels)
        for label, row in zip(document.labels, document.cells):
            writer.writerow([label] + [cell.value if cell else "" for cell in row])
        return buffer.getvalue()


class JsonWriter(ReportWriter):
    format = ReportFormat.JSON

    def records(self, rows: Sequence[Dict], fields: Optional[Sequence[str]] = None) -> str:
        fields = self._fields(rows, fields)
        return json.dumps([{field: row.get(field) for field in fields} for row in rows], indent=2,
                          ensure_ascii=False)

    def table(self, document) -> str:
        return json.dumps({"p": document.p,
                           "space": document.space.value,
                           "configs": document.labels,
                           "cells": [[cell.value if cell else None for cell in row] for row in document.cells]},
                          indent=2, ensure_ascii=False)


class MarkdownWriter(ReportWriter):
    format = ReportFormat.Markdown

    def records(self, rows: Sequence[Dict], fields: Optional[Sequence[str]] = None) -> str:
        fields = self._fields(rows, fields)
        lines = ["| " + " | ".join(fields) + " |",
                 "|" + "---|" * len(fields)]
        for row in rows:
            lines.append("| " + " | ".join(_text(row.get(field)) for field in fields) + " |")
        return "\n".join(lines) + "\n"

    def table(self, document) -> str:
        """Columns are the configurations, the row label stands in the last column."""
        labels = document.labels
        lines = ["| " + " | ".join(labels) + " | |",
                 "|" + ":-:|" * len(labels) + "---|"]
        for label, row in zip(labels, document.cells):
            cells = [cell.symbol if cell else "" for cell in row]
            lines.append("| " + " | ".join(cells) + f" | {label} |")
        return "\n".join(lines) + "\n"


_WRITERS = {writer.format: writer for writer in (CsvWriter, JsonWriter, MarkdownWriter)}


def get_writer(format: ReportFormat) -> ReportWriter:
    format = ReportFormat(format)
    if format not in _WRITERS:
        raise ValueError(f"No text writer for format {format.value!r}.")
    return _WRITERS[format]()


# ----------------------------------------------------------------------------------------------------------------------
# decoders
# ----------------------------------------------------------------------------------------------------------------------
def _marker(value) -> Optional[Marker]:
    return Marker(value) if value else None


def read_table_csv(text: str):
    from orbital_tools.tables import TableDocument  # local import to prevent circle import error
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or len(rows[0]) < 2:
        raise ValueError("Not an eligibility table: missing header row.")
    space, labels = Space(rows[0][0]), rows[0][1:]
    configs = [parse_config(label) for label in labels]
    cells = [[_marker(value) for value in row[1:]] for row in rows[1:]]
    if [row[0] for row in rows[1:]] != labels or any(len(row) != len(labels) for row in cells):
        raise ValueError("Not an eligibility table: row labels do not match the header.")
    return TableDocument(configs[0].p, space, configs, cells, ReportFormat.CSV)


def read_table_json(text: str):
    from orbital_tools.tables import TableDocument  # local import to prevent circle import error
    data = json.loads(text)
    try:
        p, space, labels, cells = data["p"], Space(data["space"]), data["configs"], data["cells"]
    except (KeyError, TypeError) as error:
        raise ValueError(f"Not an eligibility table: {error}") from error
    configs = [parse_config(label, p) for label in labels]
    return TableDocument(p, space, configs, [[_marker(value) for value in row] for row in cells], ReportFormat.JSON)
