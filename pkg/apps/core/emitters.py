"""
Rendering of result tables as CSV, JSON or Markdown.

Output is deterministic: fixed column order, "\n" line endings and exact
values shown with two decimals rounded half to even.
"""

import json
from fractions import Fraction

import pandas as pd

from apps.permutations.exceptions import InvalidInputError

from .models import OutputFormat


def display_decimal(value, places=2):
    """Fixed-point text of an exact value, rounded half to even; "" for None."""
    if value is None:
        return ""
    rounded = round(Fraction(value), places)
    return f"{float(rounded):.{places}f}"


def frame_to_csv(frame):
    return frame.to_csv(index=False, lineterminator="\n", na_rep="")


def frame_to_markdown(frame):
    headers = [str(column) for column in frame.columns]
    cells = [["" if pd.isna(v) else str(v) for v in row] for row in frame.itertuples(index=False)]
    widths = [
        max([len(header)] + [len(row[i]) for row in cells])
        for i, header in enumerate(headers)
    ]
    lines = [
        "| " + " | ".join(h.rjust(w) for h, w in zip(headers, widths)) + " |",
        "|" + "|".join("-" * (w + 1) + ":" for w in widths) + "|",
    ]
    for row in cells:
        lines.append("| " + " | ".join(c.rjust(w) for c, w in zip(row, widths)) + " |")
    return "\n".join(lines) + "\n"


def _plain(value):
    if pd.isna(value):
        return None
    return value.item() if hasattr(value, "item") else value


def frame_to_records(frame):
    return [
        {column: _plain(value) for column, value in zip(frame.columns, row)}
        for row in frame.itertuples(index=False)
    ]


def render_frame(frame, output_format):
    if output_format == OutputFormat.CSV:
        return frame_to_csv(frame)
    if output_format == OutputFormat.JSON:
        return json.dumps(frame_to_records(frame), indent=2, default=str) + "\n"
    if output_format == OutputFormat.MARKDOWN:
        return frame_to_markdown(frame)
    raise InvalidInputError(f"unknown output format {output_format!r}")


def render_sections(sections, output_format):
    """Several named frames in one document, in the given order."""
    if output_format == OutputFormat.JSON:
        payload = {name: frame_to_records(frame) for name, frame in sections}
        return json.dumps(payload, indent=2, default=str) + "\n"
    prefix = "# " if output_format == OutputFormat.CSV else "### "
    parts = [f"{prefix}{name}\n{render_frame(frame, output_format)}" for name, frame in sections]
    return "\n".join(parts)


def render_count_table(table, output_format):
    """
    CSV: long form n,k,count. JSON: nested arrays of decimal strings, one
    array per n. Markdown: one row per n with a column per k and the row sum.
    """
    if output_format == OutputFormat.CSV:
        return frame_to_csv(table.to_frame())
    if output_format == OutputFormat.JSON:
        rows = [[str(count) for count in row] for row in table.rows]
        return json.dumps(rows) + "\n"
    if output_format == OutputFormat.MARKDOWN:
        width = max(len(row) for row in table.rows)
        records = []
        for n, row in enumerate(table.rows, start=1):
            record = {"n": str(n)}
            for k in range(width):
                record[f"k={k}"] = str(row[k]) if k < len(row) else ""
            record["sum"] = str(sum(row))
            records.append(record)
        return frame_to_markdown(pd.DataFrame.from_records(records))
    raise InvalidInputError(f"unknown output format {output_format!r}")
