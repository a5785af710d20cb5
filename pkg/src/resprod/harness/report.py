"""Report container, CSV/JSON emission, and replayable witness digests.

CSV output is the deterministic surface: header plus one row per result,
RFC 4180 quoting, UTF-8, LF line endings, reals at 12 significant digits,
and no timing fields.  The JSON form carries the config echo and summary
(including elapsed time and tool version) around the same rows.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .. import fermat, solvers
from ..errors import IoError

TOOL_VERSION = "0.1.0"

INF = "inf"  # sentinel for unreachable / unbounded table entries


@dataclass
class ExperimentReport:
    """Config echo, result rows, and a summary with re-checkable witnesses."""

    config: dict
    columns: tuple[str, ...]
    rows: list[dict]
    summary: dict = field(default_factory=dict)

    def row_values(self, row: dict) -> list:
        return [row.get(c) for c in self.columns]


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def report_to_csv_text(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([format_cell(v) for v in report.row_values(row)])
    return buf.getvalue()


def report_to_json_text(report: ExperimentReport) -> str:
    summary = dict(report.summary)
    summary["columns"] = list(report.columns)
    payload = {"config": report.config, "rows": report.rows, "summary": summary}
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def load_report_json(path: str | Path) -> ExperimentReport:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise IoError(f"cannot read report {path}: {exc}") from exc
    summary = dict(payload["summary"])
    columns = tuple(summary.pop("columns"))
    return ExperimentReport(
        config=payload["config"], columns=columns, rows=payload["rows"], summary=summary
    )


def emit_report(report: ExperimentReport, path: str | Path, out_format: str = "csv") -> Path:
    path = Path(path)
    text = report_to_csv_text(report) if out_format == "csv" else report_to_json_text(report)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(f"cannot write report {path}: {exc}") from exc
    return path


# -- witness digests ---------------------------------------------------------------
#
# Digests are compact semicolon-separated strings that carry everything a
# re-check needs; replaying one rebuilds the witness object, whose
# constructor performs the verification.


def product_witness_digest(w: solvers.WitnessSolution) -> str:
    parts = [
        "P",
        f"q={w.modulus}",
        f"a={w.target}",
        f"B={w.bound if w.bound is not None else ''}",
        f"u={w.coset_element}",
        "f=" + ",".join(str(n) for n in w.factors),
    ]
    return ";".join(parts)


def fq_witness_digest(w: fermat.FqWitness) -> str:
    parts = [
        "F",
        f"p={w.prime}",
        f"a={w.target}",
        f"U={w.upper}",
        "t=" + ",".join(str(u) for u in w.terms),
    ]
    return ";".join(parts)


def _digest_fields(digest: str) -> dict:
    fields = {}
    for part in digest.split(";")[1:]:
        key, _, value = part.partition("=")
        fields[key] = value
    return fields


def replay_digest(digest: str, subgroup: solvers.Subgroup | None = None) -> bool:
    """Re-check a digest through the solver constructors; True when it verifies."""
    if not digest:
        return True
    try:
        kind = digest.split(";", 1)[0]
        f = _digest_fields(digest)
        if kind == "P":
            solvers.WitnessSolution(
                target=int(f["a"]),
                modulus=int(f["q"]),
                factors=tuple(int(x) for x in f["f"].split(",")),
                coset_element=int(f["u"]),
                bound=int(f["B"]) if f.get("B") else None,
                subgroup=subgroup,
            )
            return True
        if kind == "F":
            fermat.FqWitness(
                prime=int(f["p"]),
                target=int(f["a"]),
                terms=tuple(int(x) for x in f["t"].split(",")),
                upper=int(f["U"]),
            )
            return True
    except Exception:
        return False
    return False
