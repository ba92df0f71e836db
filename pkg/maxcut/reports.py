"""Run manifests, published reference values and report writers."""

import csv
import io
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Optional, TextIO

import yaml
from pydantic import BaseModel, Field, field_validator

from maxcut.config import settings
from maxcut.errors import InputError
from maxcut.instance import AlgorithmId
from maxcut.parsers import EdgeWeightType
from maxcut.perturbation import PerturbationPolicy
from maxcut.pipeline import BatchRecord

logger = logging.getLogger(__name__)

# Published cuts are integers; anything within this distance matches
MATCH_TOLERANCE = 0.5


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    TABLE = "table"


class RunManifest(BaseModel):
    """What to run: instances, algorithms, policy and where the report goes."""

    instances: list[Path]
    algorithms: list[AlgorithmId]
    policy: PerturbationPolicy = Field(default_factory=PerturbationPolicy)
    output: Optional[Path] = None
    output_format: OutputFormat = OutputFormat.TABLE
    reference_path: Path = settings.reference_path
    oracle_limit: int = Field(default=settings.oracle_limit, ge=2)
    workers: Optional[int] = Field(default=settings.workers, ge=1)
    metric: Optional[EdgeWeightType] = None
    timing: bool = False

    @field_validator("instances", "algorithms")
    @classmethod
    def _not_empty(cls, v: list) -> list:
        if not v:
            raise ValueError("at least one entry is required")
        return v

    def instance_paths(self) -> list[Path]:
        """Instance files, with directories expanded to their sorted *.tsp files."""
        paths: list[Path] = []
        for p in self.instances:
            if p.is_dir():
                paths.extend(sorted(p.glob("*.tsp")))
            else:
                paths.append(p)
        return paths

    @classmethod
    def from_yaml(
        cls, path: Path, defaults: Optional[dict] = None, **overrides: Any
    ) -> "RunManifest":
        """Load a YAML manifest. Precedence: overrides, then file keys, then defaults."""
        data = {**(defaults or {}), **load_yaml(path)}
        policy = dict(data.pop("policy", None) or {})
        policy.update(overrides.pop("policy", None) or {})
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(policy=PerturbationPolicy(**policy), **data)


def load_yaml(path: Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Could not read manifest: {path} - {e}") from e
    data = yaml.safe_load(text) or {}
    if not isinstance(data, dict):
        raise InputError(f"manifest {path} must be a mapping, got {type(data).__name__}")
    return data


class ReferenceEntry(BaseModel):
    """Published cut value for one instance.

    ``rel_tol`` is the accepted relative shortfall for instances that are
    reported but not reproduced exactly; ``metric`` overrides the distance
    function the published value was computed with.
    """

    instance: str
    expected_cut: float
    gate: bool = False
    rel_tol: Optional[float] = Field(default=None, ge=0, lt=1)
    metric: Optional[EdgeWeightType] = None


def _optional(row: dict, key: str) -> Optional[str]:
    value = (row.get(key) or "").strip()
    return value or None


def load_reference(path: Path) -> dict[str, ReferenceEntry]:
    """Read an ``instance,expected_cut,gate[,rel_tol,metric]`` CSV keyed by instance name."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"reference file not found: {path}")
    entries: dict[str, ReferenceEntry] = {}
    with path.open(newline="", encoding="utf-8") as f:
        for line_no, row in enumerate(csv.DictReader(f), start=2):
            gate = str(row.get("gate", "")).strip().lower() in ("1", "true", "yes", "y")
            try:
                entry = ReferenceEntry(
                    instance=row["instance"].strip(),
                    expected_cut=float(row["expected_cut"]),
                    gate=gate,
                    rel_tol=_optional(row, "rel_tol"),
                    metric=_optional(row, "metric"),
                )
            except ValueError as e:
                raise InputError(f"{path}:{line_no}: bad reference row - {e}") from e
            entries[entry.instance] = entry
    return entries


def reference_metrics(reference: dict[str, ReferenceEntry]) -> dict[str, EdgeWeightType]:
    """Instance name -> metric override, for the entries that carry one."""
    return {name: e.metric for name, e in reference.items() if e.metric is not None}


class BenchRow(BaseModel):
    """One line of the comparison against published values."""

    instance: str
    algorithm: AlgorithmId
    cut: Optional[float] = None
    expected: Optional[float] = None
    match: Optional[bool] = None
    within_tol: Optional[bool] = None
    gate: bool = False
    rank: Optional[int] = None
    time: Optional[float] = None
    note: str = ""


def _ranks(records: list[BatchRecord]) -> dict[tuple[str, AlgorithmId], int]:
    """Competition ranking of the heuristic algorithms per instance, best cut first."""
    by_instance: dict[str, list[tuple[float, AlgorithmId]]] = {}
    for r in records:
        if r.report is not None and r.algorithm_id is not AlgorithmId.ORACLE:
            by_instance.setdefault(r.instance, []).append((r.report.cut_weight, r.algorithm_id))
    ranks = {}
    for instance, cuts in by_instance.items():
        for cut, alg in cuts:
            ranks[(instance, alg)] = 1 + sum(1 for other, _ in cuts if other > cut)
    return ranks


def compare_to_reference(
    records: list[BatchRecord], reference: dict[str, ReferenceEntry]
) -> list[BenchRow]:
    ranks = _ranks(records)
    rows = []
    for r in records:
        entry = reference.get(r.instance)
        row = BenchRow(
            instance=r.instance,
            algorithm=r.algorithm_id,
            gate=entry.gate if entry else False,
            expected=entry.expected_cut if entry else None,
            rank=ranks.get((r.instance, r.algorithm_id)),
        )
        if r.report is None:
            row.note = f"error: {r.error}"
        else:
            row.cut = r.report.cut_weight
            row.time = r.report.wall_time
            if entry is None:
                logger.warning("no reference value for %s", r.instance)
                row.note = "no reference"
            else:
                row.match = abs(row.cut - entry.expected_cut) < MATCH_TOLERANCE
                if entry.rel_tol is not None:
                    row.within_tol = row.cut >= entry.expected_cut * (1.0 - entry.rel_tol)
        rows.append(row)
    return rows


def failed_gates(rows: list[BenchRow]) -> list[str]:
    """Gated instances where no algorithm reproduced the published cut."""
    gated: dict[str, bool] = {}
    for row in rows:
        if row.gate:
            gated[row.instance] = gated.get(row.instance, False) or bool(row.match)
    return sorted(name for name, ok in gated.items() if not ok)


def flatten_record(record: BatchRecord, timing: bool = False) -> dict[str, Any]:
    """One flat row per (instance, algorithm) with the policy echo appended."""
    row: dict[str, Any] = {"instance": record.instance, "algorithm": record.algorithm_id.value}
    report = record.report
    if report is None:
        row.update(error=record.error, exit_code=record.exit_code)
        return row
    row.update(
        cut=report.solution.cut_weight,
        primal_value=report.solution.primal_value,
        certified=report.certified_global,
        reasons=" ".join(report.certificate_reasons),
        iterations=report.iterations_total,
        reductions=report.reductions,
        compensation_passes=report.compensation_passes,
        stop_reason=report.stop_reason or "",
        linear_magnitude=report.linear_magnitude,
        pivot=report.solution.pivot,
        y="".join("1" if v > 0 else "0" for v in report.solution.y),
    )
    if timing:
        row["time"] = round(report.wall_time, 6)
    for key, value in report.policy.items():
        if isinstance(value, list):
            value = " ".join(repr(v) for v in value)
        row[f"policy.{key}"] = value
    return row


def write_json(records: Iterable[BatchRecord], stream: TextIO) -> None:
    json.dump([r.model_dump(mode="json") for r in records], stream, indent=2)
    stream.write("\n")


def read_json(text: str) -> list[BatchRecord]:
    """Re-read a report written by write_json."""
    return [BatchRecord.model_validate(item) for item in json.loads(text)]


def write_csv(rows: list[dict[str, Any]], stream: TextIO) -> None:
    fieldnames: list[str] = []
    for row in rows:
        fieldnames.extend(k for k in row if k not in fieldnames)
    writer = csv.DictWriter(stream, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.0f}" if value.is_integer() else f"{value:.3f}"
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def format_table(rows: list[dict[str, Any]], columns: Optional[list[str]] = None) -> str:
    """Fixed-width human table."""
    if not rows:
        return "(no results)"
    columns = columns or list(rows[0])
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(line[i]) for line in cells)) for i, c in enumerate(columns)]
    out = io.StringIO()
    out.write("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
    out.write("  ".join("-" * w for w in widths) + "\n")
    for line in cells:
        out.write("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip() + "\n")
    return out.getvalue()


SOLVE_COLUMNS = ["instance", "algorithm", "cut", "certified", "iterations", "reductions", "error"]
BENCH_COLUMNS = [
    "instance", "algorithm", "cut", "expected", "match", "within_tol", "rank", "time", "note"
]


def render(
    rows: list[dict[str, Any]],
    fmt: OutputFormat,
    records: Optional[list[BatchRecord]] = None,
    columns: Optional[list[str]] = None,
) -> str:
    """Report text in ``fmt``; JSON needs the full records."""
    if fmt is OutputFormat.JSON:
        out = io.StringIO()
        if records is not None:
            write_json(records, out)
        else:
            json.dump(rows, out, indent=2)
            out.write("\n")
        return out.getvalue()
    if fmt is OutputFormat.CSV:
        out = io.StringIO()
        write_csv(rows, out)
        return out.getvalue()
    return format_table(rows, columns)
