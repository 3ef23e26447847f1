"""CSV export and import for experiment results.

Three artifact kinds live in an output directory:

* ``errors_<family>.csv``: the four error statistics per optimizer and
  change type, in 2-digit scientific notation.
* ``raw_<family>_<type>_<optimizer>.csv``: every window close of every run
  at full precision, enough to recompute scores exactly.
* ``scores.csv``: per-case scores plus one weighted overall row per
  optimizer.

All files are UTF-8 with LF line endings, written deterministically.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Mapping

import numpy as np

from dynopt.errors import ConfigError
from dynopt.harness import stats
from dynopt.harness.cases import (
    CHANGE_LABELS,
    WEIGHT_TABLES,
    all_cases,
)
from dynopt.harness.experiment import CaseResult, ExperimentResult
from dynopt.overrides import parse_config_text

STAT_ROWS = ("Avg.Best", "Avg.Worst", "Avg.Mean", "STD")

_TAG_TO_FUNCTION = {case.file_tag: case.function_id for case in all_cases()}
_RAW_NAME = re.compile(
    r"^raw_(?P<tag>F1_10|F1_50|F[2-6])_(?P<change>T[1-7])_(?P<alg>[a-z][a-z0-9_]*)\.csv$"
)


def format_error(value: float) -> str:
    """Scientific notation with two fractional digits, e.g. 3.36E-04."""
    return f"{value:.2E}"


def _write_lines(path: Path, lines: list[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def errors_filename(function_id: str) -> str:
    tag = function_id.replace("(", "_").replace(")", "")
    return f"errors_{tag}.csv"


def raw_filename(function_id: str, change_type: str, optimizer_id: str) -> str:
    tag = function_id.replace("(", "_").replace(")", "")
    return f"raw_{tag}_{change_type}_{optimizer_id}.csv"


def trajectory_filename(
    function_id: str, change_type: str, optimizer_id: str, run_index: int
) -> str:
    tag = function_id.replace("(", "_").replace(")", "")
    return f"trajectory_{tag}_{change_type}_{optimizer_id}_run{run_index}.csv"


def write_errors_tables(out_dir: Path, result: ExperimentResult) -> list[Path]:
    """One statistics table per landscape family that was run."""
    out_dir = Path(out_dir)
    function_ids: list[str] = []
    for case_id in result.case_ids():
        fid = case_id.split(":")[0]
        if fid not in function_ids:
            function_ids.append(fid)
    written = []
    for fid in function_ids:
        lines = ["algorithm,stat," + ",".join(CHANGE_LABELS)]
        for optimizer_id in result.config.optimizers:
            rows = {stat: [] for stat in STAT_ROWS}
            for label in CHANGE_LABELS:
                cell = result.results.get((f"{fid}:{label}", optimizer_id))
                values = cell.stat_rows() if cell else None
                for stat in STAT_ROWS:
                    rows[stat].append(format_error(values[stat]) if values else "")
            for stat in STAT_ROWS:
                lines.append(f"{optimizer_id},{stat}," + ",".join(rows[stat]))
        written.append(_write_lines(out_dir / errors_filename(fid), lines))
    return written


def write_raw_table(out_dir: Path, case_result: CaseResult) -> Path:
    """Full-precision window records for one (case, optimizer) cell."""
    runs, changes = case_result.errors.shape
    s_count = case_result.samples.shape[2]
    header = "run,change,E_last,r_last," + ",".join(
        f"r_{s}" for s in range(1, s_count + 1)
    )
    lines = [header]
    for run_index in range(runs):
        for change_index in range(changes):
            cells = [
                str(run_index),
                str(change_index),
                repr(float(case_result.errors[run_index, change_index])),
                repr(float(case_result.r_last[run_index, change_index])),
            ]
            cells.extend(
                repr(float(v)) for v in case_result.samples[run_index, change_index]
            )
            lines.append(",".join(cells))
    case = case_result.case
    path = Path(out_dir) / raw_filename(
        case.function_id, case.change_type, case_result.optimizer_id
    )
    return _write_lines(path, lines)


def write_raw_tables(out_dir: Path, result: ExperimentResult) -> list[Path]:
    return [
        write_raw_table(out_dir, case_result)
        for case_result in result.results.values()
    ]


def write_trajectories(out_dir: Path, result: ExperimentResult) -> list[Path]:
    """Serialized per-run trajectories; only present when tracing was on."""
    written = []
    for case_result in result.results.values():
        if not case_result.trajectories:
            continue
        case = case_result.case
        for run_index, trajectory in enumerate(case_result.trajectories):
            path = Path(out_dir) / trajectory_filename(
                case.function_id, case.change_type,
                case_result.optimizer_id, run_index,
            )
            path.write_text(trajectory.serialize(), encoding="utf-8")
            written.append(path)
    return written


def write_scores(
    out_dir: Path,
    scores: Mapping[str, Mapping[str, float]],
    overall: Mapping[str, float],
) -> Path:
    """Per-case scores and one OVERALL row per optimizer."""
    lines = ["case,optimizer,score"]
    case_order = [c.case_id for c in all_cases()]
    present = sorted(
        {case_id for per_case in scores.values() for case_id in per_case},
        key=case_order.index,
    )
    for case_id in present:
        for optimizer_id, per_case in scores.items():
            if case_id in per_case:
                lines.append(f"{case_id},{optimizer_id},{per_case[case_id]:.6f}")
    for optimizer_id, value in overall.items():
        lines.append(f"OVERALL,{optimizer_id},{value:.4f}")
    return _write_lines(Path(out_dir) / "scores.csv", lines)


def scan_raw_files(out_dir: Path) -> list[tuple[str, str, str, Path]]:
    """Find raw tables, as (function_id, change_type, optimizer_id, path)."""
    found = []
    for path in sorted(Path(out_dir).iterdir()):
        match = _RAW_NAME.match(path.name)
        if not match:
            continue
        function_id = _TAG_TO_FUNCTION[match.group("tag")]
        found.append((function_id, match.group("change"), match.group("alg"), path))
    return found


def read_raw_table(path: Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read one raw table back into (errors, r_last, samples) arrays."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line]
    if not lines:
        raise ConfigError(f"raw table {path} is empty")
    header = lines[0].split(",")
    if header[:4] != ["run", "change", "E_last", "r_last"]:
        raise ConfigError(f"raw table {path} has unexpected header {lines[0]!r}")
    s_count = len(header) - 4
    records: dict[tuple[int, int], tuple[float, float, list[float]]] = {}
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != 4 + s_count:
            raise ConfigError(f"raw table {path} has a ragged row: {line!r}")
        run_index, change_index = int(cells[0]), int(cells[1])
        records[(run_index, change_index)] = (
            float(cells[2]),
            float(cells[3]),
            [float(v) for v in cells[4:]],
        )
    if not records:
        raise ConfigError(f"raw table {path} has no data rows")
    runs = max(key[0] for key in records) + 1
    changes = max(key[1] for key in records) + 1
    if len(records) != runs * changes:
        raise ConfigError(f"raw table {path} is missing rows")
    errors = np.empty((runs, changes))
    r_last = np.empty((runs, changes))
    samples = np.empty((runs, changes, s_count))
    for (run_index, change_index), (err, ratio, row) in records.items():
        errors[run_index, change_index] = err
        r_last[run_index, change_index] = ratio
        samples[run_index, change_index] = row
    return errors, r_last, samples


def optimizer_order(optimizer_ids) -> list[str]:
    """Known optimizers in their registry order, then any others by name."""
    from dynopt.optimizers.runner import OPTIMIZER_IDS

    def key(opt: str):
        try:
            return (0, OPTIMIZER_IDS.index(opt), opt)
        except ValueError:
            return (1, 0, opt)

    return sorted(optimizer_ids, key=key)


def recompute_scores(out_dir: Path) -> dict[str, dict[str, float]]:
    """Rebuild per-case scores from the raw tables in a directory."""
    found = scan_raw_files(out_dir)
    if not found:
        raise ConfigError(f"no raw tables found in {out_dir}")
    grouped: dict[str, dict[str, float]] = {}
    for function_id, change_type, optimizer_id, path in found:
        _, r_last, samples = read_raw_table(path)
        case_id = f"{function_id}:{change_type}"
        grouped.setdefault(optimizer_id, {})[case_id] = stats.case_score(
            r_last, samples
        )
    return {opt: grouped[opt] for opt in optimizer_order(grouped)}


def load_weight_table(spec: str) -> dict[str, float]:
    """Resolve a weight table by name (uniform, official) or from a file."""
    if spec in WEIGHT_TABLES:
        table = WEIGHT_TABLES[spec]()
    else:
        path = Path(spec)
        if not path.is_file():
            raise ConfigError(
                f"weights must be one of {', '.join(sorted(WEIGHT_TABLES))} "
                f"or a file path, got {spec!r}"
            )
        pairs = parse_config_text(path.read_text(encoding="utf-8"))
        try:
            table = {key: float(value) for key, value in pairs.items()}
        except ValueError as exc:
            raise ConfigError(f"bad weight value in {spec}: {exc}") from exc
    return stats.validate_weight_table(table, [c.case_id for c in all_cases()])
