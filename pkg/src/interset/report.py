"""Population statistics over per-developer scores, plus plot-ready files.

Undefined scores never enter a statistic; they are counted and reported
separately. Quartiles use linear interpolation between closest ranks (the
"type 7" convention). The histogram uses twenty fixed bins
[0, 0.05), ..., [0.95, 1.0], the last bin closed on the right.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .metrics import METRICS

logger = logging.getLogger(__name__)

HIST_EDGES = np.arange(21) / 20.0
DEFAULT_THRESHOLDS = (0.5,)


@dataclass(frozen=True)
class DistributionSummary:
    metric: str
    n_defined: int
    n_undefined: int
    mean: float | None
    fraction_zero: float | None
    fraction_ge: dict[float, float]  # empty when nothing is defined
    histogram: tuple[int, ...]  # twenty counts, summing to n_defined
    five_number: tuple[float, float, float, float, float] | None

    def to_json_dict(self) -> dict:
        five = None
        if self.five_number is not None:
            lo, q1, med, q3, hi = self.five_number
            five = {"min": lo, "q1": q1, "median": med, "q3": q3, "max": hi}
        return {
            "metric": self.metric,
            "n_defined": self.n_defined,
            "n_undefined": self.n_undefined,
            "mean": self.mean,
            "fraction_zero": self.fraction_zero,
            "fraction_ge": {f"{t:g}": f for t, f in sorted(self.fraction_ge.items())},
            "histogram": list(self.histogram),
            "five_number": five,
        }


def summarize(metric: str, values, thresholds=DEFAULT_THRESHOLDS) -> DistributionSummary:
    """Reduce per-developer values (None = undefined) to a DistributionSummary."""
    defined = [float(v) for v in values if v is not None]
    n_undefined = sum(1 for v in values if v is None)
    n = len(defined)
    if n == 0:
        return DistributionSummary(
            metric=metric,
            n_defined=0,
            n_undefined=n_undefined,
            mean=None,
            fraction_zero=None,
            fraction_ge={},
            histogram=(0,) * 20,
            five_number=None,
        )
    arr = np.clip(np.asarray(defined, dtype=np.float64), 0.0, 1.0)
    counts, _ = np.histogram(arr, bins=HIST_EDGES)
    q = np.percentile(arr, [0.0, 25.0, 50.0, 75.0, 100.0])
    return DistributionSummary(
        metric=metric,
        n_defined=n,
        n_undefined=n_undefined,
        mean=math.fsum(defined) / n,
        fraction_zero=sum(1 for v in defined if v == 0.0) / n,
        fraction_ge={t: sum(1 for v in defined if v >= t) / n for t in thresholds},
        histogram=tuple(int(c) for c in counts),
        five_number=tuple(float(x) for x in q),
    )


def read_scores_csv(path: Path | str) -> dict[str, dict[str, float | None]]:
    """metric -> dev_id -> value (None for "undefined") from a scores file."""
    path = Path(path)
    out: dict[str, dict[str, float | None]] = {}
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"dev_id", "metric", "value"} <= set(reader.fieldnames):
            raise ValueError(f"{path.name}: missing dev_id/metric/value columns")
        for row in reader:
            value = row["value"]
            out.setdefault(row["metric"], {})[row["dev_id"]] = (
                None if value == "undefined" else float(value)
            )
    return out


def metric_order(names) -> list[str]:
    """Canonical metrics first, anything else alphabetically after."""
    known = [m for m in METRICS if m in names]
    extra = sorted(set(names) - set(METRICS))
    return known + extra


def summarize_scores(
    table: dict[str, dict[str, float | None]], thresholds=DEFAULT_THRESHOLDS
) -> list[DistributionSummary]:
    return [
        summarize(metric, list(table[metric].values()), thresholds)
        for metric in metric_order(table)
    ]


def metric_slug(metric: str) -> str:
    # ':' is awkward in filenames on some systems
    return metric.replace(":", "_")


def write_summary_json(summaries, path: Path | str) -> None:
    path = Path(path)
    payload = {s.metric: s.to_json_dict() for s in summaries}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info("wrote %s", path)


def write_plotdata(summaries, out_dir: Path | str) -> list[Path]:
    """hist_<metric>.csv always; box_<metric>.csv when a five-number exists."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for s in summaries:
        slug = metric_slug(s.metric)
        hist_path = out_dir / f"hist_{slug}.csv"
        with hist_path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("bin_low", "bin_high", "count"))
            for i, count in enumerate(s.histogram):
                writer.writerow((f"{HIST_EDGES[i]:.2f}", f"{HIST_EDGES[i + 1]:.2f}", count))
        written.append(hist_path)
        if s.five_number is None:
            continue
        box_path = out_dir / f"box_{slug}.csv"
        with box_path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("min", "q1", "median", "q3", "max"))
            writer.writerow(tuple(f"{x:.6f}" for x in s.five_number))
        written.append(box_path)
    logger.info("wrote %d plotdata files to %s", len(written), out_dir)
    return written
