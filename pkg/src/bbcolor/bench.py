"""Benchmark harness: verified colorings, timing scaling, figures.

``run_bench`` generates a seeded corpus, times the chosen algorithm
(median of ``repeats`` runs), verifies every coloring before recording
it, and fits the log-log slope of time against n.  ``write_report``
renders the delimited per-instance table, the JSON summary, and the
matplotlib figures next to each other in the output directory.
"""

from __future__ import annotations

import csv
import json
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .coloring import (
    color_best,
    color_direct,
    color_via_decomposition,
    lower_bound,
    verify_backbone_coloring,
)
from .errors import BenchVerificationError
from .generators import DEFAULT_SEED, gen_random_tree

__all__ = ["BenchConfig", "BenchRecord", "BenchReport", "run_bench", "write_report"]

_ALGOS = {
    "direct": color_direct,
    "rby": color_via_decomposition,
    "best": color_best,
}


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...]
    per_size: int = 1
    gap_rule: str = "n/2"  # "n/2", "n/4", "n", or a literal integer string
    algo: str = "best"
    seed: int = DEFAULT_SEED
    repeats: int = 3
    max_degree: int | None = None

    @staticmethod
    def from_json_dict(data: dict) -> "BenchConfig":
        return BenchConfig(
            sizes=tuple(int(x) for x in data.get("sizes", ())),
            per_size=int(data.get("per_size", 1)),
            gap_rule=str(data.get("lambda", "n/2")),
            algo=str(data.get("algo", "best")),
            seed=int(data.get("seed", DEFAULT_SEED)),
            repeats=int(data.get("repeats", 3)),
            max_degree=(int(data["max_degree"]) if data.get("max_degree") else None),
        )

    def gap_for(self, n: int) -> int:
        rule = self.gap_rule
        if rule == "n/2":
            return max(2, n // 2)
        if rule == "n/4":
            return max(2, n // 4)
        if rule == "n":
            return max(2, n)
        return max(2, int(rule))


@dataclass(frozen=True)
class BenchRecord:
    n: int
    max_degree: int
    min_gap: int
    algo: str
    max_color: int
    lower_bound: int
    seconds: float

    def to_row(self) -> list:
        return [
            self.n,
            self.max_degree,
            self.min_gap,
            self.algo,
            self.max_color,
            self.lower_bound,
            f"{self.seconds:.6f}",
        ]


@dataclass(frozen=True)
class BenchReport:
    algo: str
    records: tuple[BenchRecord, ...]
    slope: float | None
    median_seconds: tuple[tuple[int, float], ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "algo": self.algo,
            "slope": self.slope,
            "median_seconds": [[n, s] for n, s in self.median_seconds],
            "records": [
                {
                    "n": r.n,
                    "max_degree": r.max_degree,
                    "lambda": r.min_gap,
                    "algo": r.algo,
                    "max_color": r.max_color,
                    "lower_bound": r.lower_bound,
                    "seconds": r.seconds,
                }
                for r in self.records
            ],
        }


def run_bench(config: BenchConfig) -> BenchReport:
    """Time the configured algorithm over the corpus, verifying everything."""
    fn = _ALGOS.get(config.algo)
    if fn is None:
        raise ValueError(f"unknown algorithm {config.algo!r}, pick one of {sorted(_ALGOS)}")
    records: list[BenchRecord] = []
    instance = 0
    for n in config.sizes:
        for i in range(config.per_size):
            tree = gen_random_tree(n, config.max_degree, seed=config.seed + instance)
            instance += 1
            gap = config.gap_for(n)
            times = []
            coloring = None
            for _ in range(max(1, config.repeats)):
                t0 = time.perf_counter()
                coloring = fn(tree, gap)
                times.append(time.perf_counter() - t0)
            report = verify_backbone_coloring(tree, gap, coloring)
            if not report.ok:
                raise BenchVerificationError(
                    f"n={n} seed={config.seed + instance - 1}: {report.violations[:3]}"
                )
            records.append(
                BenchRecord(
                    n=n,
                    max_degree=tree.max_degree,
                    min_gap=gap,
                    algo=config.algo,
                    max_color=coloring.max_color,
                    lower_bound=lower_bound(tree, gap),
                    seconds=statistics.median(times),
                )
            )
    records.sort(key=lambda r: (r.n, r.min_gap))
    medians = []
    for n in sorted(set(r.n for r in records)):
        medians.append((n, statistics.median(r.seconds for r in records if r.n == n)))
    slope = None
    if len(medians) >= 2:
        xs = np.log2([n for n, _ in medians])
        ys = np.log2([max(s, 1e-9) for _, s in medians])
        slope = float(np.polyfit(xs, ys, 1)[0])
    return BenchReport(
        algo=config.algo,
        records=tuple(records),
        slope=slope,
        median_seconds=tuple(medians),
    )


def write_report(report: BenchReport, outdir: str | Path) -> dict[str, str]:
    """Write bench.csv, bench.json, and the figures into ``outdir``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}

    csv_path = out / "bench.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "max_degree", "lambda", "algo", "max_color", "lower_bound", "seconds"])
        for rec in report.records:
            writer.writerow(rec.to_row())
    paths["csv"] = str(csv_path)

    json_path = out / "bench.json"
    json_path.write_text(json.dumps(report.to_json_dict(), indent=2) + "\n")
    paths["json"] = str(json_path)

    if report.records:
        ns = [n for n, _ in report.median_seconds]
        secs = [s for _, s in report.median_seconds]
        fig, ax = plt.subplots(figsize=(6, 4))
        ax.loglog(ns, secs, "o-", base=2, label=f"{report.algo} (median)")
        if report.slope is not None and len(ns) >= 2:
            anchor = secs[0]
            ax.loglog(
                ns,
                [anchor * (n / ns[0]) for n in ns],
                "--",
                base=2,
                color="gray",
                label="linear reference",
            )
            ax.set_title(f"wall time vs n (log-log slope {report.slope:.2f})")
        ax.set_xlabel("n")
        ax.set_ylabel("seconds")
        ax.legend()
        fig.tight_layout()
        timing_path = out / "timing.png"
        fig.savefig(timing_path, dpi=120)
        plt.close(fig)
        paths["timing"] = str(timing_path)

        fig, ax = plt.subplots(figsize=(6, 4))
        ns_all = [r.n for r in report.records]
        ax.plot(ns_all, [r.max_color for r in report.records], "o", label="max color")
        ax.plot(ns_all, [r.lower_bound for r in report.records], "x", label="lower bound")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("n")
        ax.set_ylabel("colors")
        ax.set_title(f"colors used by {report.algo}")
        ax.legend()
        fig.tight_layout()
        colors_path = out / "colors.png"
        fig.savefig(colors_path, dpi=120)
        plt.close(fig)
        paths["colors"] = str(colors_path)
    return paths
