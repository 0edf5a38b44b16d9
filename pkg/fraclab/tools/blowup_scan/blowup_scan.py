"""Blow-up scan: a (alpha, amplitude) sweep of evolve cells with a summary table."""

import csv
import itertools
import os
from typing import Dict, List, Optional

from fraclab.core.params import Params
from fraclab.services.runner import run_sweep
from fraclab.tools.base import BaseCommand, CommandResult
from fraclab.tools.evolve.evolve import run_cell
from fraclab.utils.helpers import cell_tag

SUMMARY_COLUMNS = ("alpha", "amplitude", "stop_reason", "detected", "t_estimate", "growth_factor",
                   "ode_margin_min", "t_final")


def _cell_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def empirical_thresholds(rows: List[Dict]) -> Dict[str, Optional[float]]:
    """Smallest amplitude with detected blow-up per alpha (None when no cell blew up)."""
    out: Dict[str, Optional[float]] = {}
    for row in rows:
        key = f"{row['alpha']:g}"
        out.setdefault(key, None)
        if row.get("detected"):
            current = out[key]
            out[key] = row["amplitude"] if current is None else min(current, row["amplitude"])
    return out


class BlowupScanCommand(BaseCommand):
    """Sweep evolve runs over alpha and amplitude; locate the empirical blow-up threshold."""

    category = "runner"

    def __init__(self, threads: Optional[int] = None):
        super().__init__()
        self.name = "blowup-scan"
        self.threads = threads

    def execute(self, config, out_dir: str) -> CommandResult:
        try:
            sweep = config.sweep
            cells = list(itertools.product(sweep.alphas, sweep.amplitudes))

            def work(cell):
                alpha, amplitude = cell
                params = Params.model_validate({**config.params.model_dump(), "alpha": alpha})
                return run_cell(config, params, amplitude, out_dir, cell_tag(alpha, amplitude))

            results = run_sweep(cells, work, self.threads)
            rows, failures, artifacts = [], [], []
            for (alpha, amplitude), result in zip(cells, results):
                if "error" in result:
                    failures.append(f"{cell_tag(alpha, amplitude)}: {result['error']}")
                    continue
                failures.extend(result["failures"])
                artifacts.extend(result["artifacts"])
                rows.append({"alpha": alpha, "amplitude": amplitude, "t_final": result["t_final"],
                             **result["report"]})

            path = os.path.join(out_dir, "blowup_scan.csv")
            os.makedirs(out_dir, exist_ok=True)
            with open(path, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(SUMMARY_COLUMNS)
                for row in rows:
                    writer.writerow([_cell_value(row.get(name)) for name in SUMMARY_COLUMNS])
            artifacts.append(path)
            thresholds = empirical_thresholds(rows)
            self.emit(out_dir, "blowup_scan.json", {"cells": rows, "thresholds": thresholds}, artifacts)
            return self.format_result({"cells": len(rows), "thresholds": thresholds},
                                      failures=failures, artifacts=artifacts)
        except Exception as e:
            return self.handle_error(e)
