"""Report command: re-read every artifact of an output directory and render SVG charts."""

import glob
import os
from collections import defaultdict
from typing import Dict, List

import numpy as np

from fraclab.evolution.checkpoint import load_checkpoint
from fraclab.mellin.multipliers import MultiplierTable
from fraclab.monitor.series import MonitorSeries
from fraclab.tools.base import BaseCommand, CommandResult
from fraclab.tools.svg import line_chart, save_svg
from fraclab.utils.helpers import read_json
from fraclab.utils.xlogger import logger

MONITOR_PREFIX = "monitors_"


def monitor_charts(path: str, out_dir: str, log_scale: bool) -> List[str]:
    """Growth, functional and (alpha = 1) Lambda u(0) charts of one monitor CSV."""
    series = MonitorSeries.from_csv(path)
    tag = os.path.basename(path)[len(MONITOR_PREFIX):-len(".csv")]
    t = series.times
    written = [save_svg(os.path.join(out_dir, f"report_{tag}_max_ux.svg"),
                        line_chart({"max|u_x|": (t, series.max_ux)}, title=f"{tag}: max|u_x|",
                                   xlabel="t", ylabel="max|u_x|", log_y=log_scale))]
    if series.has("weighted_functional"):
        written.append(save_svg(os.path.join(out_dir, f"report_{tag}_functional.svg"),
                                line_chart({"functional": (t, series.functional)},
                                           title=f"{tag}: weighted functional", xlabel="t",
                                           ylabel="functional", log_y=log_scale)))
    if series.has("lambda_u0"):
        written.append(save_svg(os.path.join(out_dir, f"report_{tag}_lambda_u0.svg"),
                                line_chart({"|Lambda u(0)|": (t, np.abs(series.lambda_u0))},
                                           title=f"{tag}: |Lambda u(0,t)|", xlabel="t",
                                           ylabel="|Lambda u(0)|", log_y=log_scale)))
    return written


def multiplier_charts(path: str, out_dir: str) -> List[str]:
    """One chart per (kind, grid type): Re on symmetric grids, |value| (log) on decay grids."""
    groups: Dict[str, Dict[str, tuple]] = defaultdict(dict)
    for record in read_json(path):
        table = MultiplierTable.from_record(record)
        decay = bool(np.min(table.lambda_grid) > 0.0)
        key = f"{table.kind}_{'decay' if decay else 'sign'}"
        y = table.component("abs") if decay else table.component("re")
        groups[key][f"{table.kind} e={table.exponent:g}"] = (table.lambda_grid, y)
    written = []
    for key, curves in sorted(groups.items()):
        decay = key.endswith("decay")
        written.append(save_svg(os.path.join(out_dir, f"report_mellin_{key}.svg"),
                                line_chart(curves, title=key.replace("_", " "), xlabel="lambda",
                                           ylabel="|value|" if decay else "Re value", log_y=decay)))
    return written


class ReportCommand(BaseCommand):
    """Re-read monitor CSVs, JSON reports and checkpoints; render SVG time series and multiplier curves."""

    category = "cli"

    def __init__(self):
        super().__init__()
        self.name = "report"

    def execute(self, config, out_dir: str) -> CommandResult:
        try:
            source = config.report.input_dir or out_dir
            failures: List[str] = []
            artifacts: List[str] = []
            read = 0
            for path in sorted(glob.glob(os.path.join(source, "*"))):
                name = os.path.basename(path)
                if name.startswith("report_"):
                    continue
                try:
                    if name.startswith(MONITOR_PREFIX) and name.endswith(".csv"):
                        artifacts.extend(monitor_charts(path, out_dir, config.report.log_scale))
                    elif name == "mellin_tables.json":
                        artifacts.extend(multiplier_charts(path, out_dir))
                    elif name.endswith(".json"):
                        read_json(path)
                    elif name.endswith(".npz"):
                        load_checkpoint(path)
                    else:
                        continue
                    read += 1
                except Exception as e:
                    failures.append(f"{name}: {type(e).__name__}: {e}")
            logger.info(f"Report over {source}: {read} files, {len(artifacts)} charts", category=self.category)
            return self.format_result({"files_read": read, "charts": len(artifacts)},
                                      failures=failures, artifacts=artifacts, source=source)
        except Exception as e:
            return self.handle_error(e)
