"""Inequalities command: the line corollary, the alpha = 1 laws and the periodic constants."""

from typing import Any, Dict, List

from fraclab.core.errors import FracLabError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import admissible_family, line_bump
from fraclab.inequalities.alpha_one import alpha1_weighted_identity
from fraclab.inequalities.bounds import c1_report, c2_c3_bounds
from fraclab.inequalities.maincoro import ccfi_ratio, maincoro_check
from fraclab.inequalities.positivity import g0_positivity_scan
from fraclab.tools.base import BaseCommand, CommandResult
from fraclab.utils.xlogger import logger


def _line_grid(params) -> Grid:
    if params.domain == "line":
        return Grid.from_params(params)
    return Grid.line()


class InequalitiesCommand(BaseCommand):
    """Evaluate both sides of every inequality on the admissible family and tabulate C1, C2, C3."""

    category = "inequalities"

    def __init__(self):
        super().__init__()
        self.name = "inequalities"

    def execute(self, config, out_dir: str) -> CommandResult:
        try:
            opts = config.inequalities
            grid = _line_grid(config.params)
            failures: List[str] = []
            out: Dict[str, Any] = {"maincoro": [], "positivity": [], "ccfi": [], "c1": [], "c2_c3": []}

            family = [Field.from_profile(grid, p) for p in admissible_family(opts.family_size, config.seed)]
            for beta in opts.betas:
                worst = None
                for u in family:
                    report = maincoro_check(u, beta)
                    out["maincoro"].append({"beta": beta, "profile": u.profile.name, **report.model_dump()})
                    worst = report.margin if worst is None else min(worst, report.margin)
                    if not report.passed:
                        failures.append(f"maincoro beta={beta:g} {u.profile.name}: margin {report.margin:.3e}")
                logger.info(f"maincoro beta={beta:g}: worst margin {worst:.3e}", category=self.category)

                scan = g0_positivity_scan(beta)
                out["positivity"].append(scan)
                if not scan.passed:
                    failures.append(f"G0 positivity beta={beta:g}")

            bump = Field.from_profile(grid, line_bump(1, 2))
            identity = alpha1_weighted_identity(bump)
            out["alpha1_weighted_identity"] = identity
            if not identity.passed:
                failures.append(f"alpha=1 weighted identity: margin {identity.margin:.3e}")
            for delta in opts.betas:
                out["ccfi"].append(ccfi_ratio(bump, delta))

            for alpha in opts.c1_alphas:
                report = c1_report(alpha)
                out["c1"].append(report)
                if not (report.agree and report.c1 > 0.0):
                    failures.append(f"C1 alpha={alpha:g}: {report.c1:.3e}, routes agree={report.agree}")
            for alpha in opts.bound_alphas:
                try:
                    c2, c3 = c2_c3_bounds(alpha, opts.epsilon_holder)
                    out["c2_c3"].append({"alpha": alpha, "c2": c2, "c3": c3})
                except FracLabError as e:
                    failures.append(f"C2/C3 alpha={alpha:g}: {e}")

            artifacts: List[str] = []
            self.emit(out_dir, "inequalities.json", out, artifacts)
            return self.format_result({"maincoro_checks": len(out["maincoro"]), "failed": len(failures)},
                                      failures=failures, artifacts=artifacts)
        except Exception as e:
            return self.handle_error(e)
