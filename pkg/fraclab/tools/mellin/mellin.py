"""Mellin command: multiplier tables, sign and decay certificates, golden values."""

import os
from typing import List

import numpy as np

from fraclab.config.settings import settings
from fraclab.mellin.certificates import compare_golden, decay_certificate, sign_certificate
from fraclab.mellin.multipliers import build_table
from fraclab.tools.base import BaseCommand, CommandResult
from fraclab.utils.xlogger import logger

DECAY_RANGE = (5.0, 200.0)


class MellinCommand(BaseCommand):
    """Tabulate B0, A0 and A; certify B0 >= 0, A0 <= 0 and the decay rates."""

    category = "mellin"

    def __init__(self):
        super().__init__()
        self.name = "mellin"

    def execute(self, config, out_dir: str) -> CommandResult:
        try:
            opts = config.mellin
            failures: List[str] = []
            artifacts: List[str] = []
            tables, certificates = [], []

            sign_grid = np.linspace(-opts.lambda_half_width, opts.lambda_half_width, opts.n_lambda)
            for e in opts.exponents:
                for kind, sign in (("B0", 1), ("A0", -1)):
                    table = build_table(kind, sign_grid, 0.0, e)
                    cert = sign_certificate(table, sign)
                    tables.append(table.to_record())
                    certificates.append({"type": "sign", **cert.model_dump()})
                    if not cert.passed:
                        failures.append(f"{kind} sign at exponent {e:g}: worst {cert.worst:.3e}")

            decay_grid = np.geomspace(*DECAY_RANGE, opts.n_decay)
            for a in opts.decay_alphas:
                a0 = build_table("A0", decay_grid, 0.0, a)
                full = build_table("A", decay_grid, opts.epsilon, a)
                tables.extend([a0.to_record(), full.to_record()])
                for table, expected, part in ((a0, a - 2.0, "abs"), (full, a - 1.0, "im"), (full, a - 2.0, "re")):
                    cert = decay_certificate(table, expected, part)
                    certificates.append({"type": "decay", "alpha": a, **cert.to_record()})
                    if not cert.passed:
                        failures.append(f"{table.kind} {part} decay at alpha {a:g}: "
                                        f"exponent {cert.exponent_fit:.3f} vs {expected:.3f}")

            golden = None
            if opts.golden:
                golden = compare_golden(os.path.join(settings.GOLDEN_PATH, "golden_values.json"))
                if not golden.passed:
                    failures.append(f"golden values drifted: {', '.join(golden.mismatches)}")

            self.emit(out_dir, "mellin_tables.json", tables, artifacts)
            self.emit(out_dir, "mellin_certificates.json",
                      {"certificates": certificates, "golden": golden}, artifacts)
            logger.info(f"Mellin command: {len(tables)} tables, {len(failures)} failures", category=self.category)
            return self.format_result({"tables": len(tables), "certificates": len(certificates)},
                                      failures=failures, artifacts=artifacts)
        except Exception as e:
            return self.handle_error(e)
