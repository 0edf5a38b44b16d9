"""Built-in commands package for FracLab."""

from typing import Dict, Type
from .base import BaseCommand
from .selftest.selftest import SelftestCommand
from .mellin.mellin import MellinCommand
from .inequalities.inequalities import InequalitiesCommand
from .evolve.evolve import EvolveCommand
from .blowup_scan.blowup_scan import BlowupScanCommand
from .report.report import ReportCommand

# Command registry
BUILT_IN_COMMANDS: Dict[str, Type[BaseCommand]] = {
    "selftest": SelftestCommand,  # Operator and identity checks
    "mellin": MellinCommand,  # Multiplier tables and certificates
    "inequalities": InequalitiesCommand,  # Inequality reports
    "evolve": EvolveCommand,  # One evolution run
    "blowup-scan": BlowupScanCommand,  # (alpha, amplitude) sweep
    "report": ReportCommand,  # SVG rendering of prior output
}

def register_built_in_commands(registry) -> None:
    """Register all built-in commands with the registry."""
    for _, command_class in BUILT_IN_COMMANDS.items():
        command_instance = command_class()
        registry.register(
            name=command_instance.name,
            description=command_instance.description,
            command=command_instance
        )
