"""Base classes and utilities for FracLab commands."""

import os
from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from fraclab.core.errors import FracLabError
from fraclab.utils.helpers import write_json
from fraclab.utils.xlogger import logger


class CommandResult(BaseModel):
    """Model for command execution results."""
    success: bool
    result: Any = None
    error: Optional[str] = None
    failures: List[str] = []
    artifacts: List[str] = []
    metadata: Dict[str, Any] = {}


class BaseCommand(ABC):
    """Abstract base class for all commands."""

    category = "cli"

    def __init__(self):
        self.name: str = self.__class__.__name__
        self.description: str = (self.__doc__ or "No description available").strip()

    @abstractmethod
    def execute(self, config, out_dir: str) -> CommandResult:
        """Run the command for one experiment configuration."""
        pass

    def validate_input(self, config) -> bool:
        """Validate the configuration beyond its schema."""
        return True

    def format_result(self, result: Any, failures: Optional[List[str]] = None,
                      artifacts: Optional[List[str]] = None, **metadata) -> CommandResult:
        """Format the execution result; any failure marks the run unsuccessful."""
        failures = failures or []
        return CommandResult(
            success=not failures,
            result=result,
            failures=failures,
            artifacts=artifacts or [],
            metadata=metadata,
        )

    def handle_error(self, error: Exception) -> CommandResult:
        """Handle execution errors."""
        kind = type(error).__name__
        if isinstance(error, FracLabError):
            logger.error(f"{self.name} failed: {kind}: {error}", category=self.category)
        else:
            logger.error(f"{self.name} crashed: {kind}: {error}", category=self.category)
        return CommandResult(
            success=False,
            result=None,
            error=f"{kind}: {error}",
        )

    def emit(self, out_dir: str, filename: str, payload: Any, artifacts: List[str]) -> str:
        """Write a JSON artifact and remember its path."""
        path = write_json(os.path.join(out_dir, filename), payload)
        artifacts.append(path)
        return path
