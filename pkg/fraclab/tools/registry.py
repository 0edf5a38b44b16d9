"""
Command management module for FracLab.
This module handles the registration and lookup of CLI commands.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from fraclab.tools import register_built_in_commands
from fraclab.tools.base import BaseCommand
from fraclab.utils.xlogger import logger


class Command(BaseModel):
    """
    Command model representing one experiment type.

    Attributes:
        name: Unique identifier used on the command line
        description: Human-readable description of the command
        command: Command object whose execute() runs the experiment
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    description: str
    command: BaseCommand


class CommandRegistry:
    """
    Registry class for managing available commands.
    Handles command registration, retrieval, and listing.
    """

    def __init__(self):
        """Initialize an empty command registry and register the built-in commands."""
        self._commands: Dict[str, Command] = {}
        register_built_in_commands(self)

    def register(self, name: str, description: str, command: BaseCommand) -> None:
        """
        Register a new command in the registry.

        Note:
            - Command names must be unique
            - Overwrites existing command if name already exists
        """
        self._commands[name] = Command(name=name, description=description, command=command)
        logger.debug(f"Registered command: {name}", category="cli")

    def get_command(self, name: str) -> Optional[Command]:
        return self._commands.get(name)

    def list_commands(self) -> List[str]:
        return list(self._commands.keys())

    def get_command_descriptions(self) -> str:
        """One "name: description" line per registered command."""
        return "\n".join(f"{c.name}: {c.description}" for c in self._commands.values())
