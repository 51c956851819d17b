"""
Shared Services Module

Provides:
- command_service: command registry behind the CLI and the HTTP router
- oracle_suite: randomized property suites with independent oracles
"""

from shared.services.command_service import list_commands, run_command

__all__ = ["list_commands", "run_command"]
