"""
CLI module for hpzo.
Provides the command-line interface for schedules, bounds, single runs and experiments.
"""

from .main import build_parser, main, setup_logging

__all__ = ["build_parser", "main", "setup_logging"]
