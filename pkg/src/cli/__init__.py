"""Command-line interface"""

from .main import build_parser, load_matrices, run, sweep_rows

__all__ = ["build_parser", "load_matrices", "run", "sweep_rows"]
