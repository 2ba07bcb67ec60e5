"""Command-line surface: problem files in, deterministic reports out."""

from .main import build_parser, main
from .problem import ProblemFile, Query, format_problem, parse_problem, parse_window
from .report import SCHEMA, Options, exit_code, render_json, render_text, run

__all__ = [
    "build_parser",
    "main",
    "ProblemFile",
    "Query",
    "format_problem",
    "parse_problem",
    "parse_window",
    "SCHEMA",
    "Options",
    "exit_code",
    "render_json",
    "render_text",
    "run",
]
