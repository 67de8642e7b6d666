"""Batch front door: run manifests, subcommands and reports."""

from .commands import (
    COMMANDS,
    cmd_amalgamate,
    cmd_check,
    cmd_enumerate,
    cmd_fraisse,
    cmd_limit,
    cmd_metric,
    cmd_replay,
)
from .manifest import RunManifest, load_manifest, parse_element, parse_manifest, parse_number
from .report import ExitCode, Report, error_report

__all__ = [
    "COMMANDS",
    "ExitCode",
    "Report",
    "RunManifest",
    "cmd_amalgamate",
    "cmd_check",
    "cmd_enumerate",
    "cmd_fraisse",
    "cmd_limit",
    "cmd_metric",
    "cmd_replay",
    "error_report",
    "load_manifest",
    "parse_element",
    "parse_manifest",
    "parse_number",
]
