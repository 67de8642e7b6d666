"""Command-line entry point for the Cu Fraïssé engine."""

import sys
from typing import Any, Callable, Optional, Tuple

import click

from . import __version__
from .cli import COMMANDS, ExitCode, Report, cmd_replay, error_report, load_manifest
from .cli.manifest import RunManifest, parse_number
from .config import AppConfig, load_config
from .utils import get_logger
from .utils.errors import (
    BudgetExhausted,
    ConfigurationError,
    CuFraisseError,
    DiagnosticError,
    ManifestError,
)
from .utils.logger import set_level

logger = get_logger(__name__)


def _resolve(manifest: RunManifest, depth: Optional[int], bound: Optional[int], seed: Optional[int], out: Optional[str]) -> AppConfig:
    """Environment, then the manifest, then flags."""
    config = load_config()
    set_level(config.log_level)
    config = config.with_overrides(manifest.depth, manifest.bound, manifest.seed, manifest.out)
    return config.with_overrides(depth, bound, seed, out)


def _manifest(path: Optional[str], category: Optional[str], params: Tuple[str, ...]) -> RunManifest:
    manifest = load_manifest(path) if path else RunManifest()
    if category is not None:
        manifest.category = category
    for raw in params:
        key, sep, value = raw.partition("=")
        if not sep or not key:
            raise ManifestError(f"--param expects key=value, got {raw!r}")
        parsed = parse_number(value)
        manifest.params[key] = value if parsed is None else parsed
    return manifest


def _emit(report: Report, config: Optional[AppConfig]) -> None:
    click.echo(report.text(), nl=False)
    if config is not None:
        report.write(config.output.out_dir, config.output.write_sidecar)


def _run(command: str, build: Callable[[], Tuple[Report, AppConfig]]) -> None:
    """Exit 0 on pass, 1 on a failed verification, 2 on an exhausted budget, 3 on bad input."""
    config: Optional[AppConfig] = None
    try:
        report, config = build()
    except (ManifestError, ConfigurationError) as e:
        report = error_report(command, ExitCode.INPUT, str(e))
    except BudgetExhausted as e:
        report = error_report(command, ExitCode.EXHAUSTED, str(e), {"bound": e.bound, **e.detail})
    except DiagnosticError as e:
        report = error_report(command, ExitCode.FAILED, str(e), e.detail)
    except CuFraisseError as e:
        report = error_report(command, ExitCode.INPUT, str(e))
    if report.status != ExitCode.PASS:
        logger.warning(f"{command} finished with {report.verdict}", extra={"extra_fields": {"exit_code": report.exit_code}})
    _emit(report, config)
    sys.exit(report.exit_code)


def _engine_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option("--manifest", "manifest_path", type=click.Path(dir_okay=False), default=None, help="Run manifest file."),
        click.option("--category", default=None, help="Built-in category name, overriding the manifest."),
        click.option("--param", "params", multiple=True, help="key=value, overriding the manifest."),
        click.option("--depth", type=click.IntRange(min=0), default=None, help="Basis depth for checks."),
        click.option("--bound", type=click.IntRange(min=1), default=None, help="Search budget."),
        click.option("--seed", type=click.IntRange(min=0), default=None, help="Demand schedule seed."),
        click.option("--out", type=click.Path(file_okay=False), default=None, help="Report directory."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _subcommand(name: str) -> click.Command:
    run = COMMANDS[name]

    @_engine_options
    def command(manifest_path: Optional[str], category: Optional[str], params: Tuple[str, ...], depth: Optional[int], bound: Optional[int], seed: Optional[int], out: Optional[str]) -> None:
        def build() -> Tuple[Report, AppConfig]:
            manifest = _manifest(manifest_path, category, params)
            config = _resolve(manifest, depth, bound, seed, out)
            return run(manifest, config), config

        _run(name, build)

    command.__doc__ = run.__doc__
    return click.command(name=name)(command)


@click.group()
@click.version_option(version=__version__)
def cli() -> None:
    """Fraïssé limits, Cauchy limits and metrics for Cu-semigroups."""


for _name in COMMANDS:
    cli.add_command(_subcommand(_name))


@cli.command(name="run")
@_engine_options
def run_manifest(manifest_path: Optional[str], category: Optional[str], params: Tuple[str, ...], depth: Optional[int], bound: Optional[int], seed: Optional[int], out: Optional[str]) -> None:
    """Run the command a manifest names."""
    def build() -> Tuple[Report, AppConfig]:
        manifest = _manifest(manifest_path, category, params)
        if manifest.command not in COMMANDS:
            raise ManifestError(f"{manifest.source}: no runnable command (got {manifest.command!r})")
        config = _resolve(manifest, depth, bound, seed, out)
        return COMMANDS[manifest.command](manifest, config), config

    _run("run", build)


@cli.command(name="replay")
@click.option("--replay", "archive", type=click.Path(exists=True, dir_okay=False), required=True, help="Archived prefix.json.")
@click.option("--bound", type=click.IntRange(min=1), default=None, help="Search budget when the archive records none.")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Report directory.")
@click.option("--rebuild", is_flag=True, default=False, help="Also rebuild from the seed and compare; never changes the verdict.")
def replay(archive: str, bound: Optional[int], out: Optional[str], rebuild: bool) -> None:
    """Re-verify an archived prefix from its certificates."""
    def build() -> Tuple[Report, AppConfig]:
        config = load_config()
        set_level(config.log_level)
        config = config.with_overrides(bound=bound, out_dir=out)
        return cmd_replay(archive, config, rebuild), config

    _run("replay", build)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
