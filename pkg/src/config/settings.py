"""Configuration settings loaded from environment variables."""

import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import find_dotenv, load_dotenv


def _int_from_env(name: str, default: str, minimum: int) -> int:
    from ..utils.errors import ConfigurationError

    raw = os.getenv(name, default)
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(f"Invalid integer for {name}: {raw!r} ({e})")
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass
class EngineConfig:
    """Budgets and parallelism for the engine."""
    threads: int
    depth: int
    bound: int
    seed: int

    @staticmethod
    def from_env() -> 'EngineConfig':
        """Load from environment variables with validation."""
        return EngineConfig(
            threads=_int_from_env("CUFRAISSE_THREADS", "1", 1),
            depth=_int_from_env("CUFRAISSE_DEPTH", "4", 0),
            bound=_int_from_env("CUFRAISSE_BOUND", "64", 1),
            seed=_int_from_env("CUFRAISSE_SEED", "0", 0),
        )


@dataclass
class OutputConfig:
    """Where reports and sidecars go."""
    out_dir: str
    write_sidecar: bool

    @staticmethod
    def from_env() -> 'OutputConfig':
        """Load from environment variables with validation."""
        sidecar_str = os.getenv("CUFRAISSE_SIDECAR", "true").lower()
        return OutputConfig(
            out_dir=os.getenv("CUFRAISSE_OUT", "./runs"),
            write_sidecar=sidecar_str in ("true", "1", "yes"),
        )


@dataclass
class AppConfig:
    """Complete application configuration."""
    engine: EngineConfig
    output: OutputConfig
    log_level: str

    @staticmethod
    def from_env() -> 'AppConfig':
        """Load complete configuration from environment."""
        return AppConfig(
            engine=EngineConfig.from_env(),
            output=OutputConfig.from_env(),
            log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
        )

    def with_overrides(
        self,
        depth: Optional[int] = None,
        bound: Optional[int] = None,
        seed: Optional[int] = None,
        out_dir: Optional[str] = None,
    ) -> 'AppConfig':
        """Command-line flags win over the environment."""
        engine = self.engine
        if depth is not None:
            engine = replace(engine, depth=depth)
        if bound is not None:
            engine = replace(engine, bound=bound)
        if seed is not None:
            engine = replace(engine, seed=seed)
        output = self.output if out_dir is None else replace(self.output, out_dir=out_dir)
        return AppConfig(engine=engine, output=output, log_level=self.log_level)


def load_config() -> AppConfig:
    """Load configuration from a .env file in the working directory and the environment."""
    load_dotenv(find_dotenv(usecwd=True))
    return AppConfig.from_env()
