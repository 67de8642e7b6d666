"""Configuration management for the Cu Fraïssé engine."""

from .settings import AppConfig, EngineConfig, OutputConfig, load_config

__all__ = ["AppConfig", "EngineConfig", "OutputConfig", "load_config"]
