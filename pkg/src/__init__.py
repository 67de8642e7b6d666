"""Cu-semigroup Fraïssé engine."""

__version__ = "0.1.0"
