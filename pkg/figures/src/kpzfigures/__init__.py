"""Batch figure generation from kpzlab CSV artifacts (pure views, no stats)."""

__version__ = "0.1.0"
