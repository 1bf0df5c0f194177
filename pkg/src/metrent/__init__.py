"""Exact name encodings, a step-metered oracle runtime, representations of
metric and Banach spaces, and metric-entropy experiments."""

__version__ = "0.1.0"
