"""Executable workbench for continuous operations on Baire space."""

__version__ = "0.1.0"
