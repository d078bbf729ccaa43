"""Exact intersection theory for cycle cones on hyperkaehler fourfolds."""

__version__ = "0.1.0"
