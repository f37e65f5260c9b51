"""Torsion points with multiplicatively dependent coordinates."""

__version__ = "0.1.0"
