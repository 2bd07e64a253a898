"""Exact verification toolkit for high rank Virasoro algebras and their modules."""

__version__ = "0.1.0"
