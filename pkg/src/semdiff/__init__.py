"""Semantic differencing of class diagrams via bounded diff witnesses."""

__version__ = "0.1.0"
