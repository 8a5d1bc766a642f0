"""Exact fiberwise Hodge-like decompositions of finite point configurations."""

__version__ = "0.1.0"
