"""Exact octonion algebras and reality tests for their automorphism groups."""

__version__ = "0.1.0"
