"""Exact point counting for weighted-projective Hom covers over finite fields."""

__version__ = "0.1.0"
