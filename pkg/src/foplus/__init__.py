"""Positive first-order logic on finite words over ordered alphabets."""

__version__ = "0.1.0"
