"""Abstract interpretation of a small while-language, with verification conditions."""

__version__ = "0.1.0"
