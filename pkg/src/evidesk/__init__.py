"""Evidence synthesis over pharmaceutical research archives."""

__version__ = "0.1.0"
