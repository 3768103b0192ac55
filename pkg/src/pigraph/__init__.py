"""pigraph - static graph variant of the pi-calculus with ground semantics."""

__version__ = "0.1.0"
