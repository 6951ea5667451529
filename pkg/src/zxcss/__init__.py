"""ZX-calculus tools for CSS codes and lattice surgery."""

__version__ = "0.1.0"
