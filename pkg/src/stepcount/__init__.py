"""stepcount: exact lattice-point counting for parametric polytopes."""

__version__ = "0.1.0"
