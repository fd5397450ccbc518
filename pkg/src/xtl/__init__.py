"""Exact computation and verification toolkit for an open spin chain at
anisotropy -1/2, triangular six-vertex partition functions, and the weighted
enumeration of totally-symmetric alternating sign matrices."""

__version__ = "0.1.0"
