"""Ratliff–Rush closures, reductions and Hilbert–Samuel data of m-primary ideals."""

__version__ = "0.1.0"
