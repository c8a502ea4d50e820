"""Exact propagation of the 1-D Schroedinger equation with time-dependent
quadratic Hamiltonians, and evolution of superoscillating initial data."""

__version__ = "0.1.0"
