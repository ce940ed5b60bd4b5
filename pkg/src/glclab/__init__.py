"""Exact-arithmetic laboratory for the generalized Littlewood problem on grids."""

__version__ = "0.1.0"
