"""Depth and Stanley depth of edge ideals of strong products of paths and cycles."""

__version__ = "0.1.0"
# bump when a change can alter cached results
ALGORITHM_VERSION = 1
