"""Vertex-disjoint cycle packing under degree-sum conditions."""

__version__ = "0.1.0"
