"""Exact-arithmetic calculator for primary equivariant obstruction classes
of equivariant maps from S^3 to complements of invariant subspace
arrangements, with a combinatorial graph-coloring consistency check."""

__version__ = "0.1.0"
