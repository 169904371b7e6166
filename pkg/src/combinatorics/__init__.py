"""Bipartite matching and assignment engines."""
