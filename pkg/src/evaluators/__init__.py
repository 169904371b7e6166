"""Axioms and cutoff equilibria of reserve matchings."""
