"""Reserve-system matching engine: axioms, cutoff equilibria, sequential, deferred-acceptance and smart reserve matching."""

__version__ = "1.0.0"
