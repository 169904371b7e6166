"""Domain models for reserve systems."""
