"""Configuration module for reserve-matching."""
