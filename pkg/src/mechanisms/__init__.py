"""Matching mechanisms: deferred acceptance and sequential reserve processing."""
