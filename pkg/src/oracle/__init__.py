"""Exhaustive oracles, random instance generators and property verification."""
