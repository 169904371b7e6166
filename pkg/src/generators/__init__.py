"""Report rendering for mechanism results and verification runs."""
