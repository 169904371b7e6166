"""Reserve systems under a baseline priority order."""
