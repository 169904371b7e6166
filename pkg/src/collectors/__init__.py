"""Loading of instance and preference-profile files."""
