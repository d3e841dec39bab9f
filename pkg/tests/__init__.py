"""__init__ file for tests."""
