"""Utility scripts: count tables."""
