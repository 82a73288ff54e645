"""Parsers package for louvre."""
