"""Utilities package for louvre."""
