"""Unit tests for parsers."""
