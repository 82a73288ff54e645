"""Unit tests for CLI functionality."""
