"""Test suite for the louvre package."""
