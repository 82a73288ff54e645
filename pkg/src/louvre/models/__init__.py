"""Models package for louvre."""
