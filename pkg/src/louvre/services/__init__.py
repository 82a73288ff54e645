"""Services package for louvre."""
