"""Louvre: routed syndrome-extraction schedules for generalized-bicycle codes."""
