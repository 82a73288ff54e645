"""Serializers for louvre reports and tables."""
