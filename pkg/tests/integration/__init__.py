"""Integration tests for Thematic-LM."""
