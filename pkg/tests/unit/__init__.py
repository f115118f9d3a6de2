"""Unit tests for Thematic-LM."""
