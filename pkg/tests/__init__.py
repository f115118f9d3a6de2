"""Tests for Thematic-LM."""
