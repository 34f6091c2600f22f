"""Tests for lambda-epsilon."""
