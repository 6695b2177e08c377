"""Tests for quiltkit."""
