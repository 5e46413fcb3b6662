"""Tests for revertbench."""
