"""Tests für preview_regret."""
