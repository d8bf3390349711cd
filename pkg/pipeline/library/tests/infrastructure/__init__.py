"""Tests for the infrastructure module."""
