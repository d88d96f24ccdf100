"""Tests for the geodesic-crossings library."""
