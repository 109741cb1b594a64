"""Test suite for the counted-transfer simulation."""
