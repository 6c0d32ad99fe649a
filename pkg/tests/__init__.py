"""
Tests for SnapCheck.

This package contains tests for:
- Trace parsing, validation and the execution model
- Alpha checking, linearization and the brute-force oracle
- Simulation, exploration and the command line
"""
