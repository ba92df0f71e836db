"""Canonical-dual max-cut solvers."""
