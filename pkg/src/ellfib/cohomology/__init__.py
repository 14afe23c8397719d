"""Cohomology rings, presets, and the degeneration bookkeeping engine."""
