"""Core numerical routines for coherent-state calculi."""
