"""Conflict-free graph colouring toolkit."""
