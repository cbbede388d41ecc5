"""Finite groups, free groups, bar-resolution homology and group algebras."""
