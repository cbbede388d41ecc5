"""Hopf algebras, morphisms, subobjects, quotients and crossed products."""
