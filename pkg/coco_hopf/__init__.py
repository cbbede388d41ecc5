"""
coco-hopf - Exact computations with finite-dimensional cocommutative Hopf algebras.
"""

__version__ = "0.1.0"
