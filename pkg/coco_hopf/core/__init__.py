"""Exact fields, linear algebra, Smith normal form and the error hierarchy."""
