"""Pydantic report and workspace models."""
