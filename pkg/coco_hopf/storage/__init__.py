"""Workspace storage and reference resolution."""

from .json_storage import WorkspaceStorage, load_document
from .resolver import Workspace

__all__ = [
    "WorkspaceStorage",
    "Workspace",
    "load_document",
]
