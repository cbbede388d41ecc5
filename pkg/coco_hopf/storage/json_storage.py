"""JSON file-based storage of workspace documents."""

import json
import logging
from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from ..core.errors import MalformedStructure, UnknownReference
from ..models.workspace import WorkspaceDocument

logger = logging.getLogger(__name__)


class WorkspaceStorage:
    """Workspace documents stored as ``<base_path>/<name>.json``."""

    def __init__(self, base_path: Union[str, Path] = "workspaces"):
        self.base_path = Path(base_path)
        self.base_path.mkdir(parents=True, exist_ok=True)

    def _get_file_path(self, name: str) -> Path:
        """Get the file path for a named workspace."""
        return self.base_path / f"{name}.json"

    def save(self, name: str, document: WorkspaceDocument, indent: int = 2) -> Path:
        file_path = self._get_file_path(name)
        payload = document.model_dump(exclude_none=True)
        with open(file_path, "w") as f:
            json.dump(payload, f, indent=indent, sort_keys=True)
        logger.info("saved workspace %s to %s", name, file_path)
        return file_path

    def load(self, name: str) -> WorkspaceDocument:
        file_path = self._get_file_path(name)
        if not file_path.exists():
            raise UnknownReference(f"no workspace named {name!r} in {self.base_path}", reference=name)
        return load_document(file_path)

    def list(self) -> List[str]:
        return sorted(path.stem for path in self.base_path.glob("*.json"))

    def delete(self, name: str) -> bool:
        file_path = self._get_file_path(name)
        if not file_path.exists():
            return False
        file_path.unlink()
        return True


def load_document(path: Union[str, Path]) -> WorkspaceDocument:
    """Parse and validate a workspace file."""
    file_path = Path(path)
    try:
        with open(file_path, "r") as f:
            raw = json.load(f)
    except FileNotFoundError:
        raise UnknownReference(f"workspace file {file_path} does not exist", reference=str(file_path)) from None
    except json.JSONDecodeError as exc:
        raise MalformedStructure(f"{file_path} is not valid JSON: {exc.msg}", reference=str(file_path)) from exc
    try:
        return WorkspaceDocument.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise MalformedStructure(f"{file_path}: {where}: {first['msg']}", reference=where or None) from exc
