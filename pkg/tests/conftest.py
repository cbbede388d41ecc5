"""Pytest configuration and shared fixtures."""

import json
import shutil
import tempfile
from pathlib import Path

import pytest

from coco_hopf.core.field import Field
from coco_hopf.groups.algebras import group_algebra, group_algebra_map
from coco_hopf.groups.zoo import named_extension, named_group


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = tempfile.mkdtemp()
    yield Path(temp_path)
    shutil.rmtree(temp_path)


@pytest.fixture
def qq() -> Field:
    return Field.rationals()


@pytest.fixture
def f2() -> Field:
    return Field.prime(2)


@pytest.fixture
def kg(qq):
    """k[G] over Q for a builtin group name."""

    def build(name: str):
        return group_algebra(named_group(name), qq)

    return build


@pytest.fixture
def ext_map(qq):
    """k[G] -> k[Q] over Q for a builtin extension name."""

    def build(name: str):
        return group_algebra_map(named_extension(name).phi, qq, name=name)

    return build


@pytest.fixture
def sample_document() -> dict:
    """A workspace touching every section of the document format; A2 is k[C2] written out by hand."""
    return {
        "field": "Q",
        "groups": {
            "Z3": {"table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "labels": ["1", "x", "x2"]},
            "Sym3": {"permutations": [[1, 0, 2], [1, 2, 0]]},
        },
        "algebras": {
            "K": {"dim": 1, "labels": ["1"], "mult": [[0, 0, 0, 1]], "unit": [1],
                  "comult": [[0, 0, 0, 1]], "counit": [1]},
            "A2": {
                "dim": 2,
                "labels": ["e", "g"],
                "mult": [["e", "e", "e", 1], ["e", "g", "g", 1], ["g", "e", "g", 1], ["g", "g", "e", 1]],
                "unit": [1, 0],
                "comult": [["e", "e", "e", 1], ["g", "g", "g", 1]],
                "counit": [1, 1],
            },
            "QC4": {"group_algebra": "C4"},
            "QZ3": {"group_algebra": "Z3"},
        },
        "morphisms": {
            "p": {"dom": "QC4", "cod": "A2", "images": {"e": "e", "x": "g", "x^2": "e", "x^3": "g"}},
            "q": {"dom": "Q8", "cod": "V4", "group_hom": {"i": "a", "j": "b"}},
            "inv": {"dom": "QC4", "cod": "QC4", "matrix": [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]]},
        },
        "sections": {
            "s": {"dom": "A2", "cod": "QC4", "images": {"e": "e", "g": "x"}, "splits": "p"},
        },
        "actions": {
            "triv": {"H": "QC2", "B": "QT2", "entries": []},
        },
        "cocycles": {
            "tw": {"H": "QC2", "B": "QT2", "entries": [["g", "g", {"t": 1}]]},
            "flat": {"H": "QC2", "B": "QT2", "entries": []},
        },
        "extensions": {
            "stem": {"builtin": "Q8->V4"},
            "cyc": {"source": "C6", "target": "C3", "images": {"x": "x"}},
        },
    }


@pytest.fixture
def workspace_file(temp_dir, sample_document) -> Path:
    path = temp_dir / "workspace.json"
    path.write_text(json.dumps(sample_document))
    return path
