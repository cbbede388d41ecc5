"""Named groups and group extensions used by tests, the CLI and selftest."""

from functools import lru_cache
from typing import Dict, Tuple

from ..core.errors import UnknownReference
from .finite import CentralExtensionModel, FinGroup, GroupHom

GROUP_NAMES = ("trivial", "C2", "T2", "C3", "C4", "C6", "V4", "S3", "D4", "Q8")

EXTENSION_NAMES = (
    "C4->C2",
    "Q8->V4",
    "D4->V4",
    "S3->C2",
    "V4->C2",
    "C6->C2",
    "C6->C3",
    "D4->C2",
    "Q8->C2",
    "V4->V4/a",
)


@lru_cache(maxsize=None)
def named_group(name: str) -> FinGroup:
    """Builtin groups; C2 is generated by g, T2 by t, cyclic groups by x."""
    builders = {
        "trivial": FinGroup.trivial,
        "C2": lambda: FinGroup.cyclic(2, "g", name="C2"),
        "T2": lambda: FinGroup.cyclic(2, "t", name="T2"),
        "C3": lambda: FinGroup.cyclic(3, "x", name="C3"),
        "C4": lambda: FinGroup.cyclic(4, "x", name="C4"),
        "C6": lambda: FinGroup.cyclic(6, "x", name="C6"),
        "V4": FinGroup.klein,
        "S3": lambda: FinGroup.symmetric(3),
        "D4": lambda: FinGroup.dihedral(4),
        "Q8": FinGroup.quaternion,
    }
    if name not in builders:
        raise UnknownReference(f"no builtin group named {name!r}", reference=name)
    return builders[name]()


def _hom(source: str, target: str, mapping: Dict[str, str]) -> GroupHom:
    return GroupHom.from_labels(named_group(source), named_group(target), mapping)


@lru_cache(maxsize=None)
def named_extension(name: str) -> CentralExtensionModel:
    """Builtin surjections G -> Q; the name is "G->Q"."""
    if name == "V4->V4/a":
        v4 = named_group("V4")
        _, phi = v4.quotient([v4.identity, v4.index("a")], name="V4/a")
        return CentralExtensionModel(phi, name=name)
    homs = {
        "C4->C2": lambda: _hom("C4", "C2", {"x": "g"}),
        "Q8->V4": lambda: _hom("Q8", "V4", {"i": "a", "j": "b"}),
        "D4->V4": lambda: _hom("D4", "V4", {"r": "a", "s": "b"}),
        "S3->C2": lambda: _hom("S3", "C2", {"(12)": "g", "(123)": "e"}),
        "V4->C2": lambda: _hom("V4", "C2", {"a": "g", "b": "e"}),
        "C6->C2": lambda: _hom("C6", "C2", {"x": "g"}),
        "C6->C3": lambda: _hom("C6", "C3", {"x": "x"}),
        "D4->C2": lambda: _hom("D4", "C2", {"r": "e", "s": "g"}),
        "Q8->C2": lambda: _hom("Q8", "C2", {"i": "g", "j": "e"}),
    }
    if name not in homs:
        raise UnknownReference(f"no builtin extension named {name!r}", reference=name)
    return CentralExtensionModel(homs[name](), name=name)


def naturality_example() -> Tuple[CentralExtensionModel, CentralExtensionModel, GroupHom, GroupHom]:
    """Morphism of extensions (Q8 -> V4) => (V4 -> V4/a) given by (phi, psi)."""
    top = named_extension("Q8->V4")
    bottom = named_extension("V4->V4/a")
    return top, bottom, top.phi, bottom.phi
