"""Turn a workspace document into algebras, morphisms and group data.

Names missing from the document fall back to builtins: "k" is the base
field, group names of the zoo ("S3", "k[S3]" or "QS3") are group algebras,
extension names ("Q8->V4") are the induced surjections and "s(Q8->V4)" is the
canonical linearised section.
"""

import logging
import re
from typing import Dict, Mapping, Optional, Set, Tuple, Union

from ..algebra.cleft import Cocycle, MeasuringAction
from ..algebra.hopf import FinHopfAlgebra, Sparse, trivial_algebra, verify_axioms
from ..algebra.morphism import CoalgebraMap, HopfMorphism, LinearMap, hopf_kernel
from ..algebra.subquot import HopfSubalgebra, center, derived_subalgebra
from ..core.errors import MalformedStructure, UnknownReference
from ..core.field import Field
from ..core.linalg import Matrix
from ..galois.extensions import validate_section
from ..groups.algebras import group_algebra, group_algebra_map, linearize_section
from ..groups.finite import CentralExtensionModel, FinGroup, GroupHom
from ..groups.zoo import EXTENSION_NAMES, GROUP_NAMES, named_extension, named_group
from ..models.workspace import AlgebraSpec, MorphismSpec, TwistSpec, WorkspaceDocument

logger = logging.getLogger(__name__)

_SUBALGEBRA = re.compile(r"^(Hker|Z|D)\((.+)\)$")
_SECTION = re.compile(r"^s\((.+)\)$")


class Workspace:
    """Resolves references of one document over one field; results are cached."""

    def __init__(
        self,
        document: Optional[WorkspaceDocument] = None,
        field: Union[str, dict, Field, None] = None,
        max_permutation_order: Optional[int] = None,
    ):
        self.document = document or WorkspaceDocument()
        self.max_permutation_order = max_permutation_order
        self.field = Field.parse(field if field is not None else self.document.field)
        self._groups: Dict[str, FinGroup] = {}
        self._algebras: Dict[str, FinHopfAlgebra] = {}
        self._morphisms: Dict[str, LinearMap] = {}
        self._verified: Set[str] = set()

    # Groups

    def group(self, name: str) -> FinGroup:
        if name in self._groups:
            return self._groups[name]
        spec = self.document.groups.get(name)
        if spec is None:
            group = named_group(name)
        elif spec.builtin is not None:
            group = named_group(spec.builtin)
        elif spec.table is not None:
            group = FinGroup(spec.table, spec.labels, name=name)
        else:
            group = FinGroup.from_permutations(
                spec.permutations, name=name, labels=spec.labels, max_order=self.max_permutation_order
            )
        self._groups[name] = group
        return group

    def _is_group(self, name: str) -> bool:
        return name in self.document.groups or name in GROUP_NAMES

    def extension(self, name: str) -> CentralExtensionModel:
        """Group extension by name, or the one underlying a group_hom morphism."""
        spec = self.document.extensions.get(name)
        if spec is not None:
            if spec.builtin is not None:
                return named_extension(spec.builtin)
            phi = GroupHom.from_labels(self.group(spec.source), self.group(spec.target), spec.images)
            return CentralExtensionModel(phi, name=name)
        mor = self.document.morphisms.get(name)
        if mor is not None and mor.group_hom is not None:
            phi = GroupHom.from_labels(self._group_of(mor.dom), self._group_of(mor.cod), mor.group_hom)
            return CentralExtensionModel(phi, name=name)
        if name in EXTENSION_NAMES:
            return named_extension(name)
        raise UnknownReference(f"no extension named {name!r}", reference=name)

    def _group_of(self, name: str) -> FinGroup:
        spec = self.document.algebras.get(name)
        if spec is not None and spec.group_algebra is not None:
            return self.group(spec.group_algebra)
        builtin = self._builtin_group_name(name)
        if builtin is None:
            raise UnknownReference(f"{name!r} is not a group algebra", reference=name)
        return self.group(builtin)

    def _builtin_group_name(self, name: str) -> Optional[str]:
        if self._is_group(name):
            return name
        for prefix in ("k[", f"{self.field.name}["):
            if name.startswith(prefix) and name.endswith("]") and self._is_group(name[len(prefix):-1]):
                return name[len(prefix):-1]
        head = self.field.name
        if name.startswith(head) and self._is_group(name[len(head):]):
            return name[len(head):]
        return None

    # Algebras

    def algebra(self, name: str, verify: bool = True) -> FinHopfAlgebra:
        """Algebra by name; structure constants from the document are axiom-checked
        unless ``verify`` is off."""
        A = self._algebras.get(name)
        if A is None:
            A = self._resolve_algebra(name)
            self._algebras[name] = A
        if verify and name not in self._verified:
            report = verify_axioms(A)
            if not report.passed:
                raise MalformedStructure(
                    f"{name} fails the Hopf axioms: {', '.join(report.failures)}", reference=name
                )
            self._verified.add(name)
        return A

    def _resolve_algebra(self, name: str) -> FinHopfAlgebra:
        spec = self.document.algebras.get(name)
        if spec is not None and spec.group_algebra is None:
            return self._build_algebra(name, spec)
        self._verified.add(name)
        if spec is not None:
            return group_algebra(self.group(spec.group_algebra), self.field, name=name)
        if name == "k":
            return trivial_algebra(self.field)
        builtin = self._builtin_group_name(name)
        if builtin is None:
            raise UnknownReference(f"no algebra named {name!r}", reference=name)
        return group_algebra(self.group(builtin), self.field, name=name)

    def _build_algebra(self, name: str, spec: AlgebraSpec) -> FinHopfAlgebra:
        dim = spec.dim
        labels = spec.labels or [f"e{i}" for i in range(dim)]
        pos = {label: i for i, label in enumerate(labels)}

        def ref(x: Union[int, str]) -> int:
            return _basis_index(x, pos, dim, name)

        mult: Dict[Tuple[int, int], Dict[int, object]] = {}
        for i, j, k, c in spec.mult:
            entry = mult.setdefault((ref(i), ref(j)), {})
            entry[ref(k)] = self.field(entry.get(ref(k), 0)) + self.field(c)
        comult = [[] for _ in range(dim)]
        for i, j, k, c in spec.comult:
            comult[ref(i)].append((c, ref(j), ref(k)))
        if spec.antipode is None:
            A = FinHopfAlgebra.from_bialgebra(self.field, dim, mult, spec.unit, comult, spec.counit, labels, name)
        else:
            antipode = [{} for _ in range(dim)]
            for i, k, c in spec.antipode:
                antipode[ref(i)][ref(k)] = c
            A = FinHopfAlgebra(self.field, dim, mult, spec.unit, comult, spec.counit, antipode, labels, name)
        logger.debug("loaded %r", A)
        return A

    def subalgebra(self, ref: str) -> HopfSubalgebra:
        """An algebra (as its full subalgebra), or Hker(<morphism>), Z(<algebra>), D(<algebra>)."""
        match = _SUBALGEBRA.match(ref)
        if match is None:
            return HopfSubalgebra.full(self.algebra(ref))
        kind, inner = match.groups()
        if kind == "Hker":
            return hopf_kernel(self.morphism(inner))
        if kind == "Z":
            return center(self.algebra(inner))
        return derived_subalgebra(self.algebra(inner))

    # Maps

    def morphism(self, name: str) -> HopfMorphism:
        found = self._map(name, self.document.morphisms, kind="morphism")
        if not isinstance(found, HopfMorphism):
            found = HopfMorphism(found.dom, found.cod, found.columns, found.name)
            self._morphisms[name] = found
        return found

    def section(self, name: str) -> CoalgebraMap:
        """A coalgebra map; when ``splits`` names a morphism it is validated as a section of it."""
        match = _SECTION.match(name)
        if name not in self.document.sections and match is not None:
            ext = self.extension(match.group(1))
            return linearize_section(ext.phi, ext.canonical_section(), self.field)
        spec = self.document.sections.get(name)
        if spec is None:
            raise UnknownReference(f"no section named {name!r}", reference=name)
        raw = self._build_map(name, spec)
        if spec.splits is not None:
            return validate_section(self.morphism(spec.splits), raw)
        return CoalgebraMap(raw.dom, raw.cod, raw.columns, name)

    def _map(self, name: str, table: Mapping[str, MorphismSpec], kind: str) -> LinearMap:
        if name in self._morphisms:
            return self._morphisms[name]
        spec = table.get(name)
        if spec is not None:
            found: LinearMap = self._build_map(name, spec)
        elif name in self.document.extensions or name in EXTENSION_NAMES:
            found = self._extension_map(name)
        else:
            raise UnknownReference(f"no {kind} named {name!r}", reference=name)
        self._morphisms[name] = found
        return found

    def _extension_map(self, name: str) -> HopfMorphism:
        phi = self.extension(name).phi
        dom = group_algebra(phi.source, self.field)
        cod = group_algebra(phi.target, self.field)
        return HopfMorphism(dom, cod, group_algebra_map(phi, self.field).columns, name, check=False)

    def _build_map(self, name: str, spec: MorphismSpec) -> LinearMap:
        if spec.group_hom is not None:
            phi = GroupHom.from_labels(self._group_of(spec.dom), self._group_of(spec.cod), spec.group_hom)
            dom, cod = self.algebra(spec.dom), self.algebra(spec.cod)
            return LinearMap(dom, cod, group_algebra_map(phi, self.field).columns, name)
        dom, cod = self.algebra(spec.dom), self.algebra(spec.cod)
        if spec.matrix is not None:
            return LinearMap.from_matrix(dom, cod, Matrix(self.field, spec.matrix, dom.dim), name)
        dom_pos = {label: i for i, label in enumerate(dom.labels)}
        columns: list = [{} for _ in range(dom.dim)]
        for key, value in spec.images.items():
            i = _basis_index(key, dom_pos, dom.dim, name)
            columns[i] = self.sparse(cod, value, name)
        return LinearMap(dom, cod, columns, name)

    def sparse(self, A: FinHopfAlgebra, value: Union[str, Mapping[str, object]], where: str) -> Sparse:
        """A label, or {label: coefficient}, as a sparse vector of A."""
        pos = {label: i for i, label in enumerate(A.labels)}
        if isinstance(value, str):
            return {_basis_index(value, pos, A.dim, where): self.field.one}
        out: Sparse = {}
        for key, c in value.items():
            out[_basis_index(key, pos, A.dim, where)] = self.field(c)
        return out

    def validate(self) -> Dict[str, int]:
        """Resolve every entry of the document; axiom and morphism checks run on the way."""
        doc = self.document
        for name in doc.groups:
            self.group(name)
        for name in doc.algebras:
            self.algebra(name)
        for name in doc.morphisms:
            self.morphism(name)
        for name in doc.sections:
            self.section(name)
        for name in doc.actions:
            self.action(name)
        for name in doc.cocycles:
            self.cocycle(name)
        for name in doc.extensions:
            self.extension(name)
        counts = {
            "groups": len(doc.groups),
            "algebras": len(doc.algebras),
            "morphisms": len(doc.morphisms),
            "sections": len(doc.sections),
            "actions": len(doc.actions),
            "cocycles": len(doc.cocycles),
            "extensions": len(doc.extensions),
        }
        logger.info("workspace resolved: %s", counts)
        return counts

    # Twisting data

    def action(self, name: str) -> MeasuringAction:
        spec = self._twist(name, self.document.actions, "action")
        H, B = self.algebra(spec.H), self.algebra(spec.B)
        entries = [
            (self._index(H, h, name), self._index(B, b, name), self.sparse(B, value, name))
            for h, b, value in spec.entries
        ]
        return MeasuringAction.from_overrides(H, B, entries)

    def cocycle(self, name: str) -> Cocycle:
        spec = self._twist(name, self.document.cocycles, "cocycle")
        H, B = self.algebra(spec.H), self.algebra(spec.B)
        entries = [
            (self._index(H, g, name), self._index(H, h, name), self.sparse(B, value, name))
            for g, h, value in spec.entries
        ]
        return Cocycle.from_overrides(H, B, entries)

    @staticmethod
    def _twist(name: str, table: Mapping[str, TwistSpec], kind: str) -> TwistSpec:
        spec = table.get(name)
        if spec is None:
            raise UnknownReference(f"no {kind} named {name!r}", reference=name)
        return spec

    @staticmethod
    def _index(A: FinHopfAlgebra, ref: Union[int, str], where: str) -> int:
        return _basis_index(ref, {label: i for i, label in enumerate(A.labels)}, A.dim, where)


def _basis_index(ref: Union[int, str], pos: Mapping[str, int], dim: int, where: str) -> int:
    if isinstance(ref, int):
        if not 0 <= ref < dim:
            raise MalformedStructure(f"{where}: basis index {ref} out of range", reference=where)
        return ref
    if ref not in pos:
        raise UnknownReference(f"{where}: no basis element {ref!r}", reference=where)
    return pos[ref]
