"""Schema of workspace JSON documents.

Scalars are "a/b" strings or integers; basis references are labels or
integer indices.
"""

from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, model_validator

Scalar = Union[int, str]
BasisRef = Union[int, str]
SparseSpec = Dict[str, Scalar]


class GroupSpec(BaseModel):
    """Exactly one of a builtin name, a Cayley table or permutation generators."""

    builtin: Optional[str] = None
    table: Optional[List[List[int]]] = None
    permutations: Optional[List[List[int]]] = None
    labels: Optional[List[str]] = None

    @model_validator(mode="after")
    def _one_source(self) -> "GroupSpec":
        given = [x is not None for x in (self.builtin, self.table, self.permutations)]
        if sum(given) != 1:
            raise ValueError("a group needs exactly one of builtin, table or permutations")
        return self


class AlgebraSpec(BaseModel):
    """A group algebra, or structure constants as sparse tuples.

    ``mult`` holds [i, j, k, c] for c e_k in e_i e_j, ``comult`` holds
    [i, j, k, c] for c e_j (x) e_k in Delta(e_i) and ``antipode`` holds
    [i, k, c]; a missing antipode is solved for.
    """

    group_algebra: Optional[str] = None
    dim: Optional[int] = None
    labels: Optional[List[str]] = None
    mult: List[Tuple[BasisRef, BasisRef, BasisRef, Scalar]] = Field(default_factory=list)
    unit: Optional[List[Scalar]] = None
    comult: List[Tuple[BasisRef, BasisRef, BasisRef, Scalar]] = Field(default_factory=list)
    counit: Optional[List[Scalar]] = None
    antipode: Optional[List[Tuple[BasisRef, BasisRef, Scalar]]] = None

    @model_validator(mode="after")
    def _one_source(self) -> "AlgebraSpec":
        if self.group_algebra is None and (self.dim is None or self.unit is None or self.counit is None):
            raise ValueError("an algebra needs group_algebra or dim, unit and counit")
        return self


class MorphismSpec(BaseModel):
    """A linear map given by a matrix, by sparse images, or by a group homomorphism.

    ``group_hom`` maps generator labels of the domain group to labels of the
    codomain group and is extended multiplicatively.
    """

    dom: str
    cod: str
    matrix: Optional[List[List[Scalar]]] = None
    images: Optional[Dict[str, Union[str, SparseSpec]]] = None
    group_hom: Optional[Dict[str, str]] = None
    splits: Optional[str] = None

    @model_validator(mode="after")
    def _one_source(self) -> "MorphismSpec":
        given = [x is not None for x in (self.matrix, self.images, self.group_hom)]
        if sum(given) != 1:
            raise ValueError("a morphism needs exactly one of matrix, images or group_hom")
        return self


class TwistSpec(BaseModel):
    """Overrides of the trivial action or cocycle on basis pairs."""

    H: str
    B: str
    entries: List[Tuple[BasisRef, BasisRef, SparseSpec]] = Field(default_factory=list)


class ExtensionSpec(BaseModel):
    """A surjection of groups, builtin ("Q8->V4") or by generator images."""

    builtin: Optional[str] = None
    source: Optional[str] = None
    target: Optional[str] = None
    images: Optional[Dict[str, str]] = None

    @model_validator(mode="after")
    def _one_source(self) -> "ExtensionSpec":
        if self.builtin is None and (self.source is None or self.target is None or self.images is None):
            raise ValueError("an extension needs builtin or source, target and images")
        return self


class WorkspaceDocument(BaseModel):
    field: Union[str, Dict[str, int]] = "Q"
    groups: Dict[str, GroupSpec] = Field(default_factory=dict)
    algebras: Dict[str, AlgebraSpec] = Field(default_factory=dict)
    morphisms: Dict[str, MorphismSpec] = Field(default_factory=dict)
    sections: Dict[str, MorphismSpec] = Field(default_factory=dict)
    actions: Dict[str, TwistSpec] = Field(default_factory=dict)
    cocycles: Dict[str, TwistSpec] = Field(default_factory=dict)
    extensions: Dict[str, ExtensionSpec] = Field(default_factory=dict)
