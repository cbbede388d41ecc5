"""Serializable reports produced by checks and CLI commands."""

from typing import List, Optional

from pydantic import BaseModel, Field, computed_field


class AxiomReport(BaseModel):
    """Pass/fail verdict for every Hopf algebra axiom."""

    algebra: str
    dim: int
    field: str
    associative: bool
    unital: bool
    coassociative: bool
    counital: bool
    bialgebra: bool
    antipode: bool
    cocommutative: bool
    commutative: bool
    antipode_involutive: bool
    failures: List[str] = Field(default_factory=list)

    @computed_field  # type: ignore[misc]
    @property
    def passed(self) -> bool:
        """All Hopf axioms hold; (co)commutativity is informational."""
        return all(
            (
                self.associative,
                self.unital,
                self.coassociative,
                self.counital,
                self.bialgebra,
                self.antipode,
                not self.cocommutative or self.antipode_involutive,
            )
        )


class SubalgebraReport(BaseModel):
    """Dimension, basis and closure flags of a Hopf subalgebra."""

    dim: int
    grouplike_basis: Optional[List[str]] = None
    basis: List[List] = Field(default_factory=list)
    flags: dict = Field(default_factory=dict)


class AbelianGroupSNF(BaseModel):
    """Finite abelian group Z/d1 x ... x Z/dk with d1 | d2 | ... and every di > 1."""

    invariant_factors: List[int] = Field(default_factory=list)

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result


class ExtensionReport(BaseModel):
    """Galois-theoretic classification of a surjective Hopf morphism."""

    morphism: str
    in_E: bool
    is_surjective: bool
    is_trivial_galois: bool
    is_normal: bool
    kernel_dim: int
    kernel_grouplike_basis: Optional[List[str]] = None
    commutator_with_kernel_dim: int


class NodeReport(BaseModel):
    index: int
    name: str
    dim: int
    image_dim: Optional[int] = None
    kernel_dim: Optional[int] = None
    is_complex: Optional[bool] = None
    is_exact: Optional[bool] = None


class SequenceReport(BaseModel):
    """Node-by-node verdicts of an exactness check."""

    name: str
    nodes: List[NodeReport]
    is_complex: bool
    is_exact: bool
    failed_nodes: List[int] = Field(default_factory=list)
    connecting_map: Optional[List[List]] = None
