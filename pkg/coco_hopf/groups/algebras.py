"""Group algebras k[G] and the maps induced by group-level data."""

from functools import lru_cache
from typing import Iterable, Optional, Sequence

from ..algebra.hopf import FinHopfAlgebra
from ..algebra.morphism import CoalgebraMap, HopfMorphism
from ..algebra.subquot import HopfSubalgebra
from ..core.errors import NotASetSection
from ..core.field import Field
from ..core.linalg import Subspace
from .finite import FinGroup, GroupHom


@lru_cache(maxsize=128)
def group_algebra(group: FinGroup, field: Field, name: Optional[str] = None) -> FinHopfAlgebra:
    """k[G]: Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    n = group.order
    mult = {(a, b): {group.mul(a, b): 1} for a in range(n) for b in range(n)}
    unit = [1 if g == group.identity else 0 for g in range(n)]
    comult = [[(1, g, g)] for g in range(n)]
    counit = [1] * n
    antipode = [{group.inv(g): 1} for g in range(n)]
    return FinHopfAlgebra(
        field, n, mult, unit, comult, counit, antipode, group.labels,
        name or f"{field.name}[{group.name}]",
    )


def group_algebra_map(phi: GroupHom, field: Field, name: Optional[str] = None) -> HopfMorphism:
    """k[phi] : k[G] -> k[H]."""
    dom = group_algebra(phi.source, field)
    cod = group_algebra(phi.target, field)
    one = field.one
    return HopfMorphism(
        dom, cod, [{phi(g): one} for g in phi.source.elements],
        name or f"k[{phi.source.name}->{phi.target.name}]", check=False,
    )


def linearize_section(phi: GroupHom, section: Sequence[int], field: Field) -> CoalgebraMap:
    """Linear extension of a set section s of phi: a coalgebra section of k[phi]."""
    if len(section) != phi.target.order or any(phi(section[q]) != q for q in phi.target.elements):
        raise NotASetSection(
            f"{list(section)} is not a set section of {phi!r}", reference=phi.source.name
        )
    dom = group_algebra(phi.target, field)
    cod = group_algebra(phi.source, field)
    one = field.one
    return CoalgebraMap(dom, cod, [{section[q]: one} for q in phi.target.elements], f"s({phi.source.name})")


def subgroup_subalgebra(group: FinGroup, members: Iterable[int], field: Field, name: Optional[str] = None) -> HopfSubalgebra:
    """k[H] inside k[G] for a subgroup H."""
    A = group_algebra(group, field)
    vectors = [A.basis_vector(h) for h in sorted(set(members))]
    sub = HopfSubalgebra(A, Subspace.span(field, A.dim, vectors), name=name or f"k[H]({group.name})")
    sub.check_closure()
    return sub
