"""Trivial and normal extensions, the Galois groupoid, pi1 and the Hopf formula for H2."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from ..algebra.hopf import FinHopfAlgebra, Sparse, _accumulate, grouplikes, iterated_coproduct, to_dense, to_sparse
from ..algebra.morphism import (
    CoalgebraMap,
    HopfMorphism,
    LinearMap,
    coalgebra_failures,
    hopf_kernel,
    induced_on_quotient,
    kernel_pair,
    pullback,
)
from ..algebra.subquot import (
    HopfSubalgebra,
    Quotient,
    abelianization,
    abelianize_morphism,
    algebra_closure,
    center,
    derived_subalgebra,
    huq_commutator,
    meet,
    quotient_by_normal,
)
from ..core.errors import CheckFailed, MalformedStructure, NotASection, NotInE, NotNormal, NotSurjective
from ..core.field import Field
from ..core.linalg import Subspace
from ..groups.algebras import group_algebra
from ..groups.finite import FinGroup
from ..groups.homology import second_homology
from ..models.reports import ExtensionReport

logger = logging.getLogger(__name__)


def require_surjective(f: LinearMap) -> None:
    if not f.is_surjective:
        raise NotSurjective(f"{f.name} is not surjective", reference=f.name)


def validate_section(f: LinearMap, section: LinearMap) -> CoalgebraMap:
    """Check that ``section`` is a coalgebra map with f o section = id."""
    if section.dom != f.cod or section.cod != f.dom:
        raise NotASection(f"{section.name} does not go from {f.cod.name} to {f.dom.name}", reference=section.name)
    one = f.cod.field.one
    for h in range(f.cod.dim):
        if f.apply_sparse(section.columns[h]) != {h: one}:
            raise NotASection(f"{f.name} o {section.name} is not the identity", reference=section.name)
    failures = coalgebra_failures(section)
    if failures:
        raise NotASection(f"{section.name} is not a coalgebra map: {failures[0]}", reference=section.name)
    if isinstance(section, CoalgebraMap):
        return section
    return CoalgebraMap(section.dom, section.cod, section.columns, section.name, check=False)


def find_coalgebra_section(f: LinearMap) -> Optional[CoalgebraMap]:
    """A coalgebra section of f when the codomain has a group-like basis.

    Each basis group-like h is sent to the first group-like of the domain
    mapping onto it; None when some h has no such preimage.
    """
    if not f.cod.has_grouplike_basis:
        return None
    one = f.cod.field.one
    candidates = grouplikes(f.dom)
    columns = []
    for h in range(f.cod.dim):
        target = {h: one}
        preimage = next((x for x in candidates if f.apply_sparse(to_sparse(x.coords)) == target), None)
        if preimage is None:
            logger.debug("no group-like preimage of %s under %s", f.cod.labels[h], f.name)
            return None
        columns.append(to_sparse(preimage.coords))
    return CoalgebraMap(f.cod, f.dom, columns, f"s({f.name})")


def _section_or_none(f: LinearMap, section: Optional[LinearMap]) -> Optional[CoalgebraMap]:
    if section is not None:
        return validate_section(f, section)
    return find_coalgebra_section(f)


def require_in_e(f: LinearMap, section: Optional[LinearMap] = None) -> CoalgebraMap:
    found = _section_or_none(f, section)
    if found is None:
        raise NotInE(f"{f.name} has no known coalgebra section", reference=f.name)
    return found


def is_normal_extension(f: HopfMorphism) -> bool:
    """Hker(f) inside Z(A), cross-checked against [Hker(f), A] = k1."""
    require_surjective(f)
    A = f.dom
    kernel = hopf_kernel(f)
    central = kernel.subspace.is_subspace_of(center(A).subspace)
    commutator = huq_commutator(kernel, HopfSubalgebra.full(A))
    if central != (commutator.dim == 1):
        raise CheckFailed(f"centrality and commutator triviality disagree for {f.name}", reference=f.name)
    return central


def _comparison_map(f: HopfMorphism, eta_a: HopfMorphism, square: HopfSubalgebra) -> LinearMap:
    """a -> f(a1) (x) eta_A(a2) in coordinates of the pullback subalgebra."""
    A = f.dom
    n_q = eta_a.cod.dim
    ambient = square.parent.dim
    columns = []
    for i in range(A.dim):
        vec: Sparse = {}
        for c, j, k in A.comult[i]:
            for b, u in f.columns[j].items():
                for q, v in eta_a.columns[k].items():
                    _accumulate(vec, b * n_q + q, c * u * v)
        coords = square.coordinates(to_dense(A.field, vec, ambient))
        if coords is None:
            raise CheckFailed(f"<f, eta> of {f.name} escapes the pullback")
        columns.append(to_sparse(coords))
    return LinearMap(A, square.algebra(), columns, f"<{f.name},eta>")


def is_trivial_extension_galois(f: HopfMorphism) -> bool:
    """Whether A is the pullback of eta_B along H1(f)."""
    require_surjective(f)
    ab_a = abelianization(f.dom)
    ab_b = abelianization(f.cod)
    h1f = abelianize_morphism(f, ab_a, ab_b)
    square = pullback(ab_b.projection, h1f, name=f"P({f.name})")
    if square.algebra.dim != f.dom.dim:
        return False
    return _comparison_map(f, ab_a.projection, square.subalgebra).is_bijective


def extension_report(f: HopfMorphism, section: Optional[LinearMap] = None) -> ExtensionReport:
    surjective = f.is_surjective
    kernel = hopf_kernel(f)
    found = _section_or_none(f, section) if surjective else None
    normal = is_normal_extension(f) if surjective else False
    trivial = is_trivial_extension_galois(f) if surjective else False
    if trivial and not normal:
        raise CheckFailed(f"{f.name} is trivial but not normal", reference=f.name)
    commutator = huq_commutator(kernel, HopfSubalgebra.full(f.dom))
    return ExtensionReport(
        morphism=f.name,
        in_E=found is not None,
        is_surjective=surjective,
        is_trivial_galois=trivial,
        is_normal=normal,
        kernel_dim=kernel.dim,
        kernel_grouplike_basis=kernel.grouplike_labels(),
        commutator_with_kernel_dim=commutator.dim,
    )


@dataclass
class GaloisGroupoid:
    """ab applied to the kernel pair (Eq(f), pi1, pi2) with the diagonal as unit."""

    objects: Quotient
    arrows: Quotient
    source: HopfMorphism
    target: HopfMorphism
    unit: HopfMorphism

    def satisfies_unit_laws(self) -> bool:
        identity_cols = tuple({i: self.objects.algebra.field.one} for i in range(self.objects.algebra.dim))
        return (
            self.source.compose(self.unit).columns == identity_cols
            and self.target.compose(self.unit).columns == identity_cols
        )

    def automorphisms_of_zero(self, name: Optional[str] = None) -> HopfSubalgebra:
        """Hker(source) meet Hker(target) inside the arrows."""
        return meet(
            hopf_kernel(self.source), hopf_kernel(self.target), name=name or f"Aut(0)({self.arrows.algebra.name})"
        )


def galois_groupoid(f: HopfMorphism) -> GaloisGroupoid:
    require_surjective(f)
    pair = kernel_pair(f)
    objects = abelianization(f.dom)
    arrows = abelianization(pair.algebra)
    source = abelianize_morphism(pair.pi1, arrows, objects)
    target = abelianize_morphism(pair.pi2, arrows, objects)
    unit = abelianize_morphism(pair.refl, objects, arrows)
    groupoid = GaloisGroupoid(objects=objects, arrows=arrows, source=source, target=target, unit=unit)
    if not groupoid.satisfies_unit_laws():
        raise CheckFailed(f"Galois groupoid of {f.name} fails source o unit = id = target o unit")
    logger.debug("Gal(%s): %d objects, %d arrows", f.name, objects.algebra.dim, arrows.algebra.dim)
    return groupoid


def pi1(f: HopfMorphism, section: Optional[LinearMap] = None) -> HopfSubalgebra:
    """pi1(B) = Hker(f) meet [A, A] for a weakly universal normal extension f.

    Universality is not checkable from finite data and is taken on trust.
    """
    if not is_normal_extension(f):
        raise NotNormal(f"{f.name} is not a normal extension", reference=f.name)
    require_in_e(f, section)
    result = meet(hopf_kernel(f), derived_subalgebra(f.dom), name=f"pi1({f.cod.name})")
    result.require_hopf()
    algebra = result.algebra()
    if not (algebra.is_commutative and algebra.is_cocommutative):
        raise CheckFailed(f"{result.name} is not commutative and cocommutative")
    return result


def _hopf_element_condition(A: FinHopfAlgebra, f: HopfMorphism, a: int, b: int) -> dict:
    """b1 a1 (x) f(a2 b2 S(a3) S(b3)) as a sparse tensor in A (x) B."""
    one = A.field.one
    out: dict = {}
    legs_a = iterated_coproduct(A, {a: one}, 3)
    legs_b = iterated_coproduct(A, {b: one}, 3)
    for (a1, a2, a3), c in legs_a.items():
        for (b1, b2, b3), d in legs_b.items():
            head = A.mult.get((b1, a1), {})
            if not head:
                continue
            inner = A.mul_sparse(A.mult.get((a2, b2), {}), A.mul_sparse(A.antipode[a3], A.antipode[b3]))
            tail = f.apply_sparse(inner)
            for k, u in head.items():
                for m, v in tail.items():
                    _accumulate(out, (k, m), c * d * u * v)
    return out


def _commutator_element(A: FinHopfAlgebra, a: int, b: int) -> Sparse:
    """a1 b1 S(a2) S(b2)"""
    one = A.field.one
    out: Sparse = {}
    for (a1, a2), c in A.comult_sparse({a: one}).items():
        for (b1, b2), d in A.comult_sparse({b: one}).items():
            left = A.mult.get((a1, b1), {})
            right = A.mul_sparse(A.antipode[a2], A.antipode[b2])
            for k, v in A.mul_sparse(left, right).items():
                _accumulate(out, k, c * d * v)
    return out


def pi1_from_elements(f: HopfMorphism) -> HopfSubalgebra:
    """Algebra generated by the commutators a1 b1 S(a2) S(b2) of basis pairs
    satisfying b1 a1 (x) f(a2 b2 S(a3) S(b3)) = ba (x) 1.

    Exact when the basis of the domain consists of group-likes.
    """
    A, B = f.dom, f.cod
    generators = []
    for a in range(A.dim):
        for b in range(A.dim):
            expected: dict = {}
            for k, v in A.mult.get((b, a), {}).items():
                for u, w in B.unit_sparse.items():
                    _accumulate(expected, (k, u), v * w)
            if _hopf_element_condition(A, f, a, b) == expected:
                generators.append(to_dense(A.field, _commutator_element(A, a, b), A.dim))
    result = algebra_closure(A, generators, name=f"pi1({f.cod.name})")
    logger.debug("element description of pi1(%s) has dimension %d", f.cod.name, result.dim)
    return result


def pi1_from_groupoid(f: HopfMorphism) -> HopfSubalgebra:
    """Automorphisms of the base object in Gal(f); cross-checked in dimension
    against Hker(f) meet [A, A]."""
    groupoid = galois_groupoid(f)
    result = groupoid.automorphisms_of_zero(name=f"pi1({f.cod.name})")
    expected = meet(hopf_kernel(f), derived_subalgebra(f.dom))
    if result.dim != expected.dim:
        raise CheckFailed(
            f"groupoid pi1 has dimension {result.dim}, Hker meet [A,A] has {expected.dim}", reference=f.name
        )
    return result


def centralize(p: HopfMorphism) -> Tuple[HopfMorphism, HopfMorphism]:
    """Factor p through A / A[Hker(p), A]+; returns (f, pi) with f o pi = p and f normal."""
    require_surjective(p)
    A = p.dom
    commutator = huq_commutator(hopf_kernel(p), HopfSubalgebra.full(A))
    quotient = quotient_by_normal(A, commutator, name=f"{A.name}/[Hker,{A.name}]")
    f = induced_on_quotient(p, commutator, quotient)
    if not is_normal_extension(f):
        raise CheckFailed(f"centralization of {p.name} is not a normal extension", reference=p.name)
    return f, quotient.projection


def h2_direct(p: HopfMorphism, section: Optional[LinearMap] = None) -> FinHopfAlgebra:
    """(Hker(p) meet [P,P]) / (Hker(p) meet [P,P])[Hker(p), P]+ for a presentation p: P -> B."""
    require_surjective(p)
    require_in_e(p, section)
    P = p.dom
    kernel = hopf_kernel(p)
    middle = meet(kernel, derived_subalgebra(P), name=f"Hker^[{P.name},{P.name}]")
    middle.require_hopf()
    relative = huq_commutator(kernel, HopfSubalgebra.full(P))
    coords = []
    for vec in relative.basis:
        c = middle.coordinates(vec)
        if c is None:
            raise CheckFailed(f"[Hker({p.name}), {P.name}] is not inside Hker meet [P,P]")
        coords.append(c)
    inner = middle.algebra()
    normal = HopfSubalgebra(inner, Subspace.span(inner.field, inner.dim, coords), name=f"[Hker,{P.name}]")
    result = quotient_by_normal(inner, normal, name=f"H2({p.cod.name})").algebra
    logger.debug("direct H2(%s) has dimension %d", p.cod.name, result.dim)
    return result


def h2_group(group: FinGroup, field: Field, max_order: int = 16, normalized: bool = True) -> FinHopfAlgebra:
    """k[H2(Q, Z)] from the bar-resolution oracle."""
    homology = second_homology(group, max_order, normalized)
    return group_algebra(homology.abelian_group(), field, name=f"H2({field.name}[{group.name}])")


def h2(
    backend: str,
    presentation: Optional[HopfMorphism] = None,
    group: Optional[FinGroup] = None,
    field: Optional[Field] = None,
    max_order: int = 16,
    section: Optional[LinearMap] = None,
) -> FinHopfAlgebra:
    if backend == "direct":
        if presentation is None:
            raise NotInE("the direct backend needs a presentation")
        return h2_direct(presentation, section)
    if backend == "group":
        if group is None:
            raise MalformedStructure("the group backend needs a group")
        return h2_group(group, field or Field.rationals(), max_order)
    raise MalformedStructure(f"unknown H2 backend {backend!r}")
