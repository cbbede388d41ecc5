"""Sequences of Hopf algebras: the four-object sequence of a presentation and
the five-term sequence of a cleft extension, with exactness checks."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.hopf import FinHopfAlgebra, to_sparse, trivial_algebra
from ..algebra.morphism import (
    HopfMorphism,
    LinearMap,
    coinvariants,
    counit_morphism,
    hopf_kernel,
    identity,
    induced_on_quotient,
    unit_counit_map,
    unit_morphism,
)
from ..algebra.subquot import (
    HopfSubalgebra,
    Quotient,
    abelianization,
    abelianize_morphism,
    derived_subalgebra,
    huq_commutator,
    meet,
    quotient_by_normal,
    restrict_morphism,
)
from ..core.errors import CheckFailed, MalformedStructure, NotComposable
from ..core.field import Field
from ..core.linalg import Subspace
from ..groups.algebras import group_algebra, group_algebra_map
from ..groups.finite import CentralExtensionModel, GroupHom
from ..groups.homology import h2_induced_map, second_homology, transgression
from ..models.reports import NodeReport, SequenceReport
from .extensions import require_in_e, require_surjective

logger = logging.getLogger(__name__)


@dataclass
class HopfSequence:
    """nodes[0] -> nodes[1] -> ... with maps[i]: nodes[i] -> nodes[i + 1]."""

    name: str
    nodes: List[FinHopfAlgebra]
    maps: List[LinearMap]
    connecting: Optional[int] = None
    labels: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.maps) != len(self.nodes) - 1:
            raise MalformedStructure(f"{self.name}: {len(self.nodes)} nodes need {len(self.nodes) - 1} maps")
        for i, f in enumerate(self.maps):
            if f.dom != self.nodes[i] or f.cod != self.nodes[i + 1]:
                raise NotComposable(f"{self.name}: map {i} ({f.name}) does not fit its nodes")
        if not self.labels:
            self.labels = [node.name for node in self.nodes]

    def replace_map(self, index: int, new_map: LinearMap) -> "HopfSequence":
        maps = list(self.maps)
        maps[index] = new_map
        return HopfSequence(self.name, list(self.nodes), maps, self.connecting, list(self.labels))


def corrupt_map(f: LinearMap, i: int, j: int) -> LinearMap:
    """f with the images of basis vectors i and j swapped."""
    columns = list(f.columns)
    columns[i], columns[j] = columns[j], columns[i]
    return LinearMap(f.dom, f.cod, columns, f"{f.name}[{i}<->{j}]")


def check_exactness(s: HopfSequence) -> SequenceReport:
    """image(incoming) = Hker(outgoing) at every internal node; the last node
    must be hit surjectively."""
    reports = []
    failed = []
    all_complex = True
    last = len(s.nodes) - 1
    for idx, node in enumerate(s.nodes):
        incoming = s.maps[idx - 1] if idx > 0 else None
        outgoing = s.maps[idx] if idx < last else None
        image = incoming.image_subspace() if incoming is not None else None
        kernel = coinvariants(outgoing) if outgoing is not None else None
        is_complex = None
        is_exact = None
        if incoming is not None and outgoing is not None:
            composite = outgoing.compose(incoming)
            is_complex = composite.columns == unit_counit_map(incoming.dom, outgoing.cod).columns
            is_exact = is_complex and image == kernel
            all_complex = all_complex and is_complex
        elif incoming is not None:
            is_exact = incoming.is_surjective
        if is_exact is False:
            failed.append(idx)
        reports.append(
            NodeReport(
                index=idx,
                name=s.labels[idx],
                dim=node.dim,
                image_dim=image.dim if image is not None else None,
                kernel_dim=kernel.dim if kernel is not None else None,
                is_complex=is_complex,
                is_exact=is_exact,
            )
        )
    connecting = None
    if s.connecting is not None:
        connecting = s.maps[s.connecting].matrix.encode()
    logger.debug("%s: failed nodes %s", s.name, failed)
    return SequenceReport(
        name=s.name,
        nodes=reports,
        is_complex=all_complex,
        is_exact=not failed,
        failed_nodes=failed,
        connecting_map=connecting,
    )


def extension_sequence(f: HopfMorphism) -> HopfSequence:
    """k -> Hker(f) -> A -> B -> k"""
    require_surjective(f)
    kernel = hopf_kernel(f)
    K = kernel.algebra()
    k = trivial_algebra(f.dom.field)
    maps = [unit_morphism(K, k), kernel.inclusion(), f, counit_morphism(f.cod, k)]
    return HopfSequence(f"ext({f.name})", [k, K, f.dom, f.cod, k], maps)


def _inside(outer: HopfSubalgebra, inner: HopfSubalgebra, name: str) -> HopfSubalgebra:
    """``inner`` re-expressed as a subalgebra of ``outer.algebra()``."""
    coords = []
    for vec in inner.basis:
        c = outer.coordinates(vec)
        if c is None:
            raise CheckFailed(f"{inner.name} is not contained in {outer.name}")
        coords.append(c)
    algebra = outer.algebra()
    return HopfSubalgebra(algebra, Subspace.span(algebra.field, algebra.dim, coords), name=name)


def relative_abelianization(f: HopfMorphism) -> Tuple[HopfSubalgebra, HopfSubalgebra, Quotient]:
    """Hker(f) / Hker(f)[Hker(f), A]+ with the kernel and the relative commutator inside it."""
    kernel = hopf_kernel(f)
    commutator = huq_commutator(kernel, HopfSubalgebra.full(f.dom))
    inner = _inside(kernel, commutator, f"[Hker,{f.dom.name}]")
    q = quotient_by_normal(kernel.algebra(), inner, name=f"Hker({f.name})/[Hker,{f.dom.name}]")
    return kernel, inner, q


def lemma_ss_sequence(p: HopfMorphism, section: Optional[LinearMap] = None) -> HopfSequence:
    """k -> H2(B) -> [P,P]/[P,P][Hker(p),P]+ -> B -> H1(B) -> k for a presentation p: P -> B."""
    require_surjective(p)
    require_in_e(p, section)
    P, B = p.dom, p.cod
    k = trivial_algebra(P.field)
    kernel = hopf_kernel(p)
    derived = derived_subalgebra(P)
    relative = huq_commutator(kernel, HopfSubalgebra.full(P))
    # [P,P] / [P,P][Hker(p),P]+
    rel_in_derived = _inside(derived, relative, f"[Hker,{P.name}]")
    middle = quotient_by_normal(derived.algebra(), rel_in_derived, name=f"[{P.name},{P.name}]/[Hker,{P.name}]")
    # Hker(p) meet [P,P] modulo the same commutator
    both = meet(kernel, derived, name=f"Hker^[{P.name},{P.name}]")
    both.require_hopf()
    rel_in_both = _inside(both, relative, f"[Hker,{P.name}]")
    h2 = quotient_by_normal(both.algebra(), rel_in_both, name=f"H2({B.name})")
    to_middle = induced_on_quotient(
        middle.projection.compose(both.inclusion_into(derived)), rel_in_both, h2
    )
    to_b = induced_on_quotient(p.compose(derived.inclusion()), rel_in_derived, middle)
    ab = abelianization(B)
    maps = [unit_morphism(h2.algebra, k), to_middle, to_b, ab.projection, counit_morphism(ab.algebra, k)]
    nodes = [k, h2.algebra, middle.algebra, B, ab.algebra, k]
    return HopfSequence(f"lemma({p.name})", nodes, maps)


# Five-term sequence


def _five_term_tail(f: HopfMorphism) -> Tuple[Quotient, Quotient, HopfSubalgebra, HopfSubalgebra, Quotient, List[LinearMap]]:
    """Mid -> H1(A) -> H1(B) -> k together with the pieces later maps need."""
    ab_a = abelianization(f.dom)
    ab_b = abelianization(f.cod)
    kernel, inner, mid = relative_abelianization(f)
    to_h1 = induced_on_quotient(ab_a.projection.compose(kernel.inclusion()), inner, mid)
    h1f = abelianize_morphism(f, ab_a, ab_b)
    k = trivial_algebra(f.dom.field)
    return ab_a, ab_b, kernel, inner, mid, [to_h1, h1f, counit_morphism(ab_b.algebra, k)]


def _group_connecting_map(
    ext: CentralExtensionModel, field_: Field, h2_b: FinHopfAlgebra, kernel: HopfSubalgebra, mid: Quotient,
    max_order: int, normalized: bool,
) -> HopfMorphism:
    homology = second_homology(ext.Q, max_order, normalized)
    quotient_group, proj = ext.kernel_abelianization()
    _, incl = ext.G.subgroup(ext.N)
    generators = [transgression(ext, z) for z in homology.cycles]
    A = group_algebra(ext.G, field_)
    columns = []
    for element in homology.abelian_group().elements:
        digits = []
        rest = element
        for d in reversed(homology.invariant_factors):
            digits.append(rest % d)
            rest //= d
        digits.reverse()
        value = quotient_group.identity
        for c, t in zip(digits, generators):
            value = quotient_group.mul(value, quotient_group.power(t, c))
        local = next(i for i in range(len(incl.images)) if proj(i) == value)
        coords = kernel.coordinates(A.basis_vector(incl(local)))
        if coords is None:
            raise CheckFailed(f"transgression of {ext.name} leaves the kernel")
        columns.append(mid.projection.apply_sparse(to_sparse(coords)))
    return HopfMorphism(h2_b, mid.algebra, columns, f"delta({ext.name})")


def five_term_group(
    ext: CentralExtensionModel, field_: Optional[Field] = None, max_order: int = 16, normalized: bool = True
) -> HopfSequence:
    """H2(A) -> H2(B) -> Hker/Hker[Hker,A]+ -> H1(A) -> H1(B) -> k for A = k[G], B = k[Q]."""
    field_ = field_ or Field.rationals()
    f = group_algebra_map(ext.phi, field_, name=f"k[{ext.name}]")
    require_in_e(f)
    h2_map = group_algebra_map(h2_induced_map(ext.phi, max_order, normalized).as_group_hom(), field_, name=f"H2({ext.name})")
    ab_a, ab_b, kernel, _, mid, tail = _five_term_tail(f)
    delta = _group_connecting_map(ext, field_, h2_map.cod, kernel, mid, max_order, normalized)
    maps = [h2_map, delta] + tail
    nodes = [h2_map.dom, h2_map.cod, mid.algebra, ab_a.algebra, ab_b.algebra, tail[-1].cod]
    labels = ["H2(A)", "H2(B)", "Hker/[Hker,A]", "H1(A)", "H1(B)", "k"]
    return HopfSequence(f"five-term({ext.name})", nodes, maps, connecting=1, labels=labels)


def five_term_direct(
    f: HopfMorphism, presentation: Optional[HopfMorphism] = None, section: Optional[LinearMap] = None
) -> HopfSequence:
    """Five-term sequence from the Hopf formula, presenting B by f o p for p: P -> A.

    The H2 nodes are only correct when H2(P) -> H2(A) is zero, as for a
    Schur cover P of A.
    """
    if presentation is None:
        raise MalformedStructure(f"the direct backend needs a presentation of {f.dom.name}")
    require_surjective(f)
    require_in_e(f, section)
    p = presentation
    if p.cod != f.dom:
        raise NotComposable(f"{p.name} does not present {f.dom.name}")
    P = p.dom
    require_in_e(p)
    fp = f.compose(p)
    ab_a, ab_b, kernel, inner, mid, tail = _five_term_tail(f)

    derived = derived_subalgebra(P)
    full = HopfSubalgebra.full(P)
    ker_p, ker_fp = hopf_kernel(p), hopf_kernel(fp)
    both_p = meet(ker_p, derived).require_hopf()
    both_fp = meet(ker_fp, derived).require_hopf()
    rel_p = _inside(both_p, huq_commutator(ker_p, full), "[Hker(p),P]")
    rel_fp = _inside(both_fp, huq_commutator(ker_fp, full), "[Hker(fp),P]")
    q_a = quotient_by_normal(both_p.algebra(), rel_p, name=f"H2({f.dom.name})")
    q_b = quotient_by_normal(both_fp.algebra(), rel_fp, name=f"H2({f.cod.name})")
    # H2(A) -> H2(B) induced by Hker(p) inside Hker(fp)
    h2_map = induced_on_quotient(q_b.projection.compose(both_p.inclusion_into(both_fp)), rel_p, q_a)
    # H2(B) -> Mid induced by p restricted to Hker(fp) -> Hker(f)
    restricted = restrict_morphism(p, both_fp, kernel)
    delta = induced_on_quotient(mid.projection.compose(restricted), rel_fp, q_b)
    maps = [h2_map, delta] + tail
    nodes = [q_a.algebra, q_b.algebra, mid.algebra, ab_a.algebra, ab_b.algebra, tail[-1].cod]
    labels = ["H2(A)", "H2(B)", "Hker/[Hker,A]", "H1(A)", "H1(B)", "k"]
    return HopfSequence(f"five-term({f.name})", nodes, maps, connecting=1, labels=labels)


def five_term(
    backend: str,
    ext: Optional[CentralExtensionModel] = None,
    f: Optional[HopfMorphism] = None,
    presentation: Optional[HopfMorphism] = None,
    field_: Optional[Field] = None,
    max_order: int = 16,
) -> HopfSequence:
    if backend == "group":
        if ext is None:
            raise MalformedStructure("the group backend needs a group extension")
        return five_term_group(ext, field_, max_order)
    if backend == "direct":
        if f is None:
            if ext is None:
                raise MalformedStructure("the direct backend needs a morphism")
            f = group_algebra_map(ext.phi, field_ or Field.rationals(), name=f"k[{ext.name}]")
        if presentation is None:
            raise MalformedStructure("the direct backend needs a presentation")
        return five_term_direct(f, presentation)
    raise MalformedStructure(f"unknown five-term backend {backend!r}")


@dataclass
class NaturalityReport:
    squares: List[bool]

    @property
    def commutes(self) -> bool:
        return all(self.squares)


def five_term_naturality(
    top: CentralExtensionModel,
    bottom: CentralExtensionModel,
    alpha: GroupHom,
    beta: GroupHom,
    field_: Optional[Field] = None,
    max_order: int = 16,
) -> NaturalityReport:
    """Vertical maps between the five-term sequences of a morphism of extensions
    (alpha: G -> G', beta: Q -> Q') and whether every square commutes."""
    field_ = field_ or Field.rationals()
    if alpha.source != top.G or alpha.target != bottom.G or beta.source != top.Q or beta.target != bottom.Q:
        raise NotComposable(f"({alpha!r}, {beta!r}) is not a morphism {top.name} => {bottom.name}")
    if bottom.phi.compose(alpha).images != beta.compose(top.phi).images:
        raise NotComposable(f"({alpha!r}, {beta!r}) does not commute with the extensions")
    upper = five_term_group(top, field_, max_order)
    lower = five_term_group(bottom, field_, max_order)
    k_alpha = group_algebra_map(alpha, field_)
    k_beta = group_algebra_map(beta, field_)

    f_top = group_algebra_map(top.phi, field_)
    f_bottom = group_algebra_map(bottom.phi, field_)
    ker_top, inner_top, mid_top = relative_abelianization(f_top)
    ker_bottom, _, mid_bottom = relative_abelianization(f_bottom)
    on_kernel = restrict_morphism(k_alpha, ker_top, ker_bottom)
    on_mid = induced_on_quotient(mid_bottom.projection.compose(on_kernel), inner_top, mid_top)

    verticals: List[LinearMap] = [
        group_algebra_map(h2_induced_map(alpha, max_order).as_group_hom(), field_),
        group_algebra_map(h2_induced_map(beta, max_order).as_group_hom(), field_),
        on_mid,
        abelianize_morphism(k_alpha),
        abelianize_morphism(k_beta),
        identity(upper.nodes[-1]),
    ]
    squares = []
    for i, (f_up, f_down) in enumerate(zip(upper.maps, lower.maps)):
        left = f_down.compose(verticals[i]).columns
        right = verticals[i + 1].compose(f_up).columns
        squares.append(left == right)
    logger.debug("naturality %s => %s: %s", top.name, bottom.name, squares)
    return NaturalityReport(squares=squares)


def sequence_summary(s: HopfSequence) -> Dict[str, object]:
    report = check_exactness(s)
    return report.model_dump()


def exact_at(s: HopfSequence, nodes: Sequence[int]) -> bool:
    report = check_exactness(s)
    return all(report.nodes[i].is_exact for i in nodes)
