"""Unit tests for Hopf subalgebras, commutators, centers and quotients."""

import pytest

from coco_hopf.algebra.hopf import verify_axioms
from coco_hopf.algebra.morphism import hopf_kernel
from coco_hopf.algebra.subquot import (
    Flag,
    HopfSubalgebra,
    abelianization,
    abelianize_morphism,
    algebra_closure,
    center,
    derived_subalgebra,
    huq_commutator,
    meet,
    quotient_by_normal,
    restrict_morphism,
    subspace_of,
)
from coco_hopf.core.errors import AmbientMismatch, CheckFailed, NotNormal
from coco_hopf.groups.algebras import subgroup_subalgebra
from coco_hopf.groups.zoo import named_group

pytestmark = pytest.mark.unit


class TestCommutators:
    """Test the Huq commutator of Hopf subalgebras."""

    @pytest.mark.parametrize("name, dim", [("S3", 3), ("Q8", 2), ("D4", 2), ("V4", 1), ("C6", 1)])
    def test_derived_subalgebra_is_commutator_subgroup(self, kg, name, dim):
        derived = derived_subalgebra(kg(name))
        assert derived.dim == dim
        assert derived.dim == len(named_group(name).commutator_subgroup())
        assert derived.is_normal == Flag.YES

    def test_derived_subalgebra_of_s3_is_a3(self, kg):
        assert derived_subalgebra(kg("S3")).grouplike_labels() == ["e", "(123)", "(132)"]

    def test_commutator_with_central_kernel_is_trivial(self, kg, ext_map):
        f = ext_map("Q8->V4")
        kernel = hopf_kernel(f)
        assert huq_commutator(kernel, HopfSubalgebra.full(f.dom)).dim == 1

    def test_commutator_with_non_central_kernel(self, ext_map):
        f = ext_map("S3->C2")
        commutator = huq_commutator(hopf_kernel(f), HopfSubalgebra.full(f.dom))
        assert commutator.dim == 3

    def test_commutator_needs_common_parent(self, kg):
        with pytest.raises(AmbientMismatch):
            huq_commutator(HopfSubalgebra.full(kg("C2")), HopfSubalgebra.full(kg("C3")))


class TestCenter:
    """Test centers and their closure flags."""

    def test_center_of_commutative_algebra(self, kg):
        Z = center(kg("V4"))
        assert Z.dim == 4
        assert Z.is_hopf_subalgebra

    def test_center_of_s3_is_not_a_subcoalgebra(self, kg):
        Z = center(kg("S3"))
        # one class sum per conjugacy class
        assert Z.dim == 3
        assert Z.contains_unit == Flag.YES
        assert Z.mult_closed == Flag.YES
        assert Z.comult_closed == Flag.NO
        assert Z.is_normal == Flag.UNCHECKED

    def test_summary(self, kg):
        report = center(kg("S3")).summary()
        assert report.dim == 3
        assert report.grouplike_basis is None
        assert len(report.basis) == 3 and all(len(row) == 6 for row in report.basis)
        assert report.flags["comult_closed"] == "no"

    def test_center_of_q8(self, kg):
        Z = center(kg("Q8"))
        assert Z.dim == 5
        assert not Z.is_hopf_subalgebra


class TestSubobjects:
    """Test closures, meets and restrictions."""

    def test_algebra_closure_of_a_generator(self, kg):
        A = kg("C6")
        sub = algebra_closure(A, [A.basis_vector(A.index("x^2"))])
        assert sub.dim == 3
        assert sub.is_hopf_subalgebra

    def test_span_that_is_not_closed(self, kg):
        A = kg("C4")
        sub = subspace_of(A, [A.unit, A.basis_vector(1)])
        assert not sub.check_closure()
        with pytest.raises(CheckFailed):
            sub.require_hopf()

    def test_meet(self, qq):
        G = named_group("D4")
        rotations = subgroup_subalgebra(G, [G.index(x) for x in ("e", "r", "r^2", "r^3")], qq)
        reflections = subgroup_subalgebra(G, [G.index(x) for x in ("e", "r^2", "s", "sr^2")], qq)
        both = meet(rotations, reflections)
        assert both.dim == 2
        assert both.grouplike_labels() == ["e", "r^2"]

    def test_restricted_algebra(self, kg):
        A = kg("S3")
        derived = derived_subalgebra(A)
        B = derived.algebra()
        assert B.dim == 3
        assert B.labels == ("e", "(123)", "(132)")
        assert verify_axioms(B).passed
        assert derived.inclusion().is_injective

    def test_restrict_morphism(self, ext_map):
        f = ext_map("Q8->V4")
        kernel = hopf_kernel(f)
        restricted = restrict_morphism(f, kernel, HopfSubalgebra.unit(f.cod))
        assert restricted.dom.dim == 2
        assert restricted.cod.dim == 1


class TestQuotients:
    """Test quotients by normal Hopf subalgebras and abelianization."""

    def test_quotient_by_kernel(self, ext_map):
        f = ext_map("Q8->V4")
        q = quotient_by_normal(f.dom, hopf_kernel(f))
        assert q.algebra.dim == 4
        assert q.projection.is_surjective
        assert verify_axioms(q.algebra).passed
        assert q.algebra.is_commutative

    def test_quotient_by_non_normal_subalgebra(self, qq):
        G = named_group("S3")
        K = subgroup_subalgebra(G, [G.index("e"), G.index("(12)")], qq)
        with pytest.raises(NotNormal):
            quotient_by_normal(K.parent, K)

    @pytest.mark.parametrize("name, dim", [("S3", 2), ("Q8", 4), ("D4", 4), ("C4", 4)])
    def test_abelianization(self, kg, name, dim):
        q = abelianization(kg(name))
        assert q.algebra.dim == dim
        assert q.algebra.is_commutative
        assert q.algebra.name == f"H1(Q[{name}])"

    def test_abelianize_morphism(self, ext_map):
        f = ext_map("S3->C2")
        h1f = abelianize_morphism(f)
        # H1(S3) = C2 maps isomorphically onto H1(C2) = C2
        assert h1f.is_bijective

    def test_abelianized_quaternion_map_is_iso(self, ext_map):
        assert abelianize_morphism(ext_map("Q8->V4")).is_bijective
