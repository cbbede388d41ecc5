"""Unit tests for morphisms, Hopf kernels, pullbacks and kernel pairs."""

import pytest

from coco_hopf.algebra.morphism import (
    CoalgebraMap,
    HopfMorphism,
    LinearMap,
    coinvariants,
    convolution,
    convolution_inverse,
    counit_morphism,
    hopf_kernel,
    identity,
    image,
    induced_on_quotient,
    is_trivial_morphism,
    kernel_pair,
    kernel_pair_dim,
    pullback,
    unit_counit_map,
)
from coco_hopf.algebra.subquot import HopfSubalgebra, derived_subalgebra
from coco_hopf.core.errors import DoesNotFactor, InvalidMorphism, NotComposable
from coco_hopf.groups.algebras import group_algebra_map
from coco_hopf.groups.zoo import named_extension

pytestmark = pytest.mark.unit


class TestMorphismChecks:
    """Test validation of linear, coalgebra and Hopf maps."""

    def test_group_algebra_map_is_hopf(self, ext_map):
        f = ext_map("S3->C2")
        checked = HopfMorphism(f.dom, f.cod, f.columns, "checked")
        assert checked.is_surjective
        assert not checked.is_injective

    def test_non_multiplicative_map(self, kg):
        A = kg("C2")
        # g -> e keeps group-likes; e -> g does too but breaks the unit
        CoalgebraMap(A, A, [{0: 1}, {0: 1}])
        with pytest.raises(InvalidMorphism):
            HopfMorphism(A, A, [{1: 1}, {0: 1}])

    def test_non_coalgebra_map(self, kg):
        A = kg("C2")
        with pytest.raises(InvalidMorphism):
            CoalgebraMap(A, A, [{0: 1}, {0: 1, 1: 1}])

    def test_wrong_number_of_columns(self, kg):
        with pytest.raises(InvalidMorphism):
            LinearMap(kg("C2"), kg("C2"), [{0: 1}])

    def test_composition_keeps_type(self, ext_map):
        f = ext_map("Q8->V4")
        g = ext_map("V4->C2")
        assert isinstance(g.compose(f), HopfMorphism)
        assert (g @ f).cod == g.cod
        with pytest.raises(NotComposable):
            f.compose(g)

    def test_identity_and_counit(self, kg):
        A = kg("S3")
        assert identity(A).is_bijective
        assert is_trivial_morphism(counit_morphism(A))


class TestConvolution:
    """Test the convolution algebra Hom(C, A)."""

    def test_antipode_is_inverse_of_identity(self, kg):
        A = kg("S3")
        inv = convolution_inverse(identity(A))
        assert inv.columns == A.antipode
        assert convolution(identity(A), inv).columns == unit_counit_map(A, A).columns


class TestKernels:
    """Test Hopf kernels and coinvariants."""

    @pytest.mark.parametrize(
        "name, dim",
        [("C4->C2", 2), ("Q8->V4", 2), ("S3->C2", 3), ("D4->V4", 2), ("V4->V4/a", 2), ("C6->C3", 2)],
    )
    def test_kernel_dimension(self, ext_map, name, dim):
        kernel = hopf_kernel(ext_map(name))
        assert kernel.dim == dim
        assert kernel.is_hopf_subalgebra
        assert kernel.dim == len(named_extension(name).N)

    def test_kernel_of_quaternion_map_is_center_pair(self, ext_map):
        kernel = hopf_kernel(ext_map("Q8->V4"))
        assert kernel.grouplike_labels() == ["1", "-1"]

    def test_coinvariants_of_identity(self, kg):
        assert coinvariants(identity(kg("S3"))).dim == 1

    def test_image(self, ext_map):
        assert image(ext_map("S3->C2")).dim == 2


class TestPullbacks:
    """Test pullbacks and kernel pairs."""

    def test_pullback_dimension(self, ext_map):
        # C4 x_C2 V4 is a group of order 8
        square = pullback(ext_map("C4->C2"), ext_map("V4->C2"))
        assert square.algebra.dim == 8
        assert ext_map("C4->C2").compose(square.first).columns == ext_map("V4->C2").compose(square.second).columns

    def test_pullback_needs_common_codomain(self, ext_map):
        with pytest.raises(NotComposable):
            pullback(ext_map("C4->C2"), ext_map("C6->C3"))

    @pytest.mark.parametrize("name", ["C4->C2", "S3->C2", "V4->C2"])
    def test_kernel_pair(self, ext_map, name):
        f = ext_map(name)
        pair = kernel_pair(f)
        assert pair.dim == f.dom.dim * len(named_extension(name).N)
        assert pair.dim == kernel_pair_dim(f)
        ones = tuple({i: f.dom.field.one} for i in range(f.dom.dim))
        assert pair.pi1.compose(pair.refl).columns == ones
        assert pair.pi2.compose(pair.refl).columns == ones


class TestInducedMaps:
    """Test factorization through quotients."""

    def test_factor_through_kernel_quotient(self, ext_map):
        f = ext_map("S3->C2")
        induced = induced_on_quotient(f, hopf_kernel(f))
        assert induced.is_bijective

    def test_map_that_does_not_factor(self, ext_map):
        f = ext_map("S3->C2")
        # the identity of k[S3] does not kill the augmentation of [S3, S3]
        with pytest.raises(DoesNotFactor):
            induced_on_quotient(identity(f.dom), derived_subalgebra(f.dom))

    def test_group_algebra_map_columns(self, qq):
        ext = named_extension("C4->C2")
        f = group_algebra_map(ext.phi, qq)
        assert [next(iter(col)) for col in f.columns] == [0, 1, 0, 1]

    def test_full_subalgebra_flags(self, kg):
        full = HopfSubalgebra.full(kg("C3"))
        assert set(full.flags().values()) == {"yes"}
