"""Unit tests for extension classification, pi1, H2 backends and class E sections."""

import pytest

from coco_hopf.algebra.hopf import grouplike_group
from coco_hopf.algebra.morphism import identity
from coco_hopf.core.errors import MalformedStructure, NotASection, NotInE, NotInvertible, NotNormal, NotSurjective
from coco_hopf.galois.class_e import compose_sections, divide_section, iso_section, pullback_section
from coco_hopf.galois.extensions import (
    centralize,
    extension_report,
    find_coalgebra_section,
    galois_groupoid,
    h2,
    h2_direct,
    h2_group,
    is_normal_extension,
    is_trivial_extension_galois,
    pi1,
    pi1_from_elements,
    pi1_from_groupoid,
    require_in_e,
    validate_section,
)
from coco_hopf.groups.algebras import group_algebra_map, linearize_section
from coco_hopf.groups.finite import GroupHom
from coco_hopf.groups.homology import abelian_invariants
from coco_hopf.groups.zoo import named_extension, named_group

pytestmark = pytest.mark.unit


@pytest.fixture
def inclusion(qq):
    """k[C2] -> k[C4], g -> x^2; injective but not surjective."""
    return group_algebra_map(GroupHom(named_group("C2"), named_group("C4"), [0, 2]), qq, name="incl")


@pytest.fixture
def section_of(qq):
    def _section(name):
        ext = named_extension(name)
        return linearize_section(ext.phi, ext.canonical_section(), qq)

    return _section


class TestExtensionReports:
    """Test the classification of surjective Hopf morphisms."""

    def test_quaternion_extension(self, ext_map):
        report = extension_report(ext_map("Q8->V4"))
        assert report.in_E
        assert report.is_normal
        assert not report.is_trivial_galois
        assert report.kernel_dim == 2
        assert report.kernel_grouplike_basis == ["1", "-1"]
        assert report.commutator_with_kernel_dim == 1

    def test_split_central_extension_is_trivial(self, ext_map):
        report = extension_report(ext_map("V4->C2"))
        assert report.is_trivial_galois
        assert report.is_normal

    def test_non_central_kernel(self, ext_map):
        f = ext_map("S3->C2")
        report = extension_report(f)
        assert not report.is_normal
        assert not report.is_trivial_galois
        assert report.commutator_with_kernel_dim == 3
        assert not is_normal_extension(f)

    @pytest.mark.parametrize("name", ["C4->C2", "C6->C3", "D4->V4"])
    def test_trivial_implies_normal(self, ext_map, name):
        f = ext_map(name)
        if is_trivial_extension_galois(f):
            assert is_normal_extension(f)

    def test_non_surjective_map(self, inclusion):
        with pytest.raises(NotSurjective):
            is_normal_extension(inclusion)
        report = extension_report(inclusion)
        assert not report.is_surjective
        assert not report.in_E


class TestSections:
    """Test membership in the class E of cleft surjections."""

    def test_found_section_splits(self, ext_map):
        f = ext_map("C4->C2")
        s = find_coalgebra_section(f)
        assert s is not None
        assert f.compose(s).columns == ({0: f.dom.field.one}, {1: f.dom.field.one})

    def test_no_section_for_non_surjective_map(self, inclusion):
        assert find_coalgebra_section(inclusion) is None
        with pytest.raises(NotInE):
            require_in_e(inclusion)

    def test_validate_rejects_wrong_direction(self, ext_map, section_of):
        with pytest.raises(NotASection):
            validate_section(ext_map("C4->C2"), section_of("S3->C2"))

    def test_iso_section(self, kg):
        A = kg("S3")
        s = iso_section(identity(A))
        assert s.columns == identity(A).columns

    def test_non_iso_has_no_inverse(self, ext_map):
        with pytest.raises(NotInvertible):
            iso_section(ext_map("C4->C2"))

    def test_pullback_section(self, ext_map, section_of):
        square, t = pullback_section(ext_map("C4->C2"), section_of("C4->C2"), ext_map("S3->C2"))
        assert square.algebra.dim == 12
        assert square.second.compose(t).columns == tuple({i: t.dom.field.one} for i in range(6))

    def test_compose_and_divide(self, ext_map, section_of):
        f, g = ext_map("Q8->V4"), ext_map("V4->C2")
        gf, st = compose_sections(f, section_of("Q8->V4"), g, section_of("V4->C2"))
        assert gf.cod == g.cod
        assert gf.compose(st).columns == ({0: st.dom.field.one}, {1: st.dom.field.one})
        r = divide_section(f, g, st)
        assert g.compose(r).columns == gf.compose(st).columns


class TestFundamentalGroup:
    """Test the three descriptions of pi1."""

    @pytest.mark.parametrize("name", ["Q8->V4", "D4->V4"])
    def test_pi1_of_stem_extension(self, ext_map, name):
        f = ext_map(name)
        sub = pi1(f)
        assert sub.dim == 2
        assert abelian_invariants(grouplike_group(sub.algebra())) == [2]
        assert pi1_from_elements(f).subspace == sub.subspace
        assert pi1_from_groupoid(f).dim == sub.dim

    def test_pi1_needs_normal_extension(self, ext_map):
        with pytest.raises(NotNormal):
            pi1(ext_map("S3->C2"))

    def test_groupoid_unit_laws(self, ext_map):
        groupoid = galois_groupoid(ext_map("Q8->V4"))
        assert groupoid.satisfies_unit_laws()
        assert groupoid.objects.algebra.dim == 4

    def test_centralize(self, ext_map):
        p = ext_map("S3->C2")
        f, projection = centralize(p)
        assert f.dom.dim == 2
        assert f.is_bijective
        assert f.compose(projection).columns == p.columns


class TestSecondHomologyBackends:
    """Test the Hopf formula against the bar-resolution oracle."""

    @pytest.mark.parametrize("name", ["Q8->V4", "D4->V4", "C4->C2", "C6->C3"])
    def test_backends_agree(self, qq, ext_map, name):
        ext = named_extension(name)
        direct = h2_direct(ext_map(name))
        oracle = h2_group(ext.Q, qq)
        assert direct.dim == oracle.dim
        assert abelian_invariants(grouplike_group(direct)) == abelian_invariants(grouplike_group(oracle))

    def test_klein_group_multiplier(self, qq, ext_map):
        assert h2("group", group=named_group("V4"), field=qq).dim == 2
        assert h2("direct", presentation=ext_map("Q8->V4")).dim == 2

    def test_backend_arguments(self, qq):
        with pytest.raises(NotInE):
            h2("direct")
        with pytest.raises(MalformedStructure):
            h2("group")
        with pytest.raises(MalformedStructure):
            h2("spectral", group=named_group("C2"), field=qq)
