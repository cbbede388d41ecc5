"""Unit tests for finite groups, extensions, the builtin zoo and free groups."""

import pytest

from coco_hopf.core.errors import MalformedStructure, NotASetSection, OrderBound, UnknownReference
from coco_hopf.groups.algebras import group_algebra, group_algebra_map, linearize_section
from coco_hopf.groups.finite import CentralExtensionModel, FinGroup, GroupHom, check_order, cycle_notation
from coco_hopf.groups.free import FreeGroup, free_counit_section_check, free_hopf_on_set
from coco_hopf.groups.zoo import EXTENSION_NAMES, GROUP_NAMES, named_extension, named_group

pytestmark = pytest.mark.unit


class TestFinGroup:
    """Test group constructors, labels and subgroup helpers."""

    def test_symmetric_group_labels(self):
        s3 = FinGroup.symmetric(3)
        assert s3.labels == ("e", "(23)", "(12)", "(123)", "(132)", "(13)")
        assert s3.mul(s3.index("(12)"), s3.index("(23)")) == s3.index("(123)")

    def test_dihedral_and_quaternion(self):
        d4 = FinGroup.dihedral(4)
        assert d4.labels == ("e", "r", "r^2", "r^3", "s", "sr", "sr^2", "sr^3")
        assert d4.element_order(d4.index("s")) == 2
        q8 = FinGroup.quaternion()
        assert q8.labels[:2] == ("1", "-1")
        assert q8.mul(q8.index("i"), q8.index("j")) == q8.index("k")
        assert q8.mul(q8.index("i"), q8.index("i")) == q8.index("-1")

    def test_cyclic_and_abelian(self):
        c4 = FinGroup.cyclic(4)
        assert c4.labels == ("e", "x", "x^2", "x^3")
        assert c4.power(c4.index("x"), -1) == c4.index("x^3")
        assert FinGroup.abelian([2, 1, 4]).order == 8
        assert FinGroup.abelian([1]).order == 1

    def test_direct_product(self):
        g = FinGroup.direct_product(named_group("C2"), named_group("C3"))
        assert g.order == 6
        assert g.is_abelian()
        assert g.abelian_invariants() == [6]

    def test_from_permutations(self):
        g = FinGroup.from_permutations([[1, 0, 2], [1, 2, 0]], name="Sym3")
        assert g.order == 6
        assert not g.is_abelian()
        with pytest.raises(MalformedStructure):
            FinGroup.from_permutations([[0, 0, 1]])

    def test_permutation_group_above_bound_is_refused(self):
        seven_cycle, transposition = [1, 2, 3, 4, 5, 6, 0], [1, 0, 2, 3, 4, 5, 6]
        with pytest.raises(OrderBound, match="order 5040"):
            FinGroup.from_permutations([seven_cycle, transposition], name="S7", max_order=120)

    def test_permutation_group_within_bound(self):
        g = FinGroup.from_permutations([[1, 2, 3, 0], [1, 0, 2, 3]], max_order=24)
        assert g.order == 24
        assert g.label(g.identity) == "e"
        assert g.labels[0] == "e"

    def test_invalid_tables(self):
        with pytest.raises(MalformedStructure):
            FinGroup([[0, 1], [0, 1]])
        with pytest.raises(MalformedStructure):
            FinGroup([[0, 1], [1, 0]], labels=["e", "e"])
        with pytest.raises(MalformedStructure):
            FinGroup([])

    def test_commutators_center_and_classes(self):
        q8 = named_group("Q8")
        assert q8.commutator_subgroup() == q8.center() == frozenset({0, 1})
        assert len(q8.conjugacy_classes()) == 5
        s3 = named_group("S3")
        assert s3.is_normal(s3.commutator_subgroup())
        assert not s3.is_normal({s3.identity, s3.index("(12)")})

    def test_subgroup_and_quotient(self):
        d4 = named_group("D4")
        sub, incl = d4.subgroup([0, 1, 2, 3], name="rot")
        assert sub.labels == ("e", "r", "r^2", "r^3")
        assert incl.images == (0, 1, 2, 3)
        q, proj = d4.quotient(d4.center())
        assert q.order == 4
        assert q.abelian_invariants() == [2, 2]
        assert proj.kernel() == d4.center()
        with pytest.raises(MalformedStructure):
            d4.subgroup([0, 4, 5])

    def test_cycle_notation(self):
        assert cycle_notation((1, 2, 0)) == "(123)"
        assert cycle_notation((0, 1, 2)) == "e"
        assert cycle_notation((1, 0, 3, 2)) == "(12)(34)"

    def test_order_bound(self):
        check_order(named_group("Q8"), 8)
        with pytest.raises(OrderBound):
            check_order(named_group("Q8"), 6)


class TestGroupHom:
    """Test homomorphisms given by label images."""

    def test_from_labels_follows_generators(self):
        phi = GroupHom.from_labels(named_group("C4"), named_group("C2"), {"x": "g"})
        assert phi.images == (0, 1, 0, 1)
        assert phi.kernel() == frozenset({0, 2})
        assert phi.is_surjective

    def test_non_multiplicative_labels(self):
        with pytest.raises(MalformedStructure):
            GroupHom.from_labels(named_group("C2"), named_group("C3"), {"g": "x"})

    def test_labels_that_do_not_generate(self):
        with pytest.raises(MalformedStructure):
            GroupHom.from_labels(named_group("V4"), named_group("C2"), {"a": "g"})

    def test_compose(self):
        v4 = named_extension("V4->C2").phi
        q8 = named_extension("Q8->V4").phi
        composite = v4.compose(q8)
        assert composite.source.name == "Q8"
        assert composite.is_surjective
        assert len(composite.kernel()) == 4


class TestExtensions:
    """Test surjections with kernels, sections and the builtin zoo."""

    def test_zoo_names(self):
        assert "Q8" in GROUP_NAMES
        for name in GROUP_NAMES:
            assert named_group(name).name == name
        for name in EXTENSION_NAMES:
            assert named_extension(name).phi.is_surjective
        with pytest.raises(UnknownReference):
            named_group("A5")
        with pytest.raises(UnknownReference):
            named_extension("S3->C3")

    @pytest.mark.parametrize(
        "name, central, stem",
        [("Q8->V4", True, True), ("D4->V4", True, True), ("C4->C2", True, False), ("S3->C2", False, False)],
    )
    def test_central_and_stem(self, name, central, stem):
        ext = named_extension(name)
        assert ext.is_central == central
        assert ext.is_stem == stem

    def test_non_surjective_map(self):
        c2 = named_group("C2")
        with pytest.raises(MalformedStructure):
            CentralExtensionModel(GroupHom(c2, c2, [0, 0]))

    def test_set_sections(self):
        ext = named_extension("Q8->V4")
        assert ext.canonical_section() == (0, 2, 4, 6)
        assert len(list(ext.set_sections())) == 8
        assert len(list(ext.set_sections(normalized=False))) == 16
        with pytest.raises(NotASetSection):
            ext.check_section((0, 0, 4, 6))

    def test_kernel_abelianization(self):
        # N = A3 and [S3, A3] = A3
        q, _ = named_extension("S3->C2").kernel_abelianization()
        assert q.order == 1
        q, _ = named_extension("Q8->V4").kernel_abelianization()
        assert q.order == 2

    def test_linearized_section(self, qq):
        ext = named_extension("C4->C2")
        s = linearize_section(ext.phi, (0, 3), qq)
        f = group_algebra_map(ext.phi, qq)
        assert f.compose(s).columns == ({0: qq.one}, {1: qq.one})
        with pytest.raises(NotASetSection):
            linearize_section(ext.phi, (0, 2), qq)

    def test_group_algebra_is_cached(self, qq):
        assert group_algebra(named_group("S3"), qq) is group_algebra(named_group("S3"), qq)
        assert group_algebra(named_group("S3"), qq).name == "Q[S3]"


class TestFreeGroups:
    """Test reduced words and the free Hopf algebra on a set."""

    def test_reduction(self):
        F = FreeGroup(["a", "b"])
        w = F.word("a", "b", "b^-1", "a^-1")
        assert w.is_identity
        assert F.format(F.word("a", "b^-1")) == "a b^-1"
        assert F.format(w) == "1"

    def test_inverse(self):
        F = FreeGroup(["a", "b"])
        w = F.word("a", "b")
        assert (w * w.inverse()).is_identity
        assert len(w.inverse()) == 2

    def test_enumeration(self):
        F = FreeGroup(["a", "b"])
        words = list(F.words(2))
        assert len(words) == 1 + 4 + 12
        assert len(set(words)) == len(words)

    def test_letters_of_spells_powers_out(self):
        F = FreeGroup(["a", "b"])
        w = F.word("a", "a", "b^-1")
        assert F.letters_of(w) == [(0, 1), (0, 1), (1, -1)]
        assert F.from_letters(F.letters_of(w)) == w

    def test_labels_that_are_not_symbol_names(self, qq):
        free = free_hopf_on_set(["(12)", "-1"], qq)
        assert free.group.format(free.group.word("(12)", "-1^-1")) == "(12) -1^-1"

    def test_bad_input(self):
        with pytest.raises(MalformedStructure):
            FreeGroup(["a", "a"])
        with pytest.raises(MalformedStructure):
            FreeGroup(["a"]).word("b")
        with pytest.raises(MalformedStructure):
            FreeGroup(["a"]).from_letters([(0, 2)])

    def test_lift_and_antipode(self, qq):
        free = free_hopf_on_set(["a", "b"], qq)
        lift = free.lift(named_group("S3"), {"a": "(12)", "b": "(23)"})
        ab = free.multiply(free.embed("a"), free.embed("b"))
        s3 = named_group("S3")
        assert lift(ab) == {s3.index("(123)"): qq.one}
        assert free.counit(ab) == qq.one
        assert lift(free.antipode(ab)) == {s3.index("(132)"): qq.one}

    @pytest.mark.parametrize("name", ["C3", "V4", "S3"])
    def test_counit_section(self, name):
        assert free_counit_section_check(named_group(name), max_length=2)
