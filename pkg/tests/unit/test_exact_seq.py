"""Unit tests for Hopf sequences, the five-term sequence and its naturality."""

import pytest

from coco_hopf.core.errors import MalformedStructure, NotComposable
from coco_hopf.galois.exact_seq import (
    HopfSequence,
    check_exactness,
    corrupt_map,
    exact_at,
    extension_sequence,
    five_term,
    five_term_direct,
    five_term_group,
    five_term_naturality,
    lemma_ss_sequence,
    sequence_summary,
)
from coco_hopf.algebra.morphism import identity
from coco_hopf.groups.algebras import group_algebra_map
from coco_hopf.groups.finite import FinGroup, GroupHom
from coco_hopf.groups.zoo import EXTENSION_NAMES, named_extension, naturality_example

pytestmark = pytest.mark.unit


class TestHopfSequence:
    """Test sequence construction and the exactness checker."""

    def test_maps_must_fit_nodes(self, ext_map):
        f = ext_map("C4->C2")
        with pytest.raises(MalformedStructure):
            HopfSequence("bad", [f.dom, f.cod], [])
        with pytest.raises(NotComposable):
            HopfSequence("bad", [f.cod, f.dom], [f])

    @pytest.mark.parametrize("name", ["Q8->V4", "S3->C2", "C6->C3"])
    def test_extension_sequence_is_exact(self, ext_map, name):
        report = check_exactness(extension_sequence(ext_map(name)))
        assert report.is_complex
        assert report.is_exact
        assert report.failed_nodes == []

    def test_corrupted_map_fails_at_its_node(self, ext_map):
        f = ext_map("Q8->V4")
        seq = extension_sequence(f)
        # swap -1 (in the kernel) with i (mapped to a)
        broken = seq.replace_map(2, corrupt_map(f, f.dom.index("-1"), f.dom.index("i")))
        report = check_exactness(broken)
        assert report.failed_nodes == [2]
        assert not report.is_exact
        assert report.nodes[2].is_complex is False

    def test_summary_and_exact_at(self, ext_map):
        seq = extension_sequence(ext_map("S3->C2"))
        summary = sequence_summary(seq)
        assert summary["is_exact"]
        assert [node["dim"] for node in summary["nodes"]] == [1, 3, 6, 2, 1]
        assert exact_at(seq, [1, 2, 3])


class TestFiveTermSequence:
    """Test H2(A) -> H2(B) -> Hker/[Hker,A] -> H1(A) -> H1(B) -> k."""

    @pytest.mark.parametrize("name", EXTENSION_NAMES)
    def test_group_backend_is_exact(self, name):
        report = check_exactness(five_term_group(named_extension(name)))
        assert report.is_exact, report.failed_nodes

    def test_quaternion_node_dimensions(self):
        seq = five_term_group(named_extension("Q8->V4"))
        assert [node.dim for node in seq.nodes] == [1, 2, 2, 4, 4, 1]
        report = check_exactness(seq)
        assert report.connecting_map is not None
        assert seq.labels[1] == "H2(B)"

    def test_direct_backend(self, ext_map):
        f = ext_map("Q8->V4")
        # H2(Q8) = 0, so Q8 presents itself
        seq = five_term_direct(f, identity(f.dom))
        assert [node.dim for node in seq.nodes] == [1, 2, 2, 4, 4, 1]
        assert check_exactness(seq).is_exact

    def test_direct_backend_needs_presentation(self, ext_map):
        with pytest.raises(MalformedStructure):
            five_term_direct(ext_map("Q8->V4"))
        with pytest.raises(MalformedStructure):
            five_term("direct", ext=named_extension("D4->V4"))

    def test_direct_backend_with_nontrivial_h2(self, qq, ext_map):
        f = ext_map("D4->V4")
        # D8 -> D4, r -> r, s -> s, with central kernel <r^4>
        cover = GroupHom(
            FinGroup.dihedral(8), FinGroup.dihedral(4), [(a // 8) * 4 + (a % 8) % 4 for a in range(16)]
        )
        p = group_algebra_map(cover, qq, name="D8->D4")
        direct = five_term("direct", f=f, presentation=p)
        group = five_term_group(named_extension("D4->V4"))
        assert [node.dim for node in direct.nodes] == [2, 2, 2, 4, 4, 1]
        assert [node.dim for node in direct.nodes] == [node.dim for node in group.nodes]
        assert check_exactness(direct).is_exact

    def test_identity_presentation_misses_h2(self, ext_map):
        f = ext_map("D4->V4")
        # H2(D4) = C2 is invisible when D4 presents itself
        assert five_term_direct(f, identity(f.dom)).nodes[0].dim == 1

    def test_backend_dispatch(self, ext_map):
        ext = named_extension("C4->C2")
        f = ext_map("C4->C2")
        assert five_term("group", ext=ext).connecting == 1
        assert five_term("direct", ext=ext, presentation=identity(f.dom)).nodes[-1].dim == 1
        with pytest.raises(MalformedStructure):
            five_term("group")
        with pytest.raises(MalformedStructure):
            five_term("direct")
        with pytest.raises(MalformedStructure):
            five_term("spectral", ext=ext)

    def test_presentation_sequence(self, ext_map):
        seq = lemma_ss_sequence(ext_map("Q8->V4"))
        assert [node.dim for node in seq.nodes] == [1, 2, 2, 4, 4, 1]
        assert check_exactness(seq).is_exact


class TestNaturality:
    """Test the vertical maps between five-term sequences."""

    def test_example_commutes(self):
        top, bottom, alpha, beta = naturality_example()
        report = five_term_naturality(top, bottom, alpha, beta)
        assert report.commutes
        assert len(report.squares) == 5

    def test_pair_that_does_not_commute(self):
        top, bottom, alpha, _ = naturality_example()
        constant = GroupHom(bottom.G, bottom.Q, [bottom.Q.identity] * bottom.G.order)
        with pytest.raises(NotComposable):
            five_term_naturality(top, bottom, alpha, constant)

    def test_pair_with_wrong_groups(self):
        top, bottom, alpha, beta = naturality_example()
        with pytest.raises(NotComposable):
            five_term_naturality(bottom, top, alpha, beta)
