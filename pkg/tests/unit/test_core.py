"""Unit tests for exact fields, linear algebra, Smith normal form and errors."""

from fractions import Fraction

import numpy as np
import pytest

from coco_hopf.core.errors import (
    AmbientMismatch,
    FieldMismatch,
    HopfError,
    InputError,
    MalformedStructure,
    MathematicalCheckFailed,
    NotNormal,
    UnknownReference,
)
from coco_hopf.core.field import Field, ModP
from coco_hopf.core.linalg import (
    Matrix,
    SpanBuilder,
    Subspace,
    inverse,
    kernel_basis,
    quotient_coords,
    rref,
    solve_linear,
    span_of,
    subspace_join,
    subspace_meet,
)
from coco_hopf.core.smith import invariant_factors, smith_normal_form

pytestmark = pytest.mark.unit


class TestField:
    """Test field descriptors and scalar coercion."""

    @pytest.mark.parametrize(
        "spec, name",
        [("Q", "Q"), ("QQ", "Q"), ("F2", "F2"), ("Fp:5", "F5"), ({"Fp": 7}, "F7"), ({"Q": None}, "Q")],
    )
    def test_parse(self, spec, name):
        assert Field.parse(spec).name == name

    @pytest.mark.parametrize("spec", ["R", "F4", "Fp:1", {"C": 1}])
    def test_parse_rejects(self, spec):
        with pytest.raises(MalformedStructure):
            Field.parse(spec)

    def test_rational_coercion_and_encoding(self, qq):
        assert qq("3/6") == Fraction(1, 2)
        assert qq.encode(qq("3/6")) == "1/2"
        assert qq.encode(qq(4)) == "4"
        assert qq.encode(qq("-2/3")) == "-2/3"
        with pytest.raises(MalformedStructure):
            qq("one")

    def test_prime_field_arithmetic(self):
        f5 = Field.prime(5)
        a = f5(3)
        assert a + f5(4) == f5(2)
        assert a * a.inverse() == f5.one
        assert f5("1/2") == f5(3)
        assert f5.encode(f5(-1)) == 4
        assert -a == 2

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            ModP(0, 3).inverse()

    def test_mixed_characteristics(self, f2):
        with pytest.raises(FieldMismatch):
            f2(1) + ModP(1, 3)
        with pytest.raises(FieldMismatch):
            Field.rationals()(ModP(1, 2))

    def test_equality_and_hash(self):
        assert Field.parse("F2") == Field.prime(2)
        assert hash(Field.parse("Q")) == hash(Field.rationals())
        assert Field.prime(2) != Field.prime(3)


class TestMatrix:
    """Test the immutable matrix type."""

    def test_shape_checks(self, qq):
        with pytest.raises(MalformedStructure):
            Matrix(qq, [[1, 2], [3]])
        with pytest.raises(MalformedStructure):
            Matrix(qq, [])
        assert Matrix(qq, [], 3).ncols == 3

    def test_product_and_transpose(self, qq):
        a = Matrix(qq, [[1, 2], [3, 4]])
        b = Matrix(qq, [[0, 1], [1, 0]])
        assert (a @ b).rows == ((2, 1), (4, 3))
        assert a.transpose().rows == ((1, 3), (2, 4))
        assert a.apply((1, 1)) == (3, 7)

    def test_product_shape_mismatch(self, qq):
        with pytest.raises(AmbientMismatch):
            Matrix(qq, [[1, 2]]) @ Matrix(qq, [[1, 2]])

    def test_encode(self, qq):
        assert Matrix(qq, [["1/2", 0]]).encode() == [["1/2", "0"]]

    def test_rank_over_different_fields(self, qq, f2):
        rows = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
        assert Matrix(qq, rows).rank() == 3
        assert Matrix(f2, rows).rank() == 2


class TestSubspaces:
    """Test RREF, kernels and the subspace lattice."""

    def test_rref_is_canonical(self, qq):
        m, pivots = rref(Matrix(qq, [[2, 4, 2], [1, 2, 3]]))
        assert pivots == [0, 2]
        assert m.rows == ((1, 2, 0), (0, 0, 1))

    def test_span_equality_ignores_generators(self, qq):
        a = Subspace.span(qq, 3, [(1, 1, 0), (0, 1, 1)])
        b = Subspace.span(qq, 3, [(1, 2, 1), (1, 0, -1)])
        assert a == b
        assert a.dim == 2
        assert span_of(qq, 3, [(1, 1, 0), (2, 2, 0)]) == Subspace.span(qq, 3, [(1, 1, 0)])

    def test_contains_and_coordinates(self, qq):
        s = Subspace.span(qq, 3, [(1, 0, 1), (0, 1, 1)])
        assert s.contains((2, 3, 5))
        assert s.coordinates((2, 3, 5)) == (2, 3)
        assert s.coordinates((0, 0, 1)) is None
        assert s.combine((2, 3)) == (2, 3, 5)
        assert s.complement_indices == (2,)

    def test_kernel(self, qq):
        k = kernel_basis(Matrix(qq, [[1, 1, 1]]))
        assert k.dim == 2
        assert k == Subspace.span(qq, 3, [(1, -1, 0), (0, 1, -1)])

    def test_join_and_meet(self, qq):
        xy = Subspace.span(qq, 3, [(1, 0, 0), (0, 1, 0)])
        yz = Subspace.span(qq, 3, [(0, 1, 0), (0, 0, 1)])
        assert subspace_join(xy, yz) == Subspace.full(qq, 3)
        assert subspace_meet(xy, yz) == Subspace.span(qq, 3, [(0, 1, 0)])
        assert subspace_meet(xy, Subspace.zero(qq, 3)).dim == 0

    def test_ambient_mismatch(self, qq):
        with pytest.raises(AmbientMismatch):
            Subspace.full(qq, 2).is_subspace_of(Subspace.full(qq, 3))
        with pytest.raises(AmbientMismatch):
            Subspace.span(qq, 2, [(1, 2, 3)])

    def test_quotient_coords(self, qq):
        s = Subspace.span(qq, 3, [(1, -1, 0)])
        assert quotient_coords((0, 1, 0), s) == (1, 0)
        assert quotient_coords((1, 0, 0), s) == (1, 0)

    def test_span_builder_matches_span(self, qq):
        vectors = [(0, 1, 1), (1, 1, 0), (1, 2, 1), (0, 0, 2)]
        builder = SpanBuilder(qq, 3)
        added = builder.extend([tuple(qq(x) for x in v) for v in vectors])
        assert added == 3
        assert builder.subspace() == Subspace.span(qq, 3, vectors)


class TestSolving:
    """Test linear solves and inverses."""

    def test_unique_solution(self, qq):
        m = Matrix(qq, [[2, 1], [1, 1]])
        assert solve_linear(m, (3, 2), unique=True) == (1, 1)

    def test_inconsistent_system(self, qq):
        m = Matrix(qq, [[1, 1], [2, 2]])
        assert solve_linear(m, (1, 3)) is None

    def test_underdetermined_system(self, qq):
        m = Matrix(qq, [[1, 1]])
        assert solve_linear(m, (2,)) == (2, 0)
        assert solve_linear(m, (2,), unique=True) is None

    def test_inverse(self, qq, f2):
        m = Matrix(qq, [[1, 2], [3, 4]])
        inv = inverse(m)
        assert inv is not None
        assert m @ inv == Matrix.identity(qq, 2)
        assert inverse(Matrix(f2, [[1, 1], [1, 1]])) is None


class TestSmithNormalForm:
    """Test Smith normal form of integer matrices."""

    @pytest.mark.parametrize(
        "m, diagonal",
        [
            ([[2, 0], [0, 3]], [1, 6]),
            ([[2, 4], [6, 8]], [2, 4]),
            ([[0, 0], [0, 0]], [0, 0]),
            ([[4, 6]], [2]),
            ([[2], [0], [0]], [2]),
        ],
    )
    def test_diagonal(self, m, diagonal):
        assert smith_normal_form(m).diagonal == diagonal

    def test_invariant_factors_and_rank(self):
        snf = smith_normal_form([[2, 0, 0], [0, 2, 0], [0, 0, 0]])
        assert snf.invariant_factors == [2, 2]
        assert snf.rank == 2

    def test_transforms_diagonalize(self):
        m = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
        snf = smith_normal_form(m)
        product = snf.left.dot(np.array(m, dtype=object)).dot(snf.right)
        expected = np.zeros((3, 3), dtype=object)
        for i, d in enumerate(snf.diagonal):
            expected[i, i] = d
        assert (product == expected).all()
        identity = snf.left.dot(snf.left_inverse)
        assert (identity == np.identity(3, dtype=object)).all()

    def test_without_right_transform(self):
        assert smith_normal_form([[6]], transforms=False).right is None

    def test_invariant_factors_without_transforms(self):
        assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
        assert invariant_factors([[1, 0], [0, 0]]) == []
        assert invariant_factors(np.zeros((0, 3), dtype=object)) == []

    def test_negative_entries(self):
        snf = smith_normal_form([[-3]])
        assert snf.diagonal == [3]
        assert (snf.left.dot(np.array([[-3]], dtype=object)).dot(snf.right) == np.array([[3]], dtype=object)).all()


class TestErrors:
    """Test the error hierarchy and its JSON form."""

    def test_categories(self):
        assert issubclass(UnknownReference, InputError)
        assert issubclass(NotNormal, MathematicalCheckFailed)
        assert issubclass(InputError, HopfError)

    def test_to_dict(self):
        assert NotNormal("K is not normal", reference="K").to_dict() == {
            "error": "NotNormal",
            "message": "K is not normal",
            "reference": "K",
        }
        assert "reference" not in MalformedStructure("bad").to_dict()
