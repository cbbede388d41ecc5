"""Randomized tests of algebraic laws; every draw comes from a seeded generator."""

import random

import numpy as np
import pytest

from coco_hopf.algebra.morphism import LinearMap, convolution, unit_counit_map
from coco_hopf.core.field import Field
from coco_hopf.core.linalg import Matrix, kernel_basis, span_of, subspace_join, subspace_meet
from coco_hopf.core.smith import invariant_factors, smith_normal_form
from coco_hopf.groups.finite import FinGroup
from coco_hopf.groups.free import FreeGroup, free_hopf_on_set
from coco_hopf.groups.homology import schur_multiplier_oracle
from coco_hopf.groups.zoo import named_group

pytestmark = pytest.mark.unit

SEED = 20240101

FIELDS = [Field.rationals(), Field.prime(2), Field.prime(5)]
FIELD_IDS = ["Q", "F2", "F5"]


@pytest.fixture
def rng():
    return random.Random(SEED)


def random_matrix(rng, field, nrows, ncols, bound=3):
    return Matrix(field, [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)], ncols)


def random_subspace(rng, field, n):
    vectors = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n - 1))]
    return span_of(field, n, vectors)


def random_map(rng, C, A):
    columns = []
    for _ in range(C.dim):
        columns.append({rng.randrange(A.dim): rng.randint(-3, 3) for _ in range(rng.randint(0, 2))})
    return LinearMap(C, A, columns)


class TestRankNullity:
    """Test rank + nullity = number of columns on random matrices."""

    @pytest.mark.parametrize("field", FIELDS, ids=FIELD_IDS)
    def test_rank_plus_nullity(self, rng, field):
        for _ in range(60):
            m = random_matrix(rng, field, rng.randint(1, 6), rng.randint(1, 6))
            kernel = kernel_basis(m)
            assert m.rank() + kernel.dim == m.ncols
            for v in kernel.basis:
                assert not any(m.apply(v))


class TestSubspaceLattice:
    """Test the lattice laws of meet and join on random subspaces of k^5."""

    @pytest.mark.parametrize("field", FIELDS, ids=FIELD_IDS)
    def test_idempotent_and_commutative(self, rng, field):
        for _ in range(30):
            a, b = random_subspace(rng, field, 5), random_subspace(rng, field, 5)
            assert subspace_meet(a, a) == a
            assert subspace_join(a, a) == a
            assert subspace_meet(a, b) == subspace_meet(b, a)
            assert subspace_join(a, b) == subspace_join(b, a)

    @pytest.mark.parametrize("field", FIELDS, ids=FIELD_IDS)
    def test_associative(self, rng, field):
        for _ in range(30):
            a, b, c = (random_subspace(rng, field, 5) for _ in range(3))
            assert subspace_meet(subspace_meet(a, b), c) == subspace_meet(a, subspace_meet(b, c))
            assert subspace_join(subspace_join(a, b), c) == subspace_join(a, subspace_join(b, c))

    @pytest.mark.parametrize("field", FIELDS, ids=FIELD_IDS)
    def test_absorption_and_dimension_formula(self, rng, field):
        for _ in range(30):
            a, b = random_subspace(rng, field, 5), random_subspace(rng, field, 5)
            both, either = subspace_meet(a, b), subspace_join(a, b)
            assert subspace_meet(a, either) == a
            assert subspace_join(a, both) == a
            assert both.dim + either.dim == a.dim + b.dim


class TestSmithShuffles:
    """Test that the Smith form ignores the order of rows and columns."""

    def test_invariant_under_row_and_column_shuffles(self, rng):
        for _ in range(25):
            nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
            m = [[rng.randint(-6, 6) for _ in range(ncols)] for _ in range(nrows)]
            diagonal = smith_normal_form(m).diagonal
            rows = list(range(nrows))
            cols = list(range(ncols))
            rng.shuffle(rows)
            rng.shuffle(cols)
            shuffled = [[m[i][j] for j in cols] for i in rows]
            assert smith_normal_form(shuffled).diagonal == diagonal
            assert invariant_factors(shuffled) == [d for d in diagonal if d > 1]

    def test_transforms_diagonalize_random_matrices(self, rng):
        for _ in range(25):
            nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
            m = np.array([[rng.randint(-6, 6) for _ in range(ncols)] for _ in range(nrows)], dtype=object)
            snf = smith_normal_form(m)
            product = snf.left.dot(m).dot(snf.right)
            expected = np.zeros((nrows, ncols), dtype=object)
            for i, d in enumerate(snf.diagonal):
                expected[i, i] = d
            assert (product == expected).all()
            assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]) if a)


class TestConvolution:
    """Test that Hom(C, A) is an associative algebra with unit u o eps."""

    @pytest.mark.parametrize("source, target", [("S3", "S3"), ("V4", "Q8"), ("C4", "C3")])
    def test_associative_with_unit(self, rng, kg, source, target):
        C, A = kg(source), kg(target)
        unit = unit_counit_map(C, A)
        for _ in range(10):
            f, g, h = (random_map(rng, C, A) for _ in range(3))
            left = convolution(convolution(f, g), h)
            right = convolution(f, convolution(g, h))
            assert left.columns == right.columns
            assert convolution(f, unit).columns == f.columns
            assert convolution(unit, f).columns == f.columns


class TestRandomWords:
    """Test reduced words drawn at random from a free group of rank 3."""

    def test_word_times_inverse_reduces_to_identity(self, rng):
        F = FreeGroup(["a", "b", "c"])
        for _ in range(1000):
            length = rng.randint(0, 20)
            w = F.random_word(rng, length)
            assert len(w) <= length
            assert (w * w.inverse()).is_identity
            assert (w.inverse() * w).is_identity

    def test_random_words_are_reduced(self, rng):
        F = FreeGroup(["a", "b", "c"])
        for _ in range(200):
            letters = F.letters_of(F.random_word(rng, 20))
            assert all(x != (y[0], -y[1]) for x, y in zip(letters, letters[1:]))

    def test_evaluation_is_multiplicative(self, rng, qq):
        s3 = named_group("S3")
        free = free_hopf_on_set(["a", "b"], qq)
        lift = free.lift(s3, {"a": "(12)", "b": "(123)"})
        for _ in range(200):
            u = free.group.random_word(rng, rng.randint(0, 12))
            v = free.group.random_word(rng, rng.randint(0, 12))
            assert lift.on_word(u * v) == s3.mul(lift.on_word(u), lift.on_word(v))


class TestSchurOracleAtTheBound:
    """Test the bar-resolution oracle on groups of order 16."""

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "group, expected",
        [
            (FinGroup.dihedral(8), [2]),
            (FinGroup.abelian([4, 4]), [4]),
            (FinGroup.abelian([2, 8]), [2]),
        ],
        ids=["D8", "Z4xZ4", "Z2xZ8"],
    )
    def test_order_sixteen(self, group, expected):
        assert group.order == 16
        assert schur_multiplier_oracle(group, max_order=16) == expected
