"""Linear, coalgebra and Hopf morphisms; Hopf kernels, kernel pairs and images."""

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from ..core.errors import (
    AmbientMismatch,
    CheckFailed,
    DoesNotFactor,
    FieldMismatch,
    InvalidMorphism,
    NotComposable,
)
from ..core.field import ExactScalar
from ..core.linalg import Matrix, Subspace, kernel_basis
from .hopf import (
    FinHopfAlgebra,
    Sparse,
    _accumulate,
    convolution_inverse_matrix,
    tensor_product,
    to_dense,
    to_sparse,
    trivial_algebra,
)

if TYPE_CHECKING:
    from .subquot import HopfSubalgebra, Quotient

logger = logging.getLogger(__name__)


class LinearMap:
    """Linear map dom -> cod stored as the sparse images of the basis vectors."""

    def __init__(
        self,
        dom: FinHopfAlgebra,
        cod: FinHopfAlgebra,
        columns: Sequence[Sparse],
        name: Optional[str] = None,
    ):
        if dom.field != cod.field:
            raise FieldMismatch(f"{dom.name} and {cod.name} live over different fields")
        if len(columns) != dom.dim:
            raise InvalidMorphism(
                f"{len(columns)} images given for the {dom.dim} basis vectors of {dom.name}"
            )
        self.dom = dom
        self.cod = cod
        field = cod.field
        self.columns: Tuple[Sparse, ...] = tuple(
            {k: field(c) for k, c in sorted(col.items()) if field(c)} for col in columns
        )
        for col in self.columns:
            for k in col:
                if not 0 <= k < cod.dim:
                    raise InvalidMorphism(f"image index {k} outside {cod.name}")
        self.name = name or f"{dom.name}->{cod.name}"

    @classmethod
    def from_matrix(
        cls, dom: FinHopfAlgebra, cod: FinHopfAlgebra, matrix: Matrix, name: Optional[str] = None, **kwargs
    ):
        """Build from an n_cod x n_dom matrix."""
        if matrix.nrows != cod.dim or matrix.ncols != dom.dim:
            raise InvalidMorphism(
                f"matrix {matrix.nrows}x{matrix.ncols} does not fit {dom.name} -> {cod.name}"
            )
        return cls(dom, cod, [to_sparse(col) for col in matrix.columns()], name, **kwargs)

    @property
    def matrix(self) -> Matrix:
        cols = [to_dense(self.cod.field, col, self.cod.dim) for col in self.columns]
        return Matrix.from_columns(self.cod.field, cols, self.cod.dim)

    def apply_sparse(self, x: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            for k, c in self.columns[i].items():
                _accumulate(out, k, a * c)
        return out

    def apply(self, vector: Sequence[ExactScalar]) -> Tuple[ExactScalar, ...]:
        if len(vector) != self.dom.dim:
            raise AmbientMismatch(f"vector of length {len(vector)} for {self.dom.name}")
        return to_dense(self.cod.field, self.apply_sparse(to_sparse(vector)), self.cod.dim)

    def compose_columns(self, first: "LinearMap") -> List[Sparse]:
        if first.cod != self.dom:
            raise NotComposable(f"cannot compose {self.name} after {first.name}")
        return [self.apply_sparse(col) for col in first.columns]

    def compose(self, first: "LinearMap") -> "LinearMap":
        """self after first"""
        return LinearMap(first.dom, self.cod, self.compose_columns(first), f"{self.name}.{first.name}")

    def __matmul__(self, first: "LinearMap") -> "LinearMap":
        return self.compose(first)

    def image_subspace(self) -> Subspace:
        return Subspace.span(
            self.cod.field, self.cod.dim, [to_dense(self.cod.field, c, self.cod.dim) for c in self.columns]
        )

    def kernel_subspace(self) -> Subspace:
        return kernel_basis(self.matrix)

    def rank(self) -> int:
        return self.image_subspace().dim

    @property
    def is_surjective(self) -> bool:
        return self.rank() == self.cod.dim

    @property
    def is_injective(self) -> bool:
        return self.rank() == self.dom.dim

    @property
    def is_bijective(self) -> bool:
        return self.dom.dim == self.cod.dim and self.is_injective

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.columns == other.columns

    def __hash__(self) -> int:
        return hash((self.dom, self.cod))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


def _tensor_image(f: LinearMap, pairs: Dict[Tuple[int, int], ExactScalar]) -> Dict[Tuple[int, int], ExactScalar]:
    out: Dict[Tuple[int, int], ExactScalar] = {}
    for (j, k), c in pairs.items():
        for a, x in f.columns[j].items():
            for b, y in f.columns[k].items():
                _accumulate(out, (a, b), c * x * y)
    return out


def coalgebra_failures(f: LinearMap) -> List[str]:
    """Basis labels where (f (x) f) o Delta = Delta o f or counit compatibility fails."""
    failures = []
    one = f.dom.field.one
    for i in range(f.dom.dim):
        if _tensor_image(f, f.dom.comult_sparse({i: one})) != f.cod.comult_sparse(f.columns[i]):
            failures.append(f"comultiplication at {f.dom.labels[i]}")
        if f.cod.counit_sparse(f.columns[i]) != f.dom.counit[i]:
            failures.append(f"counit at {f.dom.labels[i]}")
    return failures


def algebra_failures(f: LinearMap) -> List[str]:
    failures = []
    dom, cod = f.dom, f.cod
    if f.apply_sparse(dom.unit_sparse) != cod.unit_sparse:
        failures.append("unit")
    for i in range(dom.dim):
        for j in range(dom.dim):
            lhs = f.apply_sparse(dom.mult.get((i, j), {}))
            rhs = cod.mul_sparse(f.columns[i], f.columns[j])
            if lhs != rhs:
                failures.append(f"product ({dom.labels[i]}, {dom.labels[j]})")
    return failures


def antipode_failures(f: LinearMap) -> List[str]:
    return [
        f"antipode at {f.dom.labels[i]}"
        for i in range(f.dom.dim)
        if f.apply_sparse(f.dom.antipode[i]) != f.cod.antipode_sparse(f.columns[i])
    ]


class CoalgebraMap(LinearMap):
    """Linear map commuting with comultiplication and counit."""

    def __init__(self, dom, cod, columns, name=None, check: bool = True):
        super().__init__(dom, cod, columns, name)
        if check:
            failures = coalgebra_failures(self)
            if failures:
                raise InvalidMorphism(
                    f"{self.name} is not a coalgebra map: {', '.join(failures[:3])}",
                    reference=self.name,
                )

    def compose(self, first: "LinearMap") -> "LinearMap":
        columns = self.compose_columns(first)
        if isinstance(first, CoalgebraMap):
            return CoalgebraMap(first.dom, self.cod, columns, f"{self.name}.{first.name}", check=False)
        return LinearMap(first.dom, self.cod, columns, f"{self.name}.{first.name}")


class HopfMorphism(CoalgebraMap):
    """Algebra and coalgebra map; antipode compatibility is checked as well."""

    def __init__(self, dom, cod, columns, name=None, check: bool = True):
        super().__init__(dom, cod, columns, name, check=check)
        if check:
            failures = algebra_failures(self) + antipode_failures(self)
            if failures:
                raise InvalidMorphism(
                    f"{self.name} is not a Hopf morphism: {', '.join(failures[:3])}",
                    reference=self.name,
                )

    def compose(self, first: "LinearMap") -> "LinearMap":
        columns = self.compose_columns(first)
        name = f"{self.name}.{first.name}"
        if isinstance(first, HopfMorphism):
            return HopfMorphism(first.dom, self.cod, columns, name, check=False)
        if isinstance(first, CoalgebraMap):
            return CoalgebraMap(first.dom, self.cod, columns, name, check=False)
        return LinearMap(first.dom, self.cod, columns, name)


def identity(A: FinHopfAlgebra) -> HopfMorphism:
    return HopfMorphism(A, A, [{i: A.field.one} for i in range(A.dim)], f"id_{A.name}", check=False)


def counit_morphism(A: FinHopfAlgebra, base: Optional[FinHopfAlgebra] = None) -> HopfMorphism:
    """epsilon_A : A -> k"""
    k = base or trivial_algebra(A.field)
    return HopfMorphism(A, k, [{0: c} if c else {} for c in A.counit], f"eps_{A.name}")


def unit_morphism(A: FinHopfAlgebra, base: Optional[FinHopfAlgebra] = None) -> HopfMorphism:
    """u_A : k -> A"""
    k = base or trivial_algebra(A.field)
    return HopfMorphism(k, A, [A.unit_sparse], f"u_{A.name}")


def unit_counit_map(C: FinHopfAlgebra, A: FinHopfAlgebra) -> LinearMap:
    """u_A o eps_C, the unit of the convolution algebra Hom(C, A)."""
    unit = A.unit_sparse
    return LinearMap(
        C, A, [{k: c * v for k, v in unit.items()} if c else {} for c in C.counit], f"u.eps({C.name},{A.name})"
    )


def is_trivial_morphism(f: LinearMap) -> bool:
    return f.columns == unit_counit_map(f.dom, f.cod).columns


# Convolution


def convolution(f: LinearMap, g: LinearMap) -> LinearMap:
    """(f*g)(x) = f(x1) g(x2)"""
    if f.dom != g.dom or f.cod != g.cod:
        raise NotComposable(f"convolution of {f.name} and {g.name} needs equal domains and codomains")
    C, A = f.dom, f.cod
    columns = []
    for i in range(C.dim):
        out: Sparse = {}
        for c, j, k in C.comult[i]:
            for key, v in A.mul_sparse(f.columns[j], g.columns[k]).items():
                _accumulate(out, key, c * v)
        columns.append(out)
    return LinearMap(C, A, columns, f"{f.name}*{g.name}")


def convolution_inverse(f: LinearMap) -> LinearMap:
    """Two-sided convolution inverse; raises NotInvertible."""
    columns = convolution_inverse_matrix(f.dom, f.cod, f.columns)
    return LinearMap(f.dom, f.cod, columns, f"{f.name}^-1")


# Kernels, pullbacks and images


def coinvariants(f: LinearMap) -> Subspace:
    """{x : x1 (x) f(x2) = x (x) 1} as a linear kernel."""
    A, B = f.dom, f.cod
    nb = B.dim
    field = A.field
    rows_count = A.dim * nb
    columns = []
    for i in range(A.dim):
        col: Dict[int, ExactScalar] = {}
        for c, j, k in A.comult[i]:
            for b, v in f.columns[k].items():
                _accumulate(col, j * nb + b, c * v)
        for b, v in B.unit_sparse.items():
            _accumulate(col, i * nb + b, -v)
        columns.append(to_dense(field, col, rows_count))
    return kernel_basis(Matrix.from_columns(field, columns, rows_count))


def hopf_kernel(f: LinearMap) -> "HopfSubalgebra":
    """Hker(f), verified to be a normal Hopf subalgebra of the domain."""
    # Import here to avoid circular imports
    from .subquot import HopfSubalgebra

    kernel = HopfSubalgebra(f.dom, coinvariants(f), name=f"Hker({f.name})")
    kernel.require_hopf()
    if not kernel.check_normal():
        raise CheckFailed(f"Hopf kernel of {f.name} is not normal", reference=f.name)
    logger.debug("Hker(%s) has dimension %d", f.name, kernel.dim)
    return kernel


@dataclass
class Pullback:
    """P = X x_Z Y inside X (x) Y with its two projections."""

    subalgebra: "HopfSubalgebra"
    algebra: FinHopfAlgebra
    first: HopfMorphism
    second: HopfMorphism


def _pullback_subspace(alpha: LinearMap, beta: LinearMap) -> Subspace:
    X, Y, Z = alpha.dom, beta.dom, alpha.cod
    nz, ny = Z.dim, Y.dim
    field = X.field
    rows_count = X.dim * nz * ny
    one = field.one
    y_comult = [Y.comult_sparse({j: one}) for j in range(ny)]
    columns = []
    for i in range(X.dim):
        x_comult = X.comult_sparse({i: one})
        for j in range(ny):
            col: Dict[int, ExactScalar] = {}
            # x1 (x) alpha(x2) (x) y
            for (a, b), c in x_comult.items():
                for z, v in alpha.columns[b].items():
                    _accumulate(col, (a * nz + z) * ny + j, c * v)
            # - x (x) beta(y1) (x) y2
            for (a, b), c in y_comult[j].items():
                for z, v in beta.columns[a].items():
                    _accumulate(col, (i * nz + z) * ny + b, -c * v)
            columns.append(to_dense(field, col, rows_count))
    return kernel_basis(Matrix.from_columns(field, columns, rows_count))


def pullback(alpha: HopfMorphism, beta: HopfMorphism, name: Optional[str] = None) -> Pullback:
    """Pullback of X -> Z <- Y as the Hopf subalgebra
    {x (x) y : x1 (x) alpha(x2) (x) y = x (x) beta(y1) (x) y2} of X (x) Y."""
    # Import here to avoid circular imports
    from .subquot import HopfSubalgebra

    if alpha.cod != beta.cod:
        raise NotComposable(f"{alpha.name} and {beta.name} have different codomains")
    X, Y = alpha.dom, beta.dom
    tensor = tensor_product(X, Y)
    sub = HopfSubalgebra(tensor, _pullback_subspace(alpha, beta), name=name or f"{X.name}x_{alpha.cod.name}{Y.name}")
    algebra = sub.require_hopf().algebra()
    ny = Y.dim
    first_cols, second_cols = [], []
    for vec in sub.basis:
        first: Sparse = {}
        second: Sparse = {}
        for idx, c in to_sparse(vec).items():
            x, y = divmod(idx, ny)
            if Y.counit[y]:
                _accumulate(first, x, c * Y.counit[y])
            if X.counit[x]:
                _accumulate(second, y, c * X.counit[x])
        first_cols.append(first)
        second_cols.append(second)
    pi1 = HopfMorphism(algebra, X, first_cols, f"pr1({sub.name})")
    pi2 = HopfMorphism(algebra, Y, second_cols, f"pr2({sub.name})")
    if alpha.compose(pi1).columns != beta.compose(pi2).columns:
        raise CheckFailed(f"pullback square for {sub.name} does not commute")
    logger.debug("pullback %s has dimension %d", sub.name, sub.dim)
    return Pullback(subalgebra=sub, algebra=algebra, first=pi1, second=pi2)


@dataclass
class KernelPair:
    """Eq(f) with pi1 = id (x) eps, pi2 = eps (x) id and the diagonal refl = Delta."""

    subalgebra: "HopfSubalgebra"
    algebra: FinHopfAlgebra
    pi1: HopfMorphism
    pi2: HopfMorphism
    refl: HopfMorphism

    @property
    def dim(self) -> int:
        return self.algebra.dim


def kernel_pair(f: HopfMorphism) -> KernelPair:
    pb = pullback(f, f, name=f"Eq({f.name})")
    A = f.dom
    nA = A.dim
    one = A.field.one
    refl_cols = []
    for i in range(nA):
        delta = A.comult_sparse({i: one})
        vec = [A.field.zero] * (nA * nA)
        for (j, k), c in delta.items():
            vec[j * nA + k] = c
        coords = pb.subalgebra.coordinates(vec)
        if coords is None:
            raise CheckFailed(f"diagonal of {A.name} escapes Eq({f.name})")
        refl_cols.append(to_sparse(coords))
    refl = HopfMorphism(A, pb.algebra, refl_cols, f"refl({f.name})")
    for pi in (pb.first, pb.second):
        if pi.compose(refl).columns != identity(A).columns:
            raise CheckFailed(f"projections of Eq({f.name}) do not split the diagonal")
    return KernelPair(subalgebra=pb.subalgebra, algebra=pb.algebra, pi1=pb.first, pi2=pb.second, refl=refl)


def kernel_pair_dim(f: LinearMap) -> int:
    """Dimension of Eq(f) without materializing its Hopf structure."""
    return _pullback_subspace(f, f).dim


def image(f: LinearMap) -> "HopfSubalgebra":
    """Column span of f, verified to be a Hopf subalgebra of the codomain."""
    # Import here to avoid circular imports
    from .subquot import HopfSubalgebra

    sub = HopfSubalgebra(f.cod, f.image_subspace(), name=f"Im({f.name})")
    sub.require_hopf()
    return sub


def induced_on_quotient(
    f: HopfMorphism, K: "HopfSubalgebra", quotient: Optional["Quotient"] = None
) -> HopfMorphism:
    """The unique f' with f' o pi = f on dom / dom K+; raises DoesNotFactor."""
    # Import here to avoid circular imports
    from .subquot import quotient_by_normal

    if K.parent != f.dom:
        raise AmbientMismatch(f"{K.name} is not a subobject of {f.dom.name}")
    cod = f.cod
    for vec in K.basis:
        x = to_sparse(vec)
        expected = {k: f.dom.counit_sparse(x) * v for k, v in cod.unit_sparse.items()}
        expected = {k: v for k, v in expected.items() if v}
        if f.apply_sparse(x) != expected:
            raise DoesNotFactor(f"{f.name} does not kill {K.name}+", reference=f.name)
    q = quotient or quotient_by_normal(f.dom, K)
    columns = [f.columns[j] for j in q.representatives]
    induced = HopfMorphism(q.algebra, cod, columns, f"{f.name}~")
    if induced.compose(q.projection).columns != f.columns:
        raise DoesNotFactor(f"{f.name} does not factor through {q.algebra.name}", reference=f.name)
    return induced
