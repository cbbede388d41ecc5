"""Hopf subalgebras, Huq commutators, centers, quotients and abelianization."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.errors import (
    AmbientMismatch,
    CheckFailed,
    DoesNotFactor,
    NotNormal,
)
from ..core.field import ExactScalar
from ..core.linalg import (
    Matrix,
    SpanBuilder,
    Subspace,
    kernel_basis,
    quotient_coords,
    subspace_meet,
)
from ..models.reports import SubalgebraReport
from .hopf import FinHopfAlgebra, Sparse, _accumulate, to_dense, to_sparse
from .morphism import HopfMorphism, induced_on_quotient

logger = logging.getLogger(__name__)


class Flag(str, Enum):
    YES = "yes"
    NO = "no"
    UNCHECKED = "unchecked"

    @classmethod
    def of(cls, value: bool) -> "Flag":
        return cls.YES if value else cls.NO


class HopfSubalgebra:
    """Subspace of a parent Hopf algebra with recorded closure checks."""

    def __init__(self, parent: FinHopfAlgebra, subspace: Subspace, name: Optional[str] = None):
        if subspace.ambient_dim != parent.dim:
            raise AmbientMismatch(
                f"subspace of k^{subspace.ambient_dim} inside {parent.name} of dimension {parent.dim}"
            )
        self.parent = parent
        self.subspace = subspace
        self.name = name or f"sub({parent.name})"
        self.contains_unit = Flag.UNCHECKED
        self.mult_closed = Flag.UNCHECKED
        self.comult_closed = Flag.UNCHECKED
        self.antipode_closed = Flag.UNCHECKED
        self.is_normal = Flag.UNCHECKED
        self._algebra: Optional[FinHopfAlgebra] = None

    @classmethod
    def full(cls, A: FinHopfAlgebra) -> "HopfSubalgebra":
        return cls(A, Subspace.full(A.field, A.dim), name=A.name)._mark_all()

    @classmethod
    def unit(cls, A: FinHopfAlgebra) -> "HopfSubalgebra":
        return cls(A, Subspace.span(A.field, A.dim, [A.unit]), name=f"k1({A.name})")._mark_all()

    def _mark_all(self) -> "HopfSubalgebra":
        for attr in ("contains_unit", "mult_closed", "comult_closed", "antipode_closed", "is_normal"):
            setattr(self, attr, Flag.YES)
        return self

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def basis(self) -> Tuple[Tuple[ExactScalar, ...], ...]:
        return self.subspace.basis

    def contains(self, vector: Sequence[ExactScalar]) -> bool:
        return self.subspace.contains(vector)

    def contains_sparse(self, x: Sparse) -> bool:
        return self.subspace.contains(to_dense(self.parent.field, x, self.parent.dim))

    def coordinates(self, vector: Sequence[ExactScalar]) -> Optional[Tuple[ExactScalar, ...]]:
        return self.subspace.coordinates(vector)

    def is_subalgebra_of(self, other: "HopfSubalgebra") -> bool:
        return self.subspace.is_subspace_of(other.subspace)

    # Closure checks

    def _tensor_closed(self, pairs: Dict[Tuple[int, int], ExactScalar]) -> bool:
        n = self.parent.dim
        zero = self.parent.field.zero
        rows: Dict[int, List[ExactScalar]] = {}
        cols: Dict[int, List[ExactScalar]] = {}
        for (j, k), c in pairs.items():
            rows.setdefault(j, [zero] * n)[k] = c
            cols.setdefault(k, [zero] * n)[j] = c
        return all(self.contains(v) for v in rows.values()) and all(
            self.contains(v) for v in cols.values()
        )

    def check_closure(self) -> bool:
        """Record unit, product, coproduct and antipode closure flags."""
        A = self.parent
        sparse_basis = [to_sparse(v) for v in self.basis]
        self.contains_unit = Flag.of(self.contains(A.unit))
        self.mult_closed = Flag.of(
            all(self.contains_sparse(A.mul_sparse(x, y)) for x in sparse_basis for y in sparse_basis)
        )
        self.comult_closed = Flag.of(all(self._tensor_closed(A.comult_sparse(x)) for x in sparse_basis))
        self.antipode_closed = Flag.of(all(self.contains_sparse(A.antipode_sparse(x)) for x in sparse_basis))
        return self.is_hopf_subalgebra

    def check_normal(self) -> bool:
        """Adjoint stability a1 x S(a2) for every parent basis a."""
        A = self.parent
        one = A.field.one
        sparse_basis = [to_sparse(v) for v in self.basis]
        normal = True
        for i in range(A.dim):
            delta = A.comult_sparse({i: one})
            for x in sparse_basis:
                adj: Sparse = {}
                for (j, k), c in delta.items():
                    for key, v in A.mul_sparse(A.mul_sparse({j: one}, x), A.antipode[k]).items():
                        _accumulate(adj, key, c * v)
                if not self.contains_sparse(adj):
                    normal = False
                    break
            if not normal:
                break
        self.is_normal = Flag.of(normal)
        return normal

    @property
    def is_hopf_subalgebra(self) -> bool:
        return all(
            f == Flag.YES
            for f in (self.contains_unit, self.mult_closed, self.comult_closed, self.antipode_closed)
        )

    def require_hopf(self) -> "HopfSubalgebra":
        if not self.is_hopf_subalgebra and not self.check_closure():
            raise CheckFailed(f"{self.name} is not a Hopf subalgebra of {self.parent.name}", reference=self.name)
        return self

    def flags(self) -> Dict[str, str]:
        return {
            "contains_unit": self.contains_unit.value,
            "mult_closed": self.mult_closed.value,
            "comult_closed": self.comult_closed.value,
            "antipode_closed": self.antipode_closed.value,
            "is_normal": self.is_normal.value,
        }

    # Restricted structure

    def labels(self) -> List[str]:
        """Parent labels for unit basis vectors, linear combinations otherwise."""
        out = []
        one = self.parent.field.one
        for vec in self.basis:
            support = [i for i, x in enumerate(vec) if x]
            if len(support) == 1 and vec[support[0]] == one:
                out.append(self.parent.labels[support[0]])
            else:
                out.append(self.parent.element(vec).label())
        return out

    def grouplike_labels(self) -> Optional[List[str]]:
        """Labels when the basis consists of group-like parent basis vectors."""
        one = self.parent.field.one
        result = []
        for vec in self.basis:
            support = [i for i, x in enumerate(vec) if x]
            if len(support) != 1 or vec[support[0]] != one:
                return None
            i = support[0]
            if self.parent.comult[i] != ((one, i, i),) or self.parent.counit[i] != one:
                return None
            result.append(self.parent.labels[i])
        return result

    def _coords(self, x: Sparse) -> Tuple[ExactScalar, ...]:
        pivots = self.subspace.pivots
        zero = self.parent.field.zero
        return tuple(x.get(p, zero) for p in pivots)

    def algebra(self) -> FinHopfAlgebra:
        """The restricted Hopf algebra on the RREF basis (coordinates read at pivots)."""
        if self._algebra is not None:
            return self._algebra
        self.require_hopf()
        A = self.parent
        pivots = self.subspace.pivots
        pos = {p: s for s, p in enumerate(pivots)}
        sparse_basis = [to_sparse(v) for v in self.basis]
        d = self.dim
        mult: Dict[Tuple[int, int], Dict[int, ExactScalar]] = {}
        for s, x in enumerate(sparse_basis):
            for t, y in enumerate(sparse_basis):
                prod = A.mul_sparse(x, y)
                mult[(s, t)] = {pos[p]: prod[p] for p in pivots if p in prod}
        unit = self._coords(A.unit_sparse)
        counit = [A.counit_sparse(x) for x in sparse_basis]
        comult = []
        for x in sparse_basis:
            delta = A.comult_sparse(x)
            comult.append([(c, pos[j], pos[k]) for (j, k), c in delta.items() if j in pos and k in pos])
        antipode = []
        for x in sparse_basis:
            sx = A.antipode_sparse(x)
            antipode.append({pos[p]: sx[p] for p in pivots if p in sx})
        self._algebra = FinHopfAlgebra(
            A.field, d, mult, unit, comult, counit, antipode, self.labels(), self.name
        )
        return self._algebra

    def inclusion(self) -> HopfMorphism:
        return HopfMorphism(
            self.algebra(), self.parent, [to_sparse(v) for v in self.basis], f"incl({self.name})", check=False
        )

    def inclusion_into(self, other: "HopfSubalgebra") -> HopfMorphism:
        """Inclusion self -> other of two subalgebras of the same parent."""
        columns = []
        for vec in self.basis:
            coords = other.coordinates(vec)
            if coords is None:
                raise AmbientMismatch(f"{self.name} is not contained in {other.name}")
            columns.append(to_sparse(coords))
        return HopfMorphism(self.algebra(), other.algebra(), columns, f"incl({self.name},{other.name})", check=False)

    def summary(self) -> SubalgebraReport:
        return SubalgebraReport(
            dim=self.dim,
            grouplike_basis=self.grouplike_labels(),
            basis=[[self.parent.field.encode(x) for x in v] for v in self.basis],
            flags=self.flags(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HopfSubalgebra):
            return NotImplemented
        return self.parent == other.parent and self.subspace == other.subspace

    def __hash__(self) -> int:
        return hash((self.parent, self.subspace))

    def __repr__(self) -> str:
        return f"HopfSubalgebra({self.name}, dim={self.dim} in {self.parent.name})"


def _as_vectors(parent: FinHopfAlgebra, seed) -> List[Tuple[ExactScalar, ...]]:
    if isinstance(seed, Subspace):
        return list(seed.basis)
    if isinstance(seed, HopfSubalgebra):
        return list(seed.basis)
    return [tuple(parent.field(x) for x in v) for v in seed]


def algebra_closure(parent: FinHopfAlgebra, seed, name: Optional[str] = None) -> HopfSubalgebra:
    """Smallest unital subalgebra containing ``seed``; Hopf closure flags are recorded."""
    builder = SpanBuilder(parent.field, parent.dim)
    members: List[Sparse] = []
    for v in [parent.unit] + _as_vectors(parent, seed):
        if builder.add(v):
            members.append(to_sparse(v))
    frontier = list(members)
    while frontier and builder.dim < parent.dim:
        fresh = []
        for x in frontier:
            for y in list(members):
                for prod in (parent.mul_sparse(x, y), parent.mul_sparse(y, x)):
                    if builder.add(to_dense(parent.field, prod, parent.dim)):
                        members.append(prod)
                        fresh.append(prod)
        frontier = fresh
    sub = HopfSubalgebra(parent, builder.subspace(), name=name or f"<{parent.name}>")
    sub.contains_unit = Flag.YES
    sub.mult_closed = Flag.YES
    sub.check_closure()
    return sub


def _commutator_generators(X: HopfSubalgebra, Y: HopfSubalgebra) -> List[Tuple[ExactScalar, ...]]:
    """x1 y1 S(x2) S(y2) over basis pairs (enough by bilinearity)."""
    A = X.parent
    one = A.field.one
    generators = []
    for xv in X.basis:
        dx = A.comult_sparse(to_sparse(xv))
        for yv in Y.basis:
            dy = A.comult_sparse(to_sparse(yv))
            out: Sparse = {}
            for (x1, x2), c in dx.items():
                for (y1, y2), d in dy.items():
                    left = A.mul_sparse({x1: one}, {y1: one})
                    right = A.mul_sparse(A.antipode[x2], A.antipode[y2])
                    for key, v in A.mul_sparse(left, right).items():
                        _accumulate(out, key, c * d * v)
            generators.append(to_dense(A.field, out, A.dim))
    return generators


def huq_commutator(X: HopfSubalgebra, Y: HopfSubalgebra, name: Optional[str] = None) -> HopfSubalgebra:
    """[X, Y]: the subalgebra generated by x1 y1 S(x2) S(y2)."""
    if X.parent != Y.parent:
        raise AmbientMismatch(f"{X.name} and {Y.name} have different parents")
    result = algebra_closure(X.parent, _commutator_generators(X, Y), name=name or f"[{X.name},{Y.name}]")
    if X.is_normal == Flag.YES and Y.is_normal == Flag.YES:
        if not result.check_normal() or not result.is_hopf_subalgebra:
            raise CheckFailed(f"{result.name} is not a normal Hopf subalgebra")
    logger.debug("%s has dimension %d", result.name, result.dim)
    return result


def derived_subalgebra(A: FinHopfAlgebra) -> HopfSubalgebra:
    """[A, A]"""
    full = HopfSubalgebra.full(A)
    return huq_commutator(full, full, name=f"[{A.name},{A.name}]")


def center(A: FinHopfAlgebra) -> HopfSubalgebra:
    """Z(A) as the solution space of x e_i = e_i x; closure flags are reported."""
    n = A.dim
    rows_count = n * n
    columns = []
    for j in range(n):
        col: Dict[int, ExactScalar] = {}
        for i in range(n):
            for k, v in A.mult.get((j, i), {}).items():
                _accumulate(col, i * n + k, v)
            for k, v in A.mult.get((i, j), {}).items():
                _accumulate(col, i * n + k, -v)
        columns.append(to_dense(A.field, col, rows_count))
    sub = HopfSubalgebra(A, kernel_basis(Matrix.from_columns(A.field, columns, rows_count)), name=f"Z({A.name})")
    sub.check_closure()
    if sub.is_hopf_subalgebra:
        sub.check_normal()
    return sub


def augmentation_ideal(K: HopfSubalgebra) -> List[Tuple[ExactScalar, ...]]:
    """Spanning vectors k - eps(k) 1 of K+ = K n ker(eps)."""
    A = K.parent
    out = []
    for vec in K.basis:
        eps = A.apply_counit(vec)
        out.append(tuple(x - eps * u for x, u in zip(vec, A.unit)))
    return [v for v in out if any(v)]


@dataclass
class Quotient:
    """A / A K+ with its projection; ``representatives[j]`` is the parent basis
    index whose class is the j-th quotient basis vector."""

    algebra: FinHopfAlgebra
    projection: HopfMorphism
    ideal: Subspace
    kernel: HopfSubalgebra
    representatives: Tuple[int, ...]


def quotient_by_normal(A: FinHopfAlgebra, K: HopfSubalgebra, name: Optional[str] = None) -> Quotient:
    """A / A K+ for a normal Hopf subalgebra K."""
    if K.parent != A:
        raise AmbientMismatch(f"{K.name} is not a subobject of {A.name}")
    K.require_hopf()
    if K.is_normal != Flag.YES and not K.check_normal():
        raise NotNormal(f"{K.name} is not normal in {A.name}", reference=K.name)
    builder = SpanBuilder(A.field, A.dim)
    one = A.field.one
    for kplus in augmentation_ideal(K):
        kp = to_sparse(kplus)
        for i in range(A.dim):
            builder.add(to_dense(A.field, A.mul_sparse({i: one}, kp), A.dim))
    ideal = builder.subspace()
    reps = ideal.complement_indices
    q = len(reps)
    proj_cols = [
        to_sparse(quotient_coords(A.basis_vector(i), ideal)) for i in range(A.dim)
    ]

    def project(x: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            for k, v in proj_cols[i].items():
                _accumulate(out, k, a * v)
        return out

    mult = {}
    for s, i in enumerate(reps):
        for t, j in enumerate(reps):
            mult[(s, t)] = project(A.mult.get((i, j), {}))
    unit = to_dense(A.field, project(A.unit_sparse), q)
    counit = [A.counit[i] for i in reps]
    comult = []
    for i in reps:
        terms = {}
        for c, j, k in A.comult[i]:
            for a, x in proj_cols[j].items():
                for b, y in proj_cols[k].items():
                    _accumulate(terms, (a, b), c * x * y)
        comult.append([(c, a, b) for (a, b), c in terms.items()])
    antipode = [project(A.antipode[i]) for i in reps]
    labels = [A.labels[i] for i in reps]
    algebra = FinHopfAlgebra(A.field, q, mult, unit, comult, counit, antipode, labels, name or f"{A.name}/{K.name}")
    projection = HopfMorphism(A, algebra, proj_cols, f"pi({algebra.name})")
    logger.debug("%s has dimension %d", algebra.name, q)
    return Quotient(algebra=algebra, projection=projection, ideal=ideal, kernel=K, representatives=reps)


def abelianization(A: FinHopfAlgebra) -> Quotient:
    """H1(A) = A / A[A,A]+ with eta_A as its projection."""
    q = quotient_by_normal(A, derived_subalgebra(A), name=f"H1({A.name})")
    if not q.algebra.is_commutative:
        raise CheckFailed(f"abelianization of {A.name} is not commutative")
    return q


def restrict_morphism(f: HopfMorphism, X: HopfSubalgebra, Y: HopfSubalgebra) -> HopfMorphism:
    """f restricted to X -> Y; raises DoesNotFactor if f(X) is not inside Y."""
    if X.parent != f.dom or Y.parent != f.cod:
        raise AmbientMismatch(f"subobjects do not match {f.name}")
    columns = []
    for vec in X.basis:
        coords = Y.coordinates(f.apply(vec))
        if coords is None:
            raise DoesNotFactor(f"{f.name} does not map {X.name} into {Y.name}", reference=f.name)
        columns.append(to_sparse(coords))
    return HopfMorphism(X.algebra(), Y.algebra(), columns, f"{f.name}|{X.name}", check=False)


def abelianize_morphism(
    f: HopfMorphism, source: Optional[Quotient] = None, target: Optional[Quotient] = None
) -> HopfMorphism:
    """H1(f): H1(dom) -> H1(cod)."""
    ab_x = source or abelianization(f.dom)
    ab_y = target or abelianization(f.cod)
    composite = ab_y.projection.compose(f)
    return induced_on_quotient(composite, ab_x.kernel, quotient=ab_x)


def subspace_of(A: FinHopfAlgebra, vectors: Iterable[Sequence], name: Optional[str] = None) -> HopfSubalgebra:
    """Span of vectors as a (not yet checked) subobject of A."""
    return HopfSubalgebra(A, Subspace.span(A.field, A.dim, vectors), name=name)


def meet(X: HopfSubalgebra, Y: HopfSubalgebra, name: Optional[str] = None) -> HopfSubalgebra:
    if X.parent != Y.parent:
        raise AmbientMismatch(f"{X.name} and {Y.name} have different parents")
    sub = HopfSubalgebra(X.parent, subspace_meet(X.subspace, Y.subspace), name=name or f"{X.name}^{Y.name}")
    sub.check_closure()
    return sub
