"""Finite-dimensional Hopf algebras given by structure constants."""

import itertools
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.errors import AmbientMismatch, FieldMismatch, MalformedStructure, NotInvertible
from ..core.field import ExactScalar, Field
from ..core.linalg import Matrix, inverse, solve_linear
from ..models.reports import AxiomReport

logger = logging.getLogger(__name__)

Sparse = Dict[int, ExactScalar]
Comult = Tuple[Tuple[ExactScalar, int, int], ...]


def _accumulate(out: Dict, key, value: ExactScalar) -> None:
    total = out[key] + value if key in out else value
    if total:
        out[key] = total
    else:
        out.pop(key, None)


def to_sparse(vector: Sequence[ExactScalar]) -> Sparse:
    return {i: x for i, x in enumerate(vector) if x}


def to_dense(field: Field, sparse: Sparse, dim: int) -> Tuple[ExactScalar, ...]:
    zero = field.zero
    return tuple(sparse.get(i, zero) for i in range(dim))


class FinHopfAlgebra:
    """Hopf algebra on the basis e_0..e_{n-1}.

    ``mult[(i, j)]`` is the sparse vector e_i e_j (missing pairs multiply to
    zero), ``comult[i]`` lists triples (c, j, k) with Delta(e_i) = sum c e_j (x) e_k,
    and ``antipode[i]`` is the sparse vector S(e_i).
    """

    def __init__(
        self,
        field: Field,
        dim: int,
        mult: Dict[Tuple[int, int], Dict[int, object]],
        unit: Sequence,
        comult: Sequence[Iterable[Tuple[object, int, int]]],
        counit: Sequence,
        antipode: Sequence[Dict[int, object]],
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ):
        if dim < 1:
            raise MalformedStructure("Hopf algebras have dimension at least one")
        self.field = field
        self.dim = dim
        self.name = name or f"A{dim}"
        self.mult: Dict[Tuple[int, int], Sparse] = {}
        for (i, j), vec in mult.items():
            self._check_index(i, j, *vec.keys())
            clean = {k: field(c) for k, c in vec.items() if field(c)}
            if clean:
                self.mult[(i, j)] = clean
        if len(unit) != dim or len(counit) != dim:
            raise MalformedStructure(f"{self.name}: unit and counit need length {dim}")
        self.unit = tuple(field(x) for x in unit)
        self.counit = tuple(field(x) for x in counit)
        if len(comult) != dim or len(antipode) != dim:
            raise MalformedStructure(f"{self.name}: comultiplication and antipode need {dim} entries")
        comult_clean = []
        for terms in comult:
            merged: Dict[Tuple[int, int], ExactScalar] = {}
            for c, j, k in terms:
                self._check_index(j, k)
                _accumulate(merged, (j, k), field(c))
            comult_clean.append(tuple((c, j, k) for (j, k), c in sorted(merged.items())))
        self.comult: Tuple[Comult, ...] = tuple(comult_clean)
        antipode_clean = []
        for vec in antipode:
            self._check_index(*vec.keys())
            antipode_clean.append({k: field(c) for k, c in sorted(vec.items()) if field(c)})
        self.antipode: Tuple[Sparse, ...] = tuple(antipode_clean)
        self.labels: Tuple[str, ...] = (
            tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        )
        if len(self.labels) != dim:
            raise MalformedStructure(f"{self.name}: {len(self.labels)} labels for dimension {dim}")
        self._cocommutative: Optional[bool] = None
        self._commutative: Optional[bool] = None

    def _check_index(self, *indices: int) -> None:
        for i in indices:
            if not 0 <= i < self.dim:
                raise MalformedStructure(f"{self.name}: basis index {i} out of range 0..{self.dim - 1}")

    @classmethod
    def from_bialgebra(
        cls,
        field: Field,
        dim: int,
        mult: Dict[Tuple[int, int], Dict[int, object]],
        unit: Sequence,
        comult: Sequence[Iterable[Tuple[object, int, int]]],
        counit: Sequence,
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ) -> "FinHopfAlgebra":
        """Complete a bialgebra by solving for S as the convolution inverse of id."""
        bialgebra = cls(
            field, dim, mult, unit, comult, counit, [{} for _ in range(dim)], labels, name
        )
        identity = [{i: field.one} for i in range(dim)]
        antipode = convolution_inverse_matrix(bialgebra, bialgebra, identity)
        return cls(field, dim, mult, unit, comult, counit, antipode, labels, name)

    # Basic linear structure

    @property
    def zero_vector(self) -> Tuple[ExactScalar, ...]:
        return (self.field.zero,) * self.dim

    def basis_vector(self, i: int) -> Tuple[ExactScalar, ...]:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    def element(self, coords: Sequence) -> "Element":
        return Element(self, [self.field(x) for x in coords])

    def basis_element(self, i: int) -> "Element":
        return Element(self, self.basis_vector(i))

    def one(self) -> "Element":
        return Element(self, self.unit)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MalformedStructure(f"{self.name} has no basis element {label!r}") from None

    # Structure maps on sparse vectors

    def mul_sparse(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.mult.get((i, j))
                if prod:
                    ab = a * b
                    for k, c in prod.items():
                        _accumulate(out, k, ab * c)
        return out

    def comult_sparse(self, x: Sparse) -> Dict[Tuple[int, int], ExactScalar]:
        out: Dict[Tuple[int, int], ExactScalar] = {}
        for i, a in x.items():
            for c, j, k in self.comult[i]:
                _accumulate(out, (j, k), a * c)
        return out

    def antipode_sparse(self, x: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            for k, c in self.antipode[i].items():
                _accumulate(out, k, a * c)
        return out

    def counit_sparse(self, x: Sparse) -> ExactScalar:
        total = self.field.zero
        for i, a in x.items():
            if self.counit[i]:
                total = total + a * self.counit[i]
        return total

    @property
    def unit_sparse(self) -> Sparse:
        return to_sparse(self.unit)

    # Structure maps on dense vectors

    def multiply(self, x: Sequence[ExactScalar], y: Sequence[ExactScalar]) -> Tuple[ExactScalar, ...]:
        return to_dense(self.field, self.mul_sparse(to_sparse(x), to_sparse(y)), self.dim)

    def comultiply(self, x: Sequence[ExactScalar]) -> Dict[Tuple[int, int], ExactScalar]:
        return self.comult_sparse(to_sparse(x))

    def apply_counit(self, x: Sequence[ExactScalar]) -> ExactScalar:
        return self.counit_sparse(to_sparse(x))

    def apply_antipode(self, x: Sequence[ExactScalar]) -> Tuple[ExactScalar, ...]:
        return to_dense(self.field, self.antipode_sparse(to_sparse(x)), self.dim)

    def antipode_matrix(self) -> Matrix:
        cols = [to_dense(self.field, s, self.dim) for s in self.antipode]
        return Matrix.from_columns(self.field, cols, self.dim)

    def antipode_inverse(self) -> Tuple[Sparse, ...]:
        if self.is_cocommutative:
            return self.antipode
        inv = inverse(self.antipode_matrix())
        if inv is None:
            raise NotInvertible(f"antipode of {self.name} is not bijective", reference=self.name)
        return tuple(to_sparse(col) for col in inv.columns())

    @property
    def is_cocommutative(self) -> bool:
        if self._cocommutative is None:
            self._cocommutative = all(
                dict(((j, k), c) for c, j, k in terms) == dict(((k, j), c) for c, j, k in terms)
                for terms in self.comult
            )
        return self._cocommutative

    @property
    def is_commutative(self) -> bool:
        if self._commutative is None:
            self._commutative = all(
                self.mult.get((i, j), {}) == self.mult.get((j, i), {})
                for i in range(self.dim)
                for j in range(i + 1, self.dim)
            )
        return self._commutative

    @property
    def has_grouplike_basis(self) -> bool:
        """Every basis vector is group-like (group algebras and their subquotients)."""
        return all(
            terms == ((self.field.one, i, i),) and self.counit[i] == self.field.one
            for i, terms in enumerate(self.comult)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinHopfAlgebra):
            return NotImplemented
        return (
            self.field == other.field
            and self.dim == other.dim
            and self.mult == other.mult
            and self.unit == other.unit
            and self.comult == other.comult
            and self.counit == other.counit
            and self.antipode == other.antipode
        )

    def same_structure(self, other: "FinHopfAlgebra") -> bool:
        """Equal structure constants, ignoring names and labels."""
        return self == other

    def __hash__(self) -> int:
        return hash((self.field, self.dim, self.unit, self.counit))

    def __repr__(self) -> str:
        return f"FinHopfAlgebra({self.name}, dim={self.dim}, field={self.field.name})"


class Element:
    """Vector of a Hopf algebra with the algebra operations as operators."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent: FinHopfAlgebra, coords: Sequence[ExactScalar]):
        if len(coords) != parent.dim:
            raise MalformedStructure(f"element of length {len(coords)} in {parent.name}")
        self.parent = parent
        self.coords = tuple(coords)

    def _same_parent(self, other: "Element") -> None:
        if other.parent is not self.parent and other.parent != self.parent:
            raise AmbientMismatch("elements of different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same_parent(other)
        return Element(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Element") -> "Element":
        self._same_parent(other)
        return Element(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Element":
        return Element(self.parent, [-a for a in self.coords])

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            self._same_parent(other)
            return Element(self.parent, self.parent.multiply(self.coords, other.coords))
        scalar = self.parent.field(other)
        return Element(self.parent, [scalar * a for a in self.coords])

    def __rmul__(self, other) -> "Element":
        scalar = self.parent.field(other)
        return Element(self.parent, [scalar * a for a in self.coords])

    def coproduct(self) -> Dict[Tuple[int, int], ExactScalar]:
        return self.parent.comultiply(self.coords)

    def counit(self) -> ExactScalar:
        return self.parent.apply_counit(self.coords)

    def antipode(self) -> "Element":
        return Element(self.parent, self.parent.apply_antipode(self.coords))

    def is_grouplike(self) -> bool:
        sparse = to_sparse(self.coords)
        expected: Dict[Tuple[int, int], ExactScalar] = {}
        for i, a in sparse.items():
            for j, b in sparse.items():
                _accumulate(expected, (i, j), a * b)
        return self.coproduct() == expected and self.counit() == self.parent.field.one

    def label(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            name = self.parent.labels[i]
            if c == self.parent.field.one:
                terms.append(name)
            else:
                terms.append(f"{self.parent.field.encode(c)}*{name}")
        return " + ".join(terms) or "0"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.parent == other.parent and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"Element({self.label()} in {self.parent.name})"


def iterated_coproduct(algebra: FinHopfAlgebra, x: Sparse, n: int) -> Dict[Tuple[int, ...], ExactScalar]:
    """Delta^(n-1)(x) as a sparse tensor with ``n`` legs (n >= 1)."""
    current: Dict[Tuple[int, ...], ExactScalar] = {(i,): c for i, c in x.items()}
    for _ in range(n - 1):
        nxt: Dict[Tuple[int, ...], ExactScalar] = {}
        for legs, a in current.items():
            for c, j, k in algebra.comult[legs[-1]]:
                _accumulate(nxt, legs[:-1] + (j, k), a * c)
        current = nxt
    return current


def trivial_algebra(field: Field, name: str = "k") -> FinHopfAlgebra:
    """The base field as a one-dimensional Hopf algebra (the zero object)."""
    return FinHopfAlgebra(
        field,
        1,
        {(0, 0): {0: 1}},
        [1],
        [[(1, 0, 0)]],
        [1],
        [{0: 1}],
        labels=["1"],
        name=name,
    )


def convolution_inverse_matrix(
    coalgebra: FinHopfAlgebra, algebra: FinHopfAlgebra, images: Sequence[Sparse]
) -> List[Sparse]:
    """Two-sided convolution inverse of the linear map e_c -> images[c].

    Solves f*g = g*f = u o epsilon as one linear system in the dim(A)*dim(C)
    unknowns g[a, c]; raises NotInvertible when it has no solution.
    """
    field = algebra.field
    n_a, n_c = algebra.dim, coalgebra.dim
    unit = algebra.unit

    def unknown(a: int, c: int) -> int:
        return a * n_c + c

    rows: List[Dict[int, ExactScalar]] = []
    rhs: List[ExactScalar] = []
    for c in range(n_c):
        left: Dict[Tuple[int, int], ExactScalar] = {}
        right: Dict[Tuple[int, int], ExactScalar] = {}
        for lam, c1, c2 in coalgebra.comult[c]:
            for b in range(n_a):
                # f(c1) * e_b contributes to g[b, c2]
                for a, v in algebra.mul_sparse(images[c1], {b: field.one}).items():
                    _accumulate(left, (a, unknown(b, c2)), lam * v)
                # e_b * f(c2) contributes to g[b, c1]
                for a, v in algebra.mul_sparse({b: field.one}, images[c2]).items():
                    _accumulate(right, (a, unknown(b, c1)), lam * v)
        eps = coalgebra.counit[c]
        for system in (left, right):
            for a in range(n_a):
                rows.append({u: v for (aa, u), v in system.items() if aa == a})
                rhs.append(eps * unit[a])
    matrix = Matrix(
        field,
        [[row.get(u, field.zero) for u in range(n_a * n_c)] for row in rows],
        n_a * n_c,
    )
    solution = solve_linear(matrix, rhs, unique=True)
    if solution is None:
        raise NotInvertible(
            f"map {coalgebra.name} -> {algebra.name} has no convolution inverse"
        )
    return [
        {a: solution[unknown(a, c)] for a in range(n_a) if solution[unknown(a, c)]}
        for c in range(n_c)
    ]


# Axioms


def _assoc_ok(A: FinHopfAlgebra) -> bool:
    rng = range(A.dim)
    for i, j in itertools.product(rng, rng):
        ij = A.mult.get((i, j), {})
        for k in rng:
            lhs = A.mul_sparse(ij, {k: A.field.one})
            rhs = A.mul_sparse({i: A.field.one}, A.mult.get((j, k), {}))
            if lhs != rhs:
                return False
    return True


def _unital_ok(A: FinHopfAlgebra) -> bool:
    u = A.unit_sparse
    for i in range(A.dim):
        e = {i: A.field.one}
        if A.mul_sparse(u, e) != e or A.mul_sparse(e, u) != e:
            return False
    return True


def _coassoc_ok(A: FinHopfAlgebra) -> bool:
    for i in range(A.dim):
        left: Dict[Tuple[int, int, int], ExactScalar] = {}
        right: Dict[Tuple[int, int, int], ExactScalar] = {}
        for c, j, k in A.comult[i]:
            for d, l, m in A.comult[j]:
                _accumulate(left, (l, m, k), c * d)
            for d, l, m in A.comult[k]:
                _accumulate(right, (j, l, m), c * d)
        if left != right:
            return False
    return True


def _counital_ok(A: FinHopfAlgebra) -> bool:
    for i in range(A.dim):
        left: Sparse = {}
        right: Sparse = {}
        for c, j, k in A.comult[i]:
            if A.counit[j]:
                _accumulate(left, k, c * A.counit[j])
            if A.counit[k]:
                _accumulate(right, j, c * A.counit[k])
        if left != {i: A.field.one} or right != {i: A.field.one}:
            return False
    return True


def _tensor_mul(A: FinHopfAlgebra, x: Dict, y: Dict) -> Dict:
    out: Dict[Tuple[int, int], ExactScalar] = {}
    for (i1, j1), a in x.items():
        for (i2, j2), b in y.items():
            left = A.mult.get((i1, i2))
            right = A.mult.get((j1, j2))
            if left and right:
                ab = a * b
                for k1, c1 in left.items():
                    for k2, c2 in right.items():
                        _accumulate(out, (k1, k2), ab * c1 * c2)
    return out


def _bialgebra_ok(A: FinHopfAlgebra) -> bool:
    one = A.field.one
    for i in range(A.dim):
        for j in range(A.dim):
            prod = A.mult.get((i, j), {})
            if A.comult_sparse(prod) != _tensor_mul(
                A, A.comult_sparse({i: one}), A.comult_sparse({j: one})
            ):
                return False
            if A.counit_sparse(prod) != A.counit[i] * A.counit[j]:
                return False
    unit = A.unit_sparse
    unit_unit: Dict[Tuple[int, int], ExactScalar] = {}
    for i, a in unit.items():
        for j, b in unit.items():
            _accumulate(unit_unit, (i, j), a * b)
    return A.comult_sparse(unit) == unit_unit and A.counit_sparse(unit) == one


def _antipode_ok(A: FinHopfAlgebra) -> bool:
    unit = A.unit_sparse
    for i in range(A.dim):
        expected = {k: A.counit[i] * v for k, v in unit.items() if A.counit[i] * v}
        left: Sparse = {}
        right: Sparse = {}
        for c, j, k in A.comult[i]:
            for key, v in A.mul_sparse(A.antipode[j], {k: A.field.one}).items():
                _accumulate(left, key, c * v)
            for key, v in A.mul_sparse({j: A.field.one}, A.antipode[k]).items():
                _accumulate(right, key, c * v)
        if left != expected or right != expected:
            return False
    return True


def _involutive(A: FinHopfAlgebra) -> bool:
    return all(A.antipode_sparse(A.antipode[i]) == {i: A.field.one} for i in range(A.dim))


def verify_axioms(A: FinHopfAlgebra) -> AxiomReport:
    """Check every Hopf axiom on basis tuples (sufficient by multilinearity)."""
    checks = {
        "associative": _assoc_ok(A),
        "unital": _unital_ok(A),
        "coassociative": _coassoc_ok(A),
        "counital": _counital_ok(A),
        "bialgebra": _bialgebra_ok(A),
        "antipode": _antipode_ok(A),
    }
    cocommutative = A.is_cocommutative
    involutive = _involutive(A)
    failures = [name for name, ok in checks.items() if not ok]
    if cocommutative and not involutive:
        failures.append("antipode_involutive")
    report = AxiomReport(
        algebra=A.name,
        dim=A.dim,
        field=A.field.name,
        cocommutative=cocommutative,
        commutative=A.is_commutative,
        antipode_involutive=involutive,
        failures=failures,
        **checks,
    )
    logger.debug("axioms of %s: %s", A.name, failures or "all pass")
    return report


# Constructions


def tensor_product(A: FinHopfAlgebra, B: FinHopfAlgebra, name: Optional[str] = None) -> FinHopfAlgebra:
    """A (x) B with basis e_i (x) f_j at index i*dim(B) + j."""
    if A.field != B.field:
        raise FieldMismatch(f"{A.name} and {B.name} live over different fields")
    nb = B.dim
    mult: Dict[Tuple[int, int], Dict[int, ExactScalar]] = {}
    for (i1, i2), pa in A.mult.items():
        for (j1, j2), pb in B.mult.items():
            mult[(i1 * nb + j1, i2 * nb + j2)] = {
                k1 * nb + k2: c1 * c2 for k1, c1 in pa.items() for k2, c2 in pb.items()
            }
    unit = [a * b for a in A.unit for b in B.unit]
    counit = [a * b for a in A.counit for b in B.counit]
    comult = []
    antipode = []
    for i in range(A.dim):
        for j in range(nb):
            comult.append(
                [
                    (c * d, k1 * nb + l1, k2 * nb + l2)
                    for c, k1, k2 in A.comult[i]
                    for d, l1, l2 in B.comult[j]
                ]
            )
            antipode.append(
                {
                    k * nb + l: c * d
                    for k, c in A.antipode[i].items()
                    for l, d in B.antipode[j].items()
                }
            )
    labels = [f"({la},{lb})" for la in A.labels for lb in B.labels]
    return FinHopfAlgebra(
        A.field, A.dim * nb, mult, unit, comult, counit, antipode, labels,
        name or f"{A.name}(x){B.name}",
    )


def opposite(A: FinHopfAlgebra) -> FinHopfAlgebra:
    """Opposite product; the antipode becomes S^-1."""
    mult = {(j, i): vec for (i, j), vec in A.mult.items()}
    return FinHopfAlgebra(
        A.field, A.dim, mult, A.unit, A.comult, A.counit, A.antipode_inverse(),
        A.labels, f"{A.name}^op",
    )


def coopposite(A: FinHopfAlgebra) -> FinHopfAlgebra:
    """Opposite coproduct; the antipode becomes S^-1."""
    comult = [[(c, k, j) for c, j, k in terms] for terms in A.comult]
    return FinHopfAlgebra(
        A.field, A.dim, A.mult, A.unit, comult, A.counit, A.antipode_inverse(),
        A.labels, f"{A.name}^cop",
    )


def grouplikes(A: FinHopfAlgebra) -> List[Element]:
    """Group-like elements found among scaled basis vectors, closed under products.

    Exact on algebras whose basis consists of (scaled) group-likes; partial
    otherwise.
    """
    found: List[Tuple[ExactScalar, ...]] = []
    seen = set()

    def add(vec: Tuple[ExactScalar, ...]) -> None:
        if vec not in seen and Element(A, vec).is_grouplike():
            seen.add(vec)
            found.append(vec)

    add(A.unit)
    for i, terms in enumerate(A.comult):
        if len(terms) == 1 and terms[0][1] == terms[0][2] == i:
            vec = [A.field.zero] * A.dim
            vec[i] = terms[0][0]
            add(tuple(vec))
    frontier = list(found)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(found):
                for prod in (A.multiply(x, y), A.multiply(y, x)):
                    if prod not in seen and Element(A, prod).is_grouplike():
                        seen.add(prod)
                        found.append(prod)
                        fresh.append(prod)
        frontier = fresh
    found.sort(key=lambda v: next((i for i, x in enumerate(v) if x), A.dim))
    return [Element(A, v) for v in found]


def grouplike_group(A: FinHopfAlgebra):
    """The group formed by ``grouplikes(A)`` as a FinGroup labelled like A."""
    from ..groups.finite import FinGroup

    elements = grouplikes(A)
    index = {g.coords: i for i, g in enumerate(elements)}
    table = []
    for x in elements:
        row = []
        for y in elements:
            prod = A.multiply(x.coords, y.coords)
            if prod not in index:
                raise MalformedStructure(f"group-likes of {A.name} are not closed")
            row.append(index[prod])
        table.append(row)
    return FinGroup(table, [g.label() for g in elements], name=f"G({A.name})")
