"""Crossed products B #_sigma H, the cleft-extension analyzer and the canonical map.

Actions and cocycles are stored as sparse tables on basis tuples; every
identity is checked on basis tuples, which suffices by multilinearity.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..core.errors import (
    CheckFailed,
    InvalidCocycle,
    InvalidMeasuring,
    NotASection,
    NotInvertible,
    NotTwistedModule,
    SectionNotCoalgebra,
    ValuesEscapeKernel,
)
from ..core.field import ExactScalar
from ..core.linalg import Matrix, SpanBuilder, Subspace
from .hopf import (
    FinHopfAlgebra,
    Sparse,
    _accumulate,
    iterated_coproduct,
    tensor_product,
    to_dense,
    to_sparse,
    verify_axioms,
)
from .morphism import (
    CoalgebraMap,
    HopfMorphism,
    LinearMap,
    algebra_failures,
    coalgebra_failures,
    convolution_inverse,
    hopf_kernel,
)
from .subquot import HopfSubalgebra

logger = logging.getLogger(__name__)


def _scale(x: Sparse, c: ExactScalar) -> Sparse:
    return {k: c * v for k, v in x.items() if c * v}


def _add_into(out: Sparse, x: Sparse, c: ExactScalar) -> None:
    for k, v in x.items():
        _accumulate(out, k, c * v)


class MeasuringAction:
    """h -> b as a table indexed by h * dim(B) + b."""

    def __init__(self, H: FinHopfAlgebra, B: FinHopfAlgebra, table: Sequence[Mapping[int, object]]):
        if len(table) != H.dim * B.dim:
            raise InvalidMeasuring(f"action table needs {H.dim * B.dim} entries, got {len(table)}")
        self.H = H
        self.B = B
        self.table: Tuple[Sparse, ...] = tuple(
            {k: B.field(v) for k, v in sorted(entry.items()) if B.field(v)} for entry in table
        )

    @classmethod
    def trivial(cls, H: FinHopfAlgebra, B: FinHopfAlgebra) -> "MeasuringAction":
        """h -> b = eps(h) b"""
        return cls(H, B, [{b: H.counit[h]} for h in range(H.dim) for b in range(B.dim)])

    @classmethod
    def from_overrides(
        cls, H: FinHopfAlgebra, B: FinHopfAlgebra, entries: Sequence[Tuple[int, int, Mapping[int, object]]]
    ) -> "MeasuringAction":
        table = list(cls.trivial(H, B).table)
        for h, b, value in entries:
            table[h * B.dim + b] = dict(value)
        return cls(H, B, table)

    def act_basis(self, h: int, b: int) -> Sparse:
        return self.table[h * self.B.dim + b]

    def act(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for h, a in x.items():
            for b, c in y.items():
                _add_into(out, self.act_basis(h, b), a * c)
        return out

    def matrix(self) -> Matrix:
        cols = [to_dense(self.B.field, t, self.B.dim) for t in self.table]
        return Matrix.from_columns(self.B.field, cols, self.B.dim)

    def is_trivial(self) -> bool:
        return self.table == MeasuringAction.trivial(self.H, self.B).table

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MeasuringAction):
            return NotImplemented
        return self.table == other.table and self.H == other.H and self.B == other.B

    def __hash__(self) -> int:
        return hash((self.H.name, self.B.name, len(self.table)))


class Cocycle:
    """sigma: H (x) H -> B as a table indexed by g * dim(H) + h."""

    def __init__(self, H: FinHopfAlgebra, B: FinHopfAlgebra, table: Sequence[Mapping[int, object]]):
        if len(table) != H.dim * H.dim:
            raise InvalidCocycle(f"cocycle table needs {H.dim * H.dim} entries, got {len(table)}")
        self.H = H
        self.B = B
        self.table: Tuple[Sparse, ...] = tuple(
            {k: B.field(v) for k, v in sorted(entry.items()) if B.field(v)} for entry in table
        )
        self._inverse: Optional[LinearMap] = None

    @classmethod
    def trivial(cls, H: FinHopfAlgebra, B: FinHopfAlgebra) -> "Cocycle":
        """sigma(g (x) h) = eps(g) eps(h) 1"""
        unit = B.unit_sparse
        return cls(
            H, B, [_scale(unit, H.counit[g] * H.counit[h]) for g in range(H.dim) for h in range(H.dim)]
        )

    @classmethod
    def from_overrides(
        cls, H: FinHopfAlgebra, B: FinHopfAlgebra, entries: Sequence[Tuple[int, int, Mapping[int, object]]]
    ) -> "Cocycle":
        table = list(cls.trivial(H, B).table)
        for g, h, value in entries:
            table[g * H.dim + h] = dict(value)
        return cls(H, B, table)

    def value_basis(self, g: int, h: int) -> Sparse:
        return self.table[g * self.H.dim + h]

    def value(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for g, a in x.items():
            for h, c in y.items():
                _add_into(out, self.value_basis(g, h), a * c)
        return out

    def as_map(self) -> LinearMap:
        return LinearMap(tensor_product(self.H, self.H), self.B, self.table, "sigma")

    def inverse(self) -> LinearMap:
        """Convolution inverse on H (x) H; raises InvalidCocycle."""
        if self._inverse is None:
            try:
                self._inverse = convolution_inverse(self.as_map())
            except NotInvertible as exc:
                raise InvalidCocycle(f"cocycle is not convolution invertible: {exc.message}") from exc
        return self._inverse

    def is_trivial(self) -> bool:
        return self.table == Cocycle.trivial(self.H, self.B).table

    def matrix(self) -> Matrix:
        cols = [to_dense(self.B.field, t, self.B.dim) for t in self.table]
        return Matrix.from_columns(self.B.field, cols, self.B.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cocycle):
            return NotImplemented
        return self.table == other.table and self.H == other.H and self.B == other.B

    def __hash__(self) -> int:
        return hash((self.H.name, self.B.name, len(self.table)))


# Identity checks


def measuring_failures(act: MeasuringAction) -> List[str]:
    H, B = act.H, act.B
    one = H.field.one
    failures = []
    unit_b = B.unit_sparse
    for h in range(H.dim):
        if act.act({h: one}, unit_b) != _scale(unit_b, H.counit[h]):
            failures.append(f"{H.labels[h]} -> 1 != eps({H.labels[h]}) 1")
    for h in range(H.dim):
        delta = H.comult_sparse({h: one})
        for b in range(B.dim):
            for b2 in range(B.dim):
                lhs = act.act({h: one}, B.mult.get((b, b2), {}))
                rhs: Sparse = {}
                for (h1, h2), c in delta.items():
                    _add_into(rhs, B.mul_sparse(act.act_basis(h1, b), act.act_basis(h2, b2)), c)
                if lhs != rhs:
                    failures.append(f"measuring at ({H.labels[h]}, {B.labels[b]}, {B.labels[b2]})")
    # coalgebra map H (x) B -> B
    for h in range(H.dim):
        delta_h = H.comult_sparse({h: one})
        for b in range(B.dim):
            value = act.act_basis(h, b)
            tensor: Dict[Tuple[int, int], ExactScalar] = {}
            for (h1, h2), c in delta_h.items():
                for (b1, b2), d in B.comult_sparse({b: one}).items():
                    for k1, v1 in act.act_basis(h1, b1).items():
                        for k2, v2 in act.act_basis(h2, b2).items():
                            _accumulate(tensor, (k1, k2), c * d * v1 * v2)
            if B.comult_sparse(value) != tensor or B.counit_sparse(value) != H.counit[h] * B.counit[b]:
                failures.append(f"action is not a coalgebra map at ({H.labels[h]}, {B.labels[b]})")
    return failures


def cocycle_failures(act: MeasuringAction, sig: Cocycle) -> List[str]:
    H, B = sig.H, sig.B
    one = H.field.one
    failures = []
    unit_h = H.unit_sparse
    unit_b = B.unit_sparse
    for h in range(H.dim):
        expected = _scale(unit_b, H.counit[h])
        if sig.value({h: one}, unit_h) != expected or sig.value(unit_h, {h: one}) != expected:
            failures.append(f"normalization at {H.labels[h]}")
    deltas = [H.comult_sparse({h: one}) for h in range(H.dim)]
    for x in range(H.dim):
        for y in range(H.dim):
            for z in range(H.dim):
                lhs: Sparse = {}
                for (x1, x2), a in deltas[x].items():
                    for (y1, y2), b in deltas[y].items():
                        for (z1, z2), c in deltas[z].items():
                            left = act.act({x1: one}, sig.value_basis(y1, z1))
                            right = sig.value({x2: one}, H.mult.get((y2, z2), {}))
                            _add_into(lhs, B.mul_sparse(left, right), a * b * c)
                rhs: Sparse = {}
                for (x1, x2), a in deltas[x].items():
                    for (y1, y2), b in deltas[y].items():
                        left = sig.value_basis(x1, y1)
                        right = sig.value(H.mult.get((x2, y2), {}), {z: one})
                        _add_into(rhs, B.mul_sparse(left, right), a * b)
                if lhs != rhs:
                    failures.append(
                        f"cocycle identity at ({H.labels[x]}, {H.labels[y]}, {H.labels[z]})"
                    )
    for g in range(H.dim):
        for h in range(H.dim):
            value = sig.value_basis(g, h)
            tensor: Dict[Tuple[int, int], ExactScalar] = {}
            for (g1, g2), a in deltas[g].items():
                for (h1, h2), b in deltas[h].items():
                    for k1, v1 in sig.value_basis(g1, h1).items():
                        for k2, v2 in sig.value_basis(g2, h2).items():
                            _accumulate(tensor, (k1, k2), a * b * v1 * v2)
            if B.comult_sparse(value) != tensor or B.counit_sparse(value) != H.counit[g] * H.counit[h]:
                failures.append(f"cocycle is not a coalgebra map at ({H.labels[g]}, {H.labels[h]})")
    if not failures:
        try:
            sig.inverse()
        except InvalidCocycle:
            failures.append("cocycle is not convolution invertible")
    return failures


def twisted_module_failures(act: MeasuringAction, sig: Cocycle) -> List[str]:
    H, B = act.H, act.B
    one = H.field.one
    failures = []
    for b in range(B.dim):
        if act.act(H.unit_sparse, {b: one}) != {b: one}:
            failures.append(f"1 -> {B.labels[b]} != {B.labels[b]}")
    deltas = [H.comult_sparse({h: one}) for h in range(H.dim)]
    for x in range(H.dim):
        for y in range(H.dim):
            for b in range(B.dim):
                lhs: Sparse = {}
                rhs: Sparse = {}
                for (x1, x2), c in deltas[x].items():
                    for (y1, y2), d in deltas[y].items():
                        inner = act.act({x1: one}, act.act_basis(y1, b))
                        _add_into(lhs, B.mul_sparse(inner, sig.value_basis(x2, y2)), c * d)
                        moved = act.act(H.mult.get((x2, y2), {}), {b: one})
                        _add_into(rhs, B.mul_sparse(sig.value_basis(x1, y1), moved), c * d)
                if lhs != rhs:
                    failures.append(
                        f"twisted module identity at ({H.labels[x]}, {H.labels[y]}, {B.labels[b]})"
                    )
    return failures


def hopf_compatibility_holds(act: MeasuringAction, sig: Cocycle) -> bool:
    """g1 (x) (g2 -> a) = g2 (x) (g1 -> a) and g1h1 (x) sigma(g2, h2) = g2h2 (x) sigma(g1, h1)."""
    H, B = act.H, act.B
    one = H.field.one
    deltas = [H.comult_sparse({h: one}) for h in range(H.dim)]
    for g in range(H.dim):
        for a in range(B.dim):
            left: Dict[Tuple[int, int], ExactScalar] = {}
            right: Dict[Tuple[int, int], ExactScalar] = {}
            for (g1, g2), c in deltas[g].items():
                for k, v in act.act_basis(g2, a).items():
                    _accumulate(left, (g1, k), c * v)
                for k, v in act.act_basis(g1, a).items():
                    _accumulate(right, (g2, k), c * v)
            if left != right:
                return False
        for h in range(H.dim):
            left = {}
            right = {}
            for (g1, g2), c in deltas[g].items():
                for (h1, h2), d in deltas[h].items():
                    for p, u in H.mult.get((g1, h1), {}).items():
                        for k, v in sig.value_basis(g2, h2).items():
                            _accumulate(left, (p, k), c * d * u * v)
                    for p, u in H.mult.get((g2, h2), {}).items():
                        for k, v in sig.value_basis(g1, h1).items():
                            _accumulate(right, (p, k), c * d * u * v)
            if left != right:
                return False
    return True


# Crossed products


@dataclass
class CrossedProduct:
    """B #_sigma H with its projection onto H and the section h -> 1 # h."""

    algebra: FinHopfAlgebra
    pi_H: HopfMorphism
    i_H: CoalgebraMap
    action: MeasuringAction
    cocycle: Cocycle

    def kernel_inclusion(self) -> HopfMorphism:
        """b -> b # 1"""
        B, H = self.action.B, self.action.H
        n_h = H.dim
        columns = []
        for b in range(B.dim):
            columns.append({b * n_h + h: c for h, c in H.unit_sparse.items()})
        return HopfMorphism(B, self.algebra, columns, f"B->{self.algebra.name}")


def build_crossed_product(
    act: MeasuringAction, sig: Cocycle, check: bool = True, name: Optional[str] = None
) -> CrossedProduct:
    """Hopf algebra on B (x) H with (b#h)(b'#h') = b(h1 -> b')sigma(h2, h'1) # h3 h'2."""
    H, B = act.H, act.B
    if check:
        failures = measuring_failures(act)
        if failures:
            raise InvalidMeasuring("; ".join(failures[:3]))
        failures = cocycle_failures(act, sig)
        if failures:
            raise InvalidCocycle("; ".join(failures[:3]))
        failures = twisted_module_failures(act, sig)
        if failures:
            raise NotTwistedModule("; ".join(failures[:3]))
        if H.is_cocommutative and B.is_cocommutative and not hopf_compatibility_holds(act, sig):
            raise CheckFailed("Hopf compatibility conditions fail for cocommutative data")
    one = H.field.one
    n_h = H.dim
    dim = B.dim * n_h
    triple = [iterated_coproduct(H, {h: one}, 3) for h in range(n_h)]
    deltas = [H.comult_sparse({h: one}) for h in range(n_h)]
    mult: Dict[Tuple[int, int], Sparse] = {}
    for b in range(B.dim):
        for h in range(n_h):
            for b2 in range(B.dim):
                for h2 in range(n_h):
                    out: Sparse = {}
                    for (x1, x2, x3), c in triple[h].items():
                        left = B.mul_sparse({b: one}, act.act_basis(x1, b2))
                        for (y1, y2), d in deltas[h2].items():
                            bpart = B.mul_sparse(left, sig.value_basis(x2, y1))
                            hpart = H.mult.get((x3, y2), {})
                            for kb, vb in bpart.items():
                                for kh, vh in hpart.items():
                                    _accumulate(out, kb * n_h + kh, c * d * vb * vh)
                    mult[(b * n_h + h, b2 * n_h + h2)] = out
    unit = [bu * hu for bu in B.unit for hu in H.unit]
    counit = [bc * hc for bc in B.counit for hc in H.counit]
    comult = []
    for b in range(B.dim):
        for h in range(n_h):
            comult.append(
                [
                    (c * d, b1 * n_h + h1, b2 * n_h + h2)
                    for c, b1, b2 in B.comult[b]
                    for d, h1, h2 in H.comult[h]
                ]
            )
    labels = [f"{lb}#{lh}" for lb in B.labels for lh in H.labels]
    algebra = FinHopfAlgebra.from_bialgebra(
        H.field, dim, mult, unit, comult, counit, labels, name or f"{B.name}#{H.name}"
    )
    if check:
        report = verify_axioms(algebra)
        if not report.passed:
            raise CheckFailed(f"crossed product fails axioms: {report.failures}")
    pi_cols = []
    for b in range(B.dim):
        for h in range(n_h):
            pi_cols.append({h: B.counit[b]} if B.counit[b] else {})
    pi_H = HopfMorphism(algebra, H, pi_cols, f"pi_H({algebra.name})", check=check)
    i_cols = [{bu * n_h + h: c for bu, c in B.unit_sparse.items()} for h in range(n_h)]
    i_H = CoalgebraMap(H, algebra, i_cols, f"i_H({algebra.name})", check=check)
    logger.debug("built crossed product %s of dimension %d", algebra.name, dim)
    return CrossedProduct(algebra=algebra, pi_H=pi_H, i_H=i_H, action=act, cocycle=sig)


# Cleft analysis


@dataclass
class CleftData:
    """A surjection p: A -> H with a coalgebra section i and everything derived from them."""

    p: HopfMorphism
    i: CoalgebraMap
    kernel: HopfSubalgebra
    action: MeasuringAction
    cocycle: Cocycle
    crossed: CrossedProduct
    psi: HopfMorphism
    psi_inverse: HopfMorphism
    j_inverse: LinearMap

    @property
    def A(self) -> FinHopfAlgebra:
        return self.p.dom

    @property
    def H(self) -> FinHopfAlgebra:
        return self.p.cod

    def sigma_table(self) -> Dict[str, str]:
        """sigma on pairs of basis labels, rendered with kernel labels."""
        B = self.cocycle.B
        H = self.H
        table = {}
        for g in range(H.dim):
            for h in range(H.dim):
                value = B.element(to_dense(B.field, self.cocycle.value_basis(g, h), B.dim))
                table[f"{H.labels[g]},{H.labels[h]}"] = value.label()
        return table


def _as_coalgebra_section(p: HopfMorphism, i: LinearMap) -> CoalgebraMap:
    if i.dom != p.cod or i.cod != p.dom:
        raise NotASection(f"{i.name} does not go from {p.cod.name} to {p.dom.name}", reference=i.name)
    one = p.cod.field.one
    for h in range(p.cod.dim):
        if p.apply_sparse(i.columns[h]) != {h: one}:
            raise NotASection(f"{p.name} o {i.name} is not the identity at {p.cod.labels[h]}", reference=i.name)
    failures = coalgebra_failures(i)
    if failures:
        raise SectionNotCoalgebra(f"{i.name} is not a coalgebra map: {failures[0]}", reference=i.name)
    if isinstance(i, CoalgebraMap):
        return i
    return CoalgebraMap(i.dom, i.cod, i.columns, i.name, check=False)


def analyze_cleft(p: HopfMorphism, i: LinearMap, check: bool = True) -> CleftData:
    """Derive (action, cocycle) from a cleaving section and the isomorphism psi: A = B #_sigma H."""
    section = _as_coalgebra_section(p, i)
    A, H = p.dom, p.cod
    one = A.field.one
    kernel = hopf_kernel(p)
    B = kernel.algebra()
    j_inv = convolution_inverse(section)
    for h in range(H.dim):
        if j_inv.columns[h] != A.antipode_sparse(section.columns[h]):
            raise CheckFailed(f"convolution inverse of {section.name} differs from S o i at {H.labels[h]}")

    def in_kernel(x: Sparse, what: str) -> Sparse:
        coords = kernel.coordinates(to_dense(A.field, x, A.dim))
        if coords is None:
            raise ValuesEscapeKernel(f"{what} does not lie in Hker({p.name})", reference=section.name)
        return to_sparse(coords)

    deltas = [H.comult_sparse({h: one}) for h in range(H.dim)]
    # h -> b := i(h1) b S(i(h2))
    act_table = []
    for h in range(H.dim):
        for vec in kernel.basis:
            b = to_sparse(vec)
            out: Sparse = {}
            for (h1, h2), c in deltas[h].items():
                value = A.mul_sparse(A.mul_sparse(section.columns[h1], b), j_inv.columns[h2])
                _add_into(out, value, c)
            act_table.append(in_kernel(out, f"{H.labels[h]} -> b"))
    # sigma(g, h) := i(g1) i(h1) S(i(g2 h2))
    sig_table = []
    for g in range(H.dim):
        for h in range(H.dim):
            out = {}
            for (g1, g2), c in deltas[g].items():
                for (h1, h2), d in deltas[h].items():
                    left = A.mul_sparse(section.columns[g1], section.columns[h1])
                    right = A.antipode_sparse(section.apply_sparse(H.mult.get((g2, h2), {})))
                    _add_into(out, A.mul_sparse(left, right), c * d)
            sig_table.append(in_kernel(out, f"sigma({H.labels[g]}, {H.labels[h]})"))
    act = MeasuringAction(H, B, act_table)
    sig = Cocycle(H, B, sig_table)
    crossed = build_crossed_product(act, sig, check=check, name=f"Hker#{H.name}")
    n_h = H.dim
    # psi(a) = a1 j^-1(p(a2)) (x) p(a3)
    psi_cols = []
    for a in range(A.dim):
        legs: Dict[int, Sparse] = {}
        for (a1, a2, a3), c in iterated_coproduct(A, {a: one}, 3).items():
            left = A.mul_sparse({a1: one}, j_inv.apply_sparse(p.columns[a2]))
            for h, v in p.columns[a3].items():
                _add_into(legs.setdefault(h, {}), left, c * v)
        col: Sparse = {}
        for h, vec in legs.items():
            for b, v in in_kernel(vec, f"psi({A.labels[a]})").items():
                _accumulate(col, b * n_h + h, v)
        psi_cols.append(col)
    psi = HopfMorphism(A, crossed.algebra, psi_cols, f"psi({p.name})", check=check)
    # psi^-1(b # h) = b j(h)
    inv_cols = []
    for vec in kernel.basis:
        b = to_sparse(vec)
        for h in range(n_h):
            inv_cols.append(A.mul_sparse(b, section.columns[h]))
    psi_inv = HopfMorphism(crossed.algebra, A, inv_cols, f"psi^-1({p.name})", check=check)
    if psi_inv.compose(psi).columns != tuple({k: one} for k in range(A.dim)):
        raise CheckFailed(f"psi^-1 o psi is not the identity for {p.name}")
    if psi.compose(psi_inv).columns != tuple({k: one} for k in range(crossed.algebra.dim)):
        raise CheckFailed(f"psi o psi^-1 is not the identity for {p.name}")
    logger.debug("analyzed cleft extension %s with kernel of dimension %d", p.name, kernel.dim)
    return CleftData(
        p=p, i=section, kernel=kernel, action=act, cocycle=sig, crossed=crossed,
        psi=psi, psi_inverse=psi_inv, j_inverse=j_inv,
    )


def is_trivial_extension(d: CleftData) -> bool:
    """True iff the section is multiplicative; checked against triviality of sigma."""
    multiplicative = not algebra_failures(d.i)
    if multiplicative != d.cocycle.is_trivial():
        raise CheckFailed(f"section multiplicativity and cocycle triviality disagree for {d.p.name}")
    return multiplicative


# Canonical Galois map


def balanced_tensor(A: FinHopfAlgebra, B: HopfSubalgebra) -> Subspace:
    """Relations span{ab (x) a' - a (x) ba' : b in B+} of A (x)_B A inside A (x) A."""
    n = A.dim
    one = A.field.one
    plus = []
    for vec in B.basis:
        eps = A.apply_counit(vec)
        v = to_sparse(tuple(x - eps * u for x, u in zip(vec, A.unit)))
        if v:
            plus.append(v)
    builder = SpanBuilder(A.field, n * n)
    for b in plus:
        for a in range(n):
            ab = A.mul_sparse({a: one}, b)
            for a2 in range(n):
                ba2 = A.mul_sparse(b, {a2: one})
                rel: Sparse = {}
                for k, v in ab.items():
                    _accumulate(rel, k * n + a2, v)
                for k, v in ba2.items():
                    _accumulate(rel, a * n + k, -v)
                if rel:
                    builder.add(to_dense(A.field, rel, n * n))
    return builder.subspace()


def canonical_map_report(d: CleftData) -> Dict[str, object]:
    """can(a (x) a') = a a'1 (x) p(a'2) and can^-1(a (x) h) = a j^-1(h1) (x) j(h2)."""
    A, H, p = d.A, d.H, d.p
    n, n_h = A.dim, H.dim
    one = A.field.one
    relations = balanced_tensor(A, d.kernel)

    def can(a: int, a2: int) -> Sparse:
        out: Sparse = {}
        for (x1, x2), c in A.comult_sparse({a2: one}).items():
            left = A.mul_sparse({a: one}, {x1: one})
            for k, u in left.items():
                for h, v in p.columns[x2].items():
                    _accumulate(out, k * n_h + h, c * u * v)
        return out

    def can_inverse(a: int, h: int) -> Sparse:
        out: Sparse = {}
        for (h1, h2), c in H.comult_sparse({h: one}).items():
            left = A.mul_sparse({a: one}, d.j_inverse.columns[h1])
            for k, u in left.items():
                for k2, v in d.i.columns[h2].items():
                    _accumulate(out, k * n + k2, c * u * v)
        return out

    def can_vector(x: Sparse) -> Sparse:
        out: Sparse = {}
        for idx, c in x.items():
            _add_into(out, can(*divmod(idx, n)), c)
        return out

    kills_relations = all(not can_vector(to_sparse(r)) for r in relations.basis)
    right_inverse = True
    for a in range(n):
        for h in range(n_h):
            back = can_vector(can_inverse(a, h))
            if back != {a * n_h + h: one}:
                right_inverse = False
    left_inverse = True
    for idx in relations.complement_indices:
        a, a2 = divmod(idx, n)
        x = can(a, a2)
        round_trip: Sparse = {}
        for k, c in x.items():
            _add_into(round_trip, can_inverse(*divmod(k, n_h)), c)
        _accumulate(round_trip, idx, -one)
        if round_trip and not relations.contains(to_dense(A.field, round_trip, n * n)):
            left_inverse = False
    return {
        "balanced_dim": n * n - relations.dim,
        "target_dim": n * n_h,
        "well_defined": kills_relations,
        "can_after_inverse_is_identity": right_inverse,
        "inverse_after_can_is_identity": left_inverse,
    }


def canonical_map_check(d: CleftData) -> bool:
    report = canonical_map_report(d)
    return bool(
        report["well_defined"]
        and report["can_after_inverse_is_identity"]
        and report["inverse_after_can_is_identity"]
        and report["balanced_dim"] == report["target_dim"]
    )
