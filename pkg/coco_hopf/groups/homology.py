"""Integral group homology in low degrees from the bar resolution.

``second_homology`` is the Schur multiplier oracle: H2(G, Z) is read off the
Smith normal form of the boundary C3 -> C2 of the (by default normalized)
inhomogeneous bar complex.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import CheckFailed, MalformedStructure
from ..core.smith import invariant_factors, smith_normal_form
from ..models.reports import AbelianGroupSNF
from .finite import CentralExtensionModel, FinGroup, GroupHom, check_order

logger = logging.getLogger(__name__)

Chain = Dict[Tuple[int, ...], int]


def _cells(group: FinGroup, degree: int, normalized: bool) -> List[Tuple[int, ...]]:
    elements = [g for g in group.elements if not (normalized and g == group.identity)]
    return list(itertools.product(elements, repeat=degree))


def _add(chain: Chain, cell: Tuple[int, ...], coeff: int, group: FinGroup, normalized: bool) -> None:
    if normalized and group.identity in cell:
        return
    value = chain.get(cell, 0) + coeff
    if value:
        chain[cell] = value
    else:
        chain.pop(cell, None)


def boundary(group: FinGroup, cell: Tuple[int, ...], normalized: bool = True) -> Chain:
    """Bar differential of a single cell [g1|...|gn], for n = 1, 2, 3."""
    out: Chain = {}
    mul = group.mul
    if len(cell) == 1:
        return out
    if len(cell) == 2:
        a, b = cell
        _add(out, (b,), 1, group, normalized)
        _add(out, (mul(a, b),), -1, group, normalized)
        _add(out, (a,), 1, group, normalized)
        return out
    if len(cell) == 3:
        a, b, c = cell
        _add(out, (b, c), 1, group, normalized)
        _add(out, (mul(a, b), c), -1, group, normalized)
        _add(out, (a, mul(b, c)), 1, group, normalized)
        _add(out, (a, b), -1, group, normalized)
        return out
    raise MalformedStructure(f"bar differential of degree {len(cell)} is not implemented")


def chain_boundary(group: FinGroup, chain: Chain, normalized: bool = True) -> Chain:
    out: Chain = {}
    for cell, coeff in chain.items():
        if normalized and group.identity in cell:
            continue
        for face, c in boundary(group, cell, normalized).items():
            _add(out, face, coeff * c, group, normalized)
    return out


@dataclass
class BarComplex:
    """Chain groups C1, C2, C3 and the boundaries d2: C2->C1, d3: C3->C2."""

    group: FinGroup
    normalized: bool
    cells: Dict[int, List[Tuple[int, ...]]]
    d2: List[Chain]
    d3: List[Chain]

    def index(self, degree: int) -> Dict[Tuple[int, ...], int]:
        return {cell: i for i, cell in enumerate(self.cells[degree])}

    def boundaries_compose_to_zero(self) -> bool:
        """d2 after d3 vanishes."""
        return all(not chain_boundary(self.group, col, self.normalized) for col in self.d3)


def bar_complex(group: FinGroup, normalized: bool = True) -> BarComplex:
    cells = {k: _cells(group, k, normalized) for k in (1, 2, 3)}
    d2 = [boundary(group, c, normalized) for c in cells[2]]
    d3 = [boundary(group, c, normalized) for c in cells[3]]
    return BarComplex(group=group, normalized=normalized, cells=cells, d2=d2, d3=d3)


@dataclass
class SecondHomology:
    """H2(G, Z) with cycle representatives and a class map on 2-cycles."""

    group: FinGroup
    invariant_factors: List[int]
    cycles: List[Chain]
    normalized: bool
    _pairs: Dict[Tuple[int, ...], int] = field(repr=False)
    _coordinate_rows: np.ndarray = field(repr=False)
    _rank: int = 0

    def snf(self) -> AbelianGroupSNF:
        return AbelianGroupSNF(invariant_factors=list(self.invariant_factors))

    @property
    def order(self) -> int:
        return self.snf().order

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def abelian_group(self) -> FinGroup:
        return FinGroup.abelian(self.invariant_factors, name=f"H2({self.group.name})")

    def class_of(self, chain: Chain) -> Tuple[int, ...]:
        """Coordinates of a 2-cycle in Z/d1 x ... x Z/dk."""
        if chain_boundary(self.group, chain, self.normalized):
            raise MalformedStructure("chain is not a 2-cycle")
        vec = np.zeros(len(self._pairs), dtype=int).astype(object)
        for cell, coeff in chain.items():
            if self.normalized and self.group.identity in cell:
                continue
            vec[self._pairs[cell]] += coeff
        coords = self._coordinate_rows.dot(vec)
        free = coords[len(self.invariant_factors) :]
        if any(free):
            raise CheckFailed(f"2-cycle of {self.group.name} has a free homology component")
        return tuple(int(c) % d for c, d in zip(coords, self.invariant_factors))

    def element_index(self, coords: Sequence[int]) -> int:
        """Index of a class in ``abelian_group()`` (lexicographic order)."""
        index = 0
        for c, d in zip(coords, self.invariant_factors):
            index = index * d + (c % d)
        return index


@lru_cache(maxsize=64)
def _second_homology(group: FinGroup, normalized: bool) -> SecondHomology:
    cx = bar_complex(group, normalized)
    pairs = cx.index(2)
    m = len(pairs)
    if m == 0:
        return SecondHomology(
            group=group,
            invariant_factors=[],
            cycles=[],
            normalized=normalized,
            _pairs=pairs,
            _coordinate_rows=np.zeros((0, 0), dtype=object),
        )
    # Distinct non-zero columns span the same image lattice.
    columns = {}
    for col in cx.d3:
        if not col:
            continue
        key = tuple(sorted((pairs[c], v) for c, v in col.items()))
        neg = tuple((i, -v) for i, v in key)
        if key not in columns and neg not in columns:
            columns[key] = None
    d3 = np.zeros((m, max(len(columns), 1)), dtype=int).astype(object)
    for j, key in enumerate(columns):
        for i, v in key:
            d3[i, j] = v
    snf = smith_normal_form(d3, transforms=False)
    positions = [i for i, d in enumerate(snf.diagonal) if d > 1]
    factors = [snf.diagonal[i] for i in positions]
    cycles = []
    for i in positions:
        col = snf.left_inverse[:, i]
        cycles.append({cx.cells[2][k]: int(v) for k, v in enumerate(col) if v})
    rank = snf.rank
    # coordinate rows: torsion positions first, then the free part beyond the rank
    free_rows = list(range(rank, m))
    coordinate_rows = snf.left[positions + free_rows, :]
    logger.debug(
        "H2(%s): chain ranks %d/%d, invariant factors %s", group.name, m, len(columns), factors
    )
    return SecondHomology(
        group=group,
        invariant_factors=factors,
        cycles=cycles,
        normalized=normalized,
        _pairs=pairs,
        _coordinate_rows=coordinate_rows,
        _rank=rank,
    )


def second_homology(group: FinGroup, max_order: int = 16, normalized: bool = True) -> SecondHomology:
    """Schur multiplier oracle; raises OrderBound above ``max_order``."""
    check_order(group, max_order)
    return _second_homology(group, normalized)


def schur_multiplier_oracle(group: FinGroup, max_order: int = 16, normalized: bool = True) -> List[int]:
    return list(second_homology(group, max_order, normalized).invariant_factors)


def push_chain(phi: GroupHom, chain: Chain) -> Chain:
    """Image of a bar chain under the chain map induced by ``phi``."""
    out: Chain = {}
    for cell, coeff in chain.items():
        image = tuple(phi(g) for g in cell)
        _add(out, image, coeff, phi.target, normalized=False)
    return out


@dataclass
class InducedH2Map:
    source: SecondHomology
    target: SecondHomology
    images: List[Tuple[int, ...]]

    def matrix(self) -> List[List[int]]:
        """Column j holds the image of the j-th source generator."""
        k = len(self.target.invariant_factors)
        return [[img[i] for img in self.images] for i in range(k)]

    def as_group_hom(self) -> GroupHom:
        src = self.source.abelian_group()
        tgt = self.target.abelian_group()
        src_elements = list(itertools.product(*(range(d) for d in self.source.invariant_factors)))
        images = []
        for coords in src_elements:
            total = [0] * len(self.target.invariant_factors)
            for c, img in zip(coords, self.images):
                total = [t + c * x for t, x in zip(total, img)]
            images.append(self.target.element_index(total))
        return GroupHom(src, tgt, images)

    @property
    def is_zero(self) -> bool:
        return all(not any(img) for img in self.images)


def h2_induced_map(phi: GroupHom, max_order: int = 16, normalized: bool = True) -> InducedH2Map:
    source = second_homology(phi.source, max_order, normalized)
    target = second_homology(phi.target, max_order, normalized)
    images = [target.class_of(push_chain(phi, z)) for z in source.cycles]
    return InducedH2Map(source=source, target=target, images=images)


def _transgression_value(ext: CentralExtensionModel, chain: Chain, section: Sequence[int]) -> int:
    quotient, proj = ext.kernel_abelianization()
    local = {g: i for i, g in enumerate(sorted(ext.N))}
    G = ext.G
    value = quotient.identity
    for (a, b), coeff in chain.items():
        f = G.mul(G.mul(section[a], section[b]), G.inv(section[ext.Q.mul(a, b)]))
        value = quotient.mul(value, quotient.power(proj(local[f]), coeff))
    return value


def transgression(
    ext: CentralExtensionModel, chain: Chain, section: Optional[Sequence[int]] = None
) -> int:
    """Image of a 2-cycle of Q in N/[G,N] (index into ``ext.kernel_abelianization()[0]``).

    Evaluates the product of s(a)s(b)s(ab)^-1 over the cycle and checks the
    answer against a second normalized section.
    """
    if chain_boundary(ext.Q, chain, normalized=True):
        raise MalformedStructure("transgression needs a 2-cycle")
    first = tuple(section) if section is not None else ext.canonical_section()
    ext.check_section(first)
    if first[ext.Q.identity] != ext.G.identity:
        raise MalformedStructure("transgression needs a normalized section")
    value = _transgression_value(ext, chain, first)
    fibers = ext.fibers()
    second = tuple(
        ext.G.identity if q == ext.Q.identity else max(fibers[q]) for q in ext.Q.elements
    )
    if _transgression_value(ext, chain, second) != value:
        raise CheckFailed(f"transgression for {ext.name} depends on the section")
    return value


def abelian_invariants(group: FinGroup) -> List[int]:
    """Invariant factors of the abelianization of ``group``."""
    n = group.order
    relations = []
    for g in group.elements:
        for h in group.elements:
            row = [0] * n
            row[g] += 1
            row[h] += 1
            row[group.mul(g, h)] -= 1
            if any(row):
                relations.append(row)
    return invariant_factors(np.array(relations, dtype=object).T)
