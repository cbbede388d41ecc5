"""Explicit coalgebra sections witnessing that the class E of cleft
surjections contains isomorphisms and is stable under pullback, composition
and right division."""

import logging
from typing import Tuple

from ..algebra.hopf import Sparse, _accumulate, to_dense, to_sparse
from ..algebra.morphism import CoalgebraMap, HopfMorphism, LinearMap, Pullback, pullback
from ..core.errors import NotASection, NotInvertible
from ..core.linalg import inverse
from .extensions import validate_section

logger = logging.getLogger(__name__)


def iso_section(f: HopfMorphism) -> CoalgebraMap:
    """The inverse of a Hopf isomorphism."""
    if not f.is_bijective:
        raise NotInvertible(f"{f.name} is not an isomorphism", reference=f.name)
    inv = inverse(f.matrix)
    if inv is None:
        raise NotInvertible(f"{f.name} is not an isomorphism", reference=f.name)
    columns = [to_sparse(col) for col in inv.columns()]
    return validate_section(f, CoalgebraMap(f.cod, f.dom, columns, f"{f.name}^-1", check=False))


def pullback_section(
    f: HopfMorphism, section: LinearMap, g: HopfMorphism
) -> Tuple[Pullback, CoalgebraMap]:
    """For f: A -> B with section s and g: C -> B, the projection A x_B C -> C
    is split by c -> s(g(c1)) (x) c2."""
    s = validate_section(f, section)
    square = pullback(f, g, name=f"{f.dom.name}x_{f.cod.name}{g.dom.name}")
    C = g.dom
    n_c = C.dim
    ambient = square.subalgebra.parent.dim
    one = C.field.one
    columns = []
    for c in range(n_c):
        vec: Sparse = {}
        for (c1, c2), coeff in C.comult_sparse({c: one}).items():
            for a, v in s.apply_sparse(g.columns[c1]).items():
                _accumulate(vec, a * n_c + c2, coeff * v)
        coords = square.subalgebra.coordinates(to_dense(C.field, vec, ambient))
        if coords is None:
            raise NotASection(f"s o {g.name} does not land in the pullback", reference=s.name)
        columns.append(to_sparse(coords))
    t = validate_section(square.second, CoalgebraMap(C, square.algebra, columns, f"t({s.name})", check=False))
    logger.debug("pullback of %s along %s split by %s", f.name, g.name, t.name)
    return square, t


def compose_sections(
    f: HopfMorphism, s: LinearMap, g: HopfMorphism, t: LinearMap
) -> Tuple[HopfMorphism, CoalgebraMap]:
    """g o f is split by s o t."""
    s = validate_section(f, s)
    t = validate_section(g, t)
    gf = g.compose(f)
    st = s.compose(t)
    return gf, validate_section(gf, st)


def divide_section(f: HopfMorphism, g: HopfMorphism, r: LinearMap) -> CoalgebraMap:
    """If r splits g o f then f o r splits g."""
    gf = g.compose(f)
    r = validate_section(gf, r)
    return validate_section(g, f.compose(r))
