"""Finite groups given by Cayley tables, homomorphisms and extensions."""

import itertools
import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import SymmetricGroup

from ..core.errors import MalformedStructure, NotASetSection, OrderBound

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


class FinGroup:
    """Finite group on the elements ``0..n-1`` with a Cayley table.

    ``table[a][b]`` is the index of the product ``a*b``. Labels are the names
    used in JSON output and in group-algebra bases.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
        check: bool = True,
    ):
        self.table: Table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        if n == 0:
            raise MalformedStructure("a group needs at least one element")
        self.labels: Tuple[str, ...] = tuple(labels) if labels is not None else tuple(
            str(i) for i in range(n)
        )
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise MalformedStructure("group labels must be distinct, one per element")
        self.name = name or f"G{n}"
        if check:
            self._validate()
        self.identity = next(e for e in range(n) if self.table[e] == tuple(range(n)))
        self.inverses: Tuple[int, ...] = tuple(
            next(b for b in range(n) if self.table[a][b] == self.identity) for a in range(n)
        )
        self._index = {label: i for i, label in enumerate(self.labels)}

    def _validate(self) -> None:
        n = len(self.table)
        full = set(range(n))
        for row in self.table:
            if len(row) != n or set(row) != full:
                raise MalformedStructure(f"{self.name}: Cayley table is not a Latin square")
        for col in range(n):
            if {self.table[r][col] for r in range(n)} != full:
                raise MalformedStructure(f"{self.name}: Cayley table is not a Latin square")
        if not any(self.table[e] == tuple(range(n)) for e in range(n)):
            raise MalformedStructure(f"{self.name}: no identity element")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise MalformedStructure(f"{self.name}: multiplication is not associative")

    # Constructors

    @classmethod
    def trivial(cls) -> "FinGroup":
        return cls([[0]], ["e"], name="trivial")

    @classmethod
    def cyclic(cls, n: int, generator: str = "x", name: Optional[str] = None) -> "FinGroup":
        labels = ["e", generator] + [f"{generator}^{k}" for k in range(2, n)]
        table = [[(a + b) % n for b in range(n)] for a in range(n)]
        return cls(table, labels[:n], name=name or f"C{n}", check=False)

    @classmethod
    def klein(cls) -> "FinGroup":
        table = [[a ^ b for b in range(4)] for a in range(4)]
        return cls(table, ["e", "a", "b", "ab"], name="V4", check=False)

    @classmethod
    def direct_product(cls, g: "FinGroup", h: "FinGroup", name: Optional[str] = None) -> "FinGroup":
        m = h.order
        table = [
            [g.mul(a // m, b // m) * m + h.mul(a % m, b % m) for b in range(g.order * m)]
            for a in range(g.order * m)
        ]
        labels = [f"({lg},{lh})" for lg in g.labels for lh in h.labels]
        return cls(table, labels, name=name or f"{g.name}x{h.name}", check=False)

    @classmethod
    def abelian(cls, factors: Sequence[int], name: Optional[str] = None) -> "FinGroup":
        """The group Z/d1 x ... x Z/dk on tuples in lexicographic order."""
        factors = [d for d in factors if d > 1]
        if not factors:
            return cls.trivial()
        elements = list(itertools.product(*(range(d) for d in factors)))
        index = {e: i for i, e in enumerate(elements)}
        table = [
            [index[tuple((x + y) % d for x, y, d in zip(a, b, factors))] for b in elements]
            for a in elements
        ]
        labels = ["(" + ",".join(str(x) for x in e) + ")" for e in elements]
        return cls(table, labels, name=name or "x".join(f"Z{d}" for d in factors), check=False)

    @classmethod
    def from_permutations(
        cls,
        generators: Sequence[Sequence[int]],
        name: Optional[str] = None,
        labels: Optional[Sequence[str]] = None,
        max_order: Optional[int] = None,
    ) -> "FinGroup":
        """Group generated by permutations of ``0..d-1`` (images listed per point).

        Products compose right to left: ``(p*q)(i) = p(q(i))``. The order is
        found by Schreier-Sims before any element is listed, so a group above
        ``max_order`` is refused cheaply.
        """
        if not generators:
            return cls.trivial()
        degree = len(generators[0])
        for g in generators:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise MalformedStructure(f"{list(g)} is not a permutation of 0..{degree - 1}")
        group = PermutationGroup([Permutation(list(g)) for g in generators])
        order = int(group.order())
        if max_order is not None and order > max_order:
            raise OrderBound(
                f"{name or 'permutation group'} has order {order} above the bound {max_order}", reference=name
            )
        # Dimino's method lists the identity first
        elements = [tuple(p) for p in group.generate_dimino(af=True)]
        logger.debug("permutation group of degree %d and order %d", degree, order)
        return cls._from_permutation_list(elements, name=name, labels=labels)

    @classmethod
    def _from_permutation_list(
        cls,
        elements: List[Tuple[int, ...]],
        name: Optional[str] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> "FinGroup":
        index = {p: i for i, p in enumerate(elements)}
        degree = len(elements[0])
        table = [
            [index[tuple(p[q[i]] for i in range(degree))] for q in elements] for p in elements
        ]
        if labels is None:
            labels = [cycle_notation(p) for p in elements]
        return cls(table, labels, name=name or f"Perm{len(elements)}", check=False)

    @classmethod
    def symmetric(cls, degree: int) -> "FinGroup":
        elements = sorted(tuple(p) for p in SymmetricGroup(degree).generate(af=True))
        return cls._from_permutation_list(elements, name=f"S{degree}")

    @classmethod
    def dihedral(cls, n: int) -> "FinGroup":
        """Symmetries of the n-gon, order 2n: elements s^f r^k at index f*n + k."""

        def mul(a: int, b: int) -> int:
            f1, k1 = divmod(a, n)
            f2, k2 = divmod(b, n)
            k = (-k1 if f2 else k1) + k2
            return ((f1 + f2) % 2) * n + k % n

        def rpow(k: int) -> str:
            return "" if k == 0 else ("r" if k == 1 else f"r^{k}")

        labels = ["e"] + [rpow(k) for k in range(1, n)] + ["s" + rpow(k) for k in range(n)]
        table = [[mul(a, b) for b in range(2 * n)] for a in range(2 * n)]
        return cls(table, labels, name=f"D{n}", check=False)

    @classmethod
    def quaternion(cls) -> "FinGroup":
        """Q8 with element index 2*u + (0 for +, 1 for -), u over 1, i, j, k."""
        # unit products: (sign, unit) of u*v
        units = {
            (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
            (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
            (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
            (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
        }

        def mul(a: int, b: int) -> int:
            ua, sa = divmod(a, 2)
            ub, sb = divmod(b, 2)
            sign, u = units[(ua, ub)]
            negative = (sa + sb + (1 if sign < 0 else 0)) % 2
            return 2 * u + negative

        labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        table = [[mul(a, b) for b in range(8)] for a in range(8)]
        return cls(table, labels, name="Q8", check=False)

    # Element access

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise MalformedStructure(f"{self.name} has no element {label!r}") from None

    def power(self, a: int, k: int) -> int:
        result = self.identity
        base = a if k >= 0 else self.inv(a)
        for _ in range(abs(k)):
            result = self.mul(result, base)
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    @property
    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self.elements for b in self.elements)

    # Subgroup calculus

    def generated_subgroup(self, generators: Iterable[int]) -> FrozenSet[int]:
        members = {self.identity}
        frontier = [self.identity]
        gens = list(set(generators))
        while frontier:
            fresh = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in members:
                        members.add(y)
                        fresh.append(y)
            frontier = fresh
        return frozenset(members)

    def commutator_subgroup(
        self, left: Optional[Iterable[int]] = None, right: Optional[Iterable[int]] = None
    ) -> FrozenSet[int]:
        """[left, right]; both default to the whole group."""
        xs = list(self.elements if left is None else left)
        ys = list(self.elements if right is None else right)
        return self.generated_subgroup(self.commutator(x, y) for x in xs for y in ys)

    def center(self) -> FrozenSet[int]:
        return frozenset(
            z for z in self.elements if all(self.mul(z, g) == self.mul(g, z) for g in self.elements)
        )

    def normal_closure(self, subset: Iterable[int]) -> FrozenSet[int]:
        return self.generated_subgroup(
            self.conjugate(g, x) for x in set(subset) for g in self.elements
        )

    def is_normal(self, subgroup: Iterable[int]) -> bool:
        members = set(subgroup)
        return all(self.conjugate(g, x) in members for g in self.elements for x in members)

    def conjugacy_classes(self) -> List[FrozenSet[int]]:
        classes: List[FrozenSet[int]] = []
        seen: set = set()
        for x in self.elements:
            if x in seen:
                continue
            cls = frozenset(self.conjugate(g, x) for g in self.elements)
            seen |= cls
            classes.append(cls)
        return classes

    def subgroup(self, members: Iterable[int], name: Optional[str] = None) -> Tuple["FinGroup", "GroupHom"]:
        """The subgroup on ``members`` (in index order) and its inclusion."""
        ordered = sorted(set(members))
        if self.identity not in ordered:
            raise MalformedStructure("a subgroup must contain the identity")
        local = {x: i for i, x in enumerate(ordered)}
        try:
            table = [[local[self.mul(a, b)] for b in ordered] for a in ordered]
        except KeyError:
            raise MalformedStructure("subset is not closed under multiplication") from None
        sub = FinGroup(table, [self.labels[x] for x in ordered], name=name or f"sub({self.name})", check=False)
        return sub, GroupHom(sub, self, ordered)

    def quotient(self, normal: Iterable[int], name: Optional[str] = None) -> Tuple["FinGroup", "GroupHom"]:
        """G/N with cosets ordered and labelled by their smallest element."""
        members = frozenset(normal)
        if not self.is_normal(members):
            raise MalformedStructure("quotient by a subgroup that is not normal")
        coset_of: Dict[int, int] = {}
        reps: List[int] = []
        for g in self.elements:
            if g in coset_of:
                continue
            coset = {self.mul(g, x) for x in members}
            for y in coset:
                coset_of[y] = len(reps)
            reps.append(min(coset))
        table = [[coset_of[self.mul(a, b)] for b in reps] for a in reps]
        q = FinGroup(table, [self.labels[r] for r in reps], name=name or f"{self.name}/N", check=False)
        return q, GroupHom(self, q, [coset_of[g] for g in self.elements])

    def abelian_invariants(self) -> List[int]:
        """Invariant factors of an abelian group (via Smith normal form)."""
        from .homology import abelian_invariants

        return abelian_invariants(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinGroup):
            return NotImplemented
        return self.table == other.table and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.table, self.labels))

    def __repr__(self) -> str:
        return f"FinGroup({self.name}, order={self.order})"


def cycle_notation(perm: Sequence[int]) -> str:
    """Disjoint-cycle name of a permutation of 0..d-1, points printed from 1."""
    cycles = Permutation(list(perm)).cyclic_form
    return "".join("(" + "".join(str(i + 1) for i in cycle) + ")" for cycle in cycles) or "e"


class GroupHom:
    """Homomorphism between finite groups given by the image of every element."""

    def __init__(self, source: FinGroup, target: FinGroup, images: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.images: Tuple[int, ...] = tuple(images)
        if len(self.images) != source.order:
            raise MalformedStructure("a group homomorphism needs one image per element")
        if check:
            for a in source.elements:
                for b in source.elements:
                    if self.images[source.mul(a, b)] != target.mul(self.images[a], self.images[b]):
                        raise MalformedStructure(
                            f"map {source.name} -> {target.name} is not multiplicative at "
                            f"({source.label(a)}, {source.label(b)})"
                        )

    @classmethod
    def from_labels(cls, source: FinGroup, target: FinGroup, mapping: Dict[str, str]) -> "GroupHom":
        """Homomorphism from label images; unlisted elements must follow from
        the listed ones as products."""
        images: Dict[int, int] = {source.identity: target.identity}
        for k, v in mapping.items():
            images[source.index(k)] = target.index(v)
        frontier = list(images)
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(images):
                    for x, y in ((a, b), (b, a)):
                        ab = source.mul(x, y)
                        if ab not in images:
                            images[ab] = target.mul(images[x], images[y])
                            fresh.append(ab)
            frontier = fresh
        if len(images) != source.order:
            raise MalformedStructure("label images do not generate the source group")
        return cls(source, target, [images[a] for a in source.elements])

    @classmethod
    def identity(cls, group: FinGroup) -> "GroupHom":
        return cls(group, group, list(group.elements), check=False)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def kernel(self) -> FrozenSet[int]:
        return frozenset(a for a in self.source.elements if self.images[a] == self.target.identity)

    def image(self) -> FrozenSet[int]:
        return frozenset(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first"""
        return GroupHom(first.source, self.target, [self.images[first(a)] for a in first.source.elements], check=False)

    def __repr__(self) -> str:
        return f"GroupHom({self.source.name} -> {self.target.name})"


class CentralExtensionModel:
    """A surjection phi: G -> Q together with N = ker(phi).

    Centrality is reported, not required; transgression and the five-term
    sequence also accept non-central kernels.
    """

    def __init__(self, phi: GroupHom, name: Optional[str] = None):
        if not phi.is_surjective:
            raise MalformedStructure(f"{phi!r} is not surjective")
        self.phi = phi
        self.G = phi.source
        self.Q = phi.target
        self.N = phi.kernel()
        self.name = name or f"{self.G.name}->{self.Q.name}"

    @property
    def is_central(self) -> bool:
        return self.N <= self.G.center()

    @property
    def is_stem(self) -> bool:
        return self.is_central and self.N <= self.G.commutator_subgroup()

    def relative_commutator(self) -> FrozenSet[int]:
        """[G, N]"""
        return self.G.commutator_subgroup(self.G.elements, self.N)

    def kernel_abelianization(self) -> Tuple[FinGroup, GroupHom]:
        """N/[G,N] as a group, with the projection from the subgroup N."""
        sub, incl = self.G.subgroup(self.N, name=f"ker({self.name})")
        local = {x: i for i, x in enumerate(incl.images)}
        return sub.quotient([local[x] for x in self.relative_commutator()], name=f"N/[G,N]({self.name})")

    def fibers(self) -> List[List[int]]:
        fibers: List[List[int]] = [[] for _ in self.Q.elements]
        for g in self.G.elements:
            fibers[self.phi(g)].append(g)
        return fibers

    def canonical_section(self) -> Tuple[int, ...]:
        """Set section choosing the smallest index in every fiber."""
        return tuple(min(f) for f in self.fibers())

    def set_sections(self, normalized: bool = True) -> Iterator[Tuple[int, ...]]:
        """All set-theoretic sections; normalized ones send 1 to 1."""
        fibers = self.fibers()
        if normalized:
            fibers[self.Q.identity] = [self.G.identity]
        return (tuple(choice) for choice in itertools.product(*fibers))

    def check_section(self, section: Sequence[int]) -> None:
        if len(section) != self.Q.order or any(
            self.phi(section[q]) != q for q in self.Q.elements
        ):
            raise NotASetSection(f"{list(section)} is not a set section of {self.name}")


def check_order(group: FinGroup, bound: int) -> None:
    if group.order > bound:
        raise OrderBound(
            f"{group.name} has order {group.order} above the bound {bound}", reference=group.name
        )
