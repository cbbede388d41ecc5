"""Free groups on finite label sets and the group algebra k[F(S)].

k[F(S)] is the free Hopf algebra on the set-like coalgebra k.S: Hopf maps out
of it are determined by where the generators go, and these must be
group-likes. Elements of k[F(S)] are finite sparse sums of reduced words.

Words are sympy ``FreeGroupElement`` objects, which are kept reduced under
multiplication. Labels such as "(12)" or "-1" are not valid symbol names, so
generator i is the sympy symbol ``x<i>`` and labels only appear in output.
"""

import logging
import random
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.combinatorics.free_groups import FreeGroupElement, free_group

from ..core.errors import MalformedStructure
from ..core.field import ExactScalar, Field
from .finite import FinGroup

logger = logging.getLogger(__name__)

Letter = Tuple[int, int]
FreeWord = FreeGroupElement


class FreeGroup:
    """Free group on the given generator labels."""

    def __init__(self, generators: Sequence[str]):
        if len(set(generators)) != len(generators):
            raise MalformedStructure("free generators must be distinct")
        self.generators: Tuple[str, ...] = tuple(generators)
        self._index = {g: i for i, g in enumerate(self.generators)}
        self._free, *gens = free_group(tuple(f"x{i}" for i in range(len(self.generators))))
        self._gens: Tuple[FreeWord, ...] = tuple(gens)
        self._symbol_index = {s: i for i, s in enumerate(self._free.symbols)}

    @property
    def rank(self) -> int:
        return len(self.generators)

    def identity(self) -> FreeWord:
        return self._free.identity

    def generator(self, label: str) -> FreeWord:
        return self._gens[self._index_of(label)]

    def word(self, *tokens: str) -> FreeWord:
        """Parse tokens such as "a" or "a^-1"."""
        letters = []
        for token in tokens:
            label, exp = (token[:-3], -1) if token.endswith("^-1") else (token, 1)
            letters.append((self._index_of(label), exp))
        return self.from_letters(letters)

    def from_letters(self, letters: Sequence[Letter]) -> FreeWord:
        """Reduced word of (generator index, +1 or -1) letters."""
        w = self._free.identity
        for gen, exp in letters:
            if exp not in (1, -1):
                raise MalformedStructure(f"letter exponent {exp} is not +1 or -1")
            if not 0 <= gen < self.rank:
                raise MalformedStructure(f"no free generator with index {gen}")
            w = w * self._gens[gen] ** exp
        return w

    def letters_of(self, word: FreeWord) -> List[Letter]:
        """``word`` spelled out one letter at a time."""
        out: List[Letter] = []
        for symbol, exp in word.array_form:
            out.extend([(self._symbol_index[symbol], 1 if exp > 0 else -1)] * abs(exp))
        return out

    def _index_of(self, label: str) -> int:
        if label not in self._index:
            raise MalformedStructure(f"{label!r} is not a free generator")
        return self._index[label]

    def format(self, word: FreeWord) -> str:
        if word.is_identity:
            return "1"
        return " ".join(
            self.generators[g] if e == 1 else f"{self.generators[g]}^-1" for g, e in self.letters_of(word)
        )

    def letters(self) -> List[Letter]:
        return [(g, e) for g in range(self.rank) for e in (1, -1)]

    def words(self, max_length: int) -> Iterator[FreeWord]:
        """All reduced words of length at most ``max_length``."""
        steps = [self._gens[g] ** e for g, e in self.letters()]
        frontier = [self._free.identity]
        yield self._free.identity
        for _ in range(max_length):
            fresh = []
            for w in frontier:
                for step in steps:
                    nxt = w * step
                    # a step that cancels the last letter shortens the word
                    if len(nxt) > len(w):
                        fresh.append(nxt)
                        yield nxt
            frontier = fresh

    def random_word(self, rng: random.Random, length: int) -> FreeWord:
        """Product of ``length`` random letters, reduced; it may come out shorter."""
        return self.from_letters([rng.choice(self.letters()) for _ in range(length)])

    def evaluate(self, word: FreeWord, group: FinGroup, images: Sequence[int]) -> int:
        """Image of ``word`` under the homomorphism sending generator i to images[i]."""
        x = group.identity
        for symbol, exp in word.array_form:
            x = group.mul(x, group.power(images[self._symbol_index[symbol]], exp))
        return x


class FreeHopfAlgebra:
    """Symbolic k[F(S)]: sparse sums of reduced words."""

    def __init__(self, labels: Sequence[str], field: Field):
        self.group = FreeGroup(labels)
        self.field = field

    def embed(self, label: str) -> Dict[FreeWord, ExactScalar]:
        """eta: the generator as a group-like element."""
        return {self.group.generator(label): self.field.one}

    def multiply(self, x: Mapping[FreeWord, ExactScalar], y: Mapping[FreeWord, ExactScalar]) -> Dict[FreeWord, ExactScalar]:
        out: Dict[FreeWord, ExactScalar] = {}
        for u, a in x.items():
            for v, b in y.items():
                w = u * v
                total = out.get(w, self.field.zero) + a * b
                if total:
                    out[w] = total
                else:
                    out.pop(w, None)
        return out

    def comultiply(self, x: Mapping[FreeWord, ExactScalar]) -> Dict[Tuple[FreeWord, FreeWord], ExactScalar]:
        return {(w, w): c for w, c in x.items() if c}

    def counit(self, x: Mapping[FreeWord, ExactScalar]) -> ExactScalar:
        total = self.field.zero
        for c in x.values():
            total = total + c
        return total

    def antipode(self, x: Mapping[FreeWord, ExactScalar]) -> Dict[FreeWord, ExactScalar]:
        return {w.inverse(): c for w, c in x.items() if c}

    def lift(self, group: FinGroup, assignment: Mapping[str, str]) -> "FreeLift":
        """The Hopf map k[F(S)] -> k[G] extending generator -> group-like."""
        images = [group.index(assignment[label]) for label in self.group.generators]
        return FreeLift(self, group, images)


class FreeLift:
    """Hopf map k[F(S)] -> k[G] determined by generator images."""

    def __init__(self, source: FreeHopfAlgebra, group: FinGroup, images: Sequence[int]):
        self.source = source
        self.group = group
        self.images = tuple(images)

    def on_word(self, word: FreeWord) -> int:
        return self.source.group.evaluate(word, self.group, self.images)

    def __call__(self, x: Mapping[FreeWord, ExactScalar]) -> Dict[int, ExactScalar]:
        field = self.source.field
        out: Dict[int, ExactScalar] = {}
        for w, c in x.items():
            g = self.on_word(w)
            total = out.get(g, field.zero) + c
            if total:
                out[g] = total
            else:
                out.pop(g, None)
        return out


def free_hopf_on_set(labels: Sequence[str], field: Optional[Field] = None) -> FreeHopfAlgebra:
    return FreeHopfAlgebra(labels, field or Field.rationals())


def free_counit_section_check(group: FinGroup, max_length: int = 3, field: Optional[Field] = None) -> bool:
    """Verify in k[F(G)] -> k[G] that the counit evaluation has the group-like
    embedding as a coalgebra section, and is multiplicative on words up to
    ``max_length`` letters times a generator letter."""
    free = free_hopf_on_set(group.labels, field)
    epsilon = free.lift(group, {label: label for label in group.labels})
    one = free.field.one
    for g in group.elements:
        x = free.embed(group.label(g))
        # eta(g) is group-like and eps(eta(g)) = g
        if free.comultiply(x) != {(w, w): one for w in x} or free.counit(x) != one:
            return False
        if epsilon(x) != {g: one}:
            return False
    letters = free.group.letters()
    for word in free.group.words(max_length):
        base = epsilon.on_word(word)
        for gen, exp in letters:
            letter = free.group.from_letters([(gen, exp)])
            expected = group.mul(base, epsilon.on_word(letter))
            if epsilon.on_word(word * letter) != expected:
                return False
    logger.debug("counit section verified for %s up to length %d", group.name, max_length)
    return True
