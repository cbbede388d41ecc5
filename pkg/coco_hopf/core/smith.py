"""Smith normal form of integer matrices, computed by sympy over ZZ.

Results come back as numpy ``object`` arrays so that Python's arbitrary
precision integers are used throughout.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithForm:
    """Result of ``smith_normal_form``: ``left @ m @ right`` is diagonal."""

    diagonal: List[int]
    left: np.ndarray
    left_inverse: np.ndarray
    right: Optional[np.ndarray]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> List[int]:
        """Non-zero diagonal entries greater than one."""
        return [d for d in self.diagonal if d > 1]


def _as_object_array(m: Sequence[Sequence[int]]) -> np.ndarray:
    a = np.array(m, dtype=object)
    if a.ndim != 2:
        a = a.reshape(len(m), -1 if len(m) else 0)
    return a


def _to_numpy(m: Matrix) -> np.ndarray:
    return np.array([[int(x) for x in row] for row in m.tolist()], dtype=object).reshape(m.rows, m.cols)


def _identity(n: int) -> np.ndarray:
    return np.identity(n, dtype=int).astype(object)


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = True) -> SmithForm:
    """Diagonalize ``m`` by unimodular row and column operations.

    The diagonal satisfies d_i | d_{i+1} with non-negative entries. The left
    transform and its inverse are always returned; the right transform only
    when ``transforms`` is set.
    """
    a = _as_object_array(m)
    nrows, ncols = a.shape
    if nrows == 0 or ncols == 0:
        return SmithForm([], _identity(nrows), _identity(nrows), _identity(ncols) if transforms else None)
    diag, left, right = smith_normal_decomp(Matrix(a.tolist()), domain=ZZ)
    diagonal = [int(diag[i, i]) for i in range(min(nrows, ncols))]
    for i, d in enumerate(diagonal):
        if d < 0:
            diagonal[i] = -d
            left[i, :] = -left[i, :]
    left_inverse = left.inv()
    logger.debug("smith form of %dx%d matrix: rank %d", nrows, ncols, sum(1 for d in diagonal if d))
    return SmithForm(
        diagonal=diagonal,
        left=_to_numpy(left),
        left_inverse=_to_numpy(left_inverse),
        right=_to_numpy(right) if transforms else None,
    )


def invariant_factors(m: Sequence[Sequence[int]]) -> List[int]:
    """Invariant factors greater than one of the cokernel of ``m``, without transforms."""
    a = _as_object_array(m)
    if 0 in a.shape:
        return []
    return [int(d) for d in _invariant_factors(Matrix(a.tolist()), domain=ZZ) if d > 1]
