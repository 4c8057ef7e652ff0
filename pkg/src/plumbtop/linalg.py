"""
Exact integer linear algebra.

Matrices are numpy arrays with ``dtype=object`` so every entry stays a Python
integer. The Smith normal form, determinant and definiteness test come from
sympy, working over the integer ring ``ZZ``.
"""

import logging
import numbers
from dataclasses import dataclass
from typing import Any, List, Sequence, Tuple, Union

import numpy as np
from sympy import ZZ, Matrix
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.polys.matrices.normalforms import smith_normal_decomp

from plumbtop.errors import MatrixError

logger = logging.getLogger(__name__)

IntMatrix = np.ndarray
MatrixLike = Union[np.ndarray, Sequence[Sequence[int]]]


def _check_entry(entry: Any, i: int, j: int) -> int:
    if isinstance(entry, bool) or not isinstance(entry, numbers.Integral):
        raise MatrixError(f"entry ({i}, {j}) is not an integer: {entry!r}")
    return int(entry)


def as_int_matrix(data: MatrixLike) -> IntMatrix:
    """Validate rectangular integer data and return an exact object matrix.

    Args:
        data: A 2-D numpy array or a list of equal-length rows.

    Returns:
        A copy with ``dtype=object`` holding Python ints.

    Raises:
        MatrixError: If rows differ in length or an entry is not an integer.
    """
    if isinstance(data, np.ndarray):
        if data.ndim != 2:
            raise MatrixError(f"expected a 2-D matrix, got {data.ndim} dimensions")
        out = np.zeros(data.shape, dtype=object)
        for (i, j), entry in np.ndenumerate(data):
            out[i, j] = _check_entry(entry, i, j)
        return out

    rows: List[List[Any]] = []
    for i, row in enumerate(data):
        if not isinstance(row, (list, tuple, np.ndarray)):
            raise MatrixError(f"row {i} is not a list of integers: {row!r}")
        rows.append(list(row))
    if not rows:
        return np.zeros((0, 0), dtype=object)
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise MatrixError(f"row {i} has length {len(row)}, expected {width}")
    out = np.zeros((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            out[i, j] = _check_entry(entry, i, j)
    return out


def identity(n: int) -> IntMatrix:
    """Return the n x n identity as an exact object matrix."""
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def to_lists(matrix: IntMatrix) -> List[List[int]]:
    """Convert a matrix to nested lists of ints (JSON friendly)."""
    return [[int(x) for x in row] for row in matrix.tolist()]


def _to_domain(matrix: IntMatrix) -> DomainMatrix:
    return DomainMatrix([[ZZ(int(x)) for x in row] for row in matrix.tolist()], matrix.shape, ZZ)


def _from_domain(matrix: DomainMatrix) -> IntMatrix:
    return as_int_matrix([[int(x) for x in row] for row in matrix.to_list()])


def _to_sympy(matrix: IntMatrix) -> Matrix:
    return Matrix(matrix.shape[0], matrix.shape[1], [int(x) for x in matrix.flat])


@dataclass(frozen=True, eq=False)
class SnfResult:
    """Smith normal form of M: ``u @ M @ v`` is diagonal with entries ``d``."""

    d: Tuple[int, ...]
    u: IntMatrix
    v: IntMatrix
    rank: int
    shape: Tuple[int, int]

    def diagonal(self) -> IntMatrix:
        """Return diag(d) with the shape of the original matrix."""
        out = np.zeros(self.shape, dtype=object)
        for i, value in enumerate(self.d):
            out[i, i] = value
        return out

    @property
    def torsion(self) -> Tuple[int, ...]:
        """Invariant factors greater than one."""
        return tuple(x for x in self.d if x > 1)


def smith_normal_form(matrix: MatrixLike) -> SnfResult:
    """Compute the Smith normal form of an integer matrix.

    Invariant factors are non-negative, each divides the next, and zeros
    (rank deficiency) trail.

    Args:
        matrix: Any integer matrix, including an empty one.

    Returns:
        SnfResult with unimodular ``u`` and ``v``.

    Example:
        >>> smith_normal_form([[2, 0], [0, 3]]).d
        (1, 6)
    """
    m = as_int_matrix(matrix)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return SnfResult(d=(), u=identity(rows), v=identity(cols), rank=0, shape=(rows, cols))

    smf, s, t = smith_normal_decomp(_to_domain(m))
    entries = smf.to_list()
    diag = tuple(int(entries[i][i]) for i in range(min(rows, cols)))
    rank = sum(1 for x in diag if x != 0)
    logger.debug("smith normal form of %dx%d matrix: %s", rows, cols, diag)
    return SnfResult(d=diag, u=_from_domain(s), v=_from_domain(t), rank=rank, shape=(rows, cols))


def invariant_factors(matrix: MatrixLike) -> Tuple[int, ...]:
    """Return the diagonal of the Smith normal form without building the transforms.

    Example:
        >>> invariant_factors([[2, 4], [6, 8]])
        (2, 4)
    """
    m = as_int_matrix(matrix)
    if 0 in m.shape:
        return ()
    return tuple(int(x) for x in _invariant_factors(_to_domain(m)))


def rank(matrix: MatrixLike) -> int:
    """Rank over the rationals."""
    return sum(1 for x in invariant_factors(matrix) if x != 0)


def nullity(matrix: MatrixLike) -> int:
    """Number of columns minus the rank."""
    return as_int_matrix(matrix).shape[1] - rank(matrix)


def determinant(matrix: MatrixLike) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Args:
        matrix: A square integer matrix. The empty matrix has determinant 1.

    Returns:
        The determinant as a Python int.

    Raises:
        MatrixError: If the matrix is not square.
    """
    a = as_int_matrix(matrix)
    n, cols = a.shape
    if n != cols:
        raise MatrixError(f"determinant needs a square matrix, got {n}x{cols}")
    if n == 0:
        return 1
    return int(_to_sympy(a).det(method="bareiss"))


def is_negative_definite(matrix: MatrixLike) -> bool:
    """Decide negative definiteness of a symmetric integer matrix.

    The empty matrix counts as negative definite.

    Raises:
        MatrixError: If the matrix is not square and symmetric.
    """
    a = as_int_matrix(matrix)
    n, cols = a.shape
    if n != cols:
        raise MatrixError(f"definiteness needs a square matrix, got {n}x{cols}")
    if not np.array_equal(a, a.T):
        raise MatrixError("definiteness needs a symmetric matrix")
    if n == 0:
        return True
    result = bool(_to_sympy(a).is_negative_definite)
    if not result:
        logger.debug("%dx%d form is not negative definite", n, n)
    return result
