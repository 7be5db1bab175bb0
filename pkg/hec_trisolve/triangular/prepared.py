##############################################################################
# Copyright 2026 The hec-trisolve Authors
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.
##############################################################################

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import MatrixFormatError, SingularTriangularError
from ..formats.csr import INDEX_DTYPE, CsrMatrix, csr_from_coo
from ..formats.hec import HecMatrix, WidthPolicy, hec_from_csr
from ..schedule.levels import (
    LevelSchedule,
    build_schedule,
    compute_levels,
    reorder_matrix,
)


class TriangularKind(Enum):
    LOWER = 'lower'
    UPPER = 'upper'


@dataclass(frozen=True)
class PreparedTriangular:
    """A triangular matrix preprocessed for the level-parallel solve.

    The matrix is stored reordered level by level, as a lower triangular HEC
    matrix whose CSR rows end with the diagonal. An upper triangular matrix
    is first turned into a lower triangular one by reversing the order of
    its rows and columns (reversal_applied is then set).
    """

    kind: TriangularKind
    hec: HecMatrix
    schedule: LevelSchedule
    reversal_applied: bool
    n: int

    @property
    def row_map(self) -> np.ndarray:
        """Original row index -> row of the prepared HEC matrix"""
        if self.reversal_applied:
            return self.schedule.perm[reversal_map(self.n)]
        return self.schedule.perm

    @property
    def nlev(self) -> int:
        return self.schedule.nlev


def reversal_map(n: int) -> np.ndarray:
    """The index reversal t(i) = n - 1 - i, an involution on [0, n)"""
    return np.arange(n - 1, -1, -1, dtype=INDEX_DTYPE)


def reverse_matrix(a: CsrMatrix) -> CsrMatrix:
    """Reverse rows and columns: R[t(i), t(j)] = A[i, j]. An upper triangular
    matrix becomes lower triangular and vice versa."""
    t = reversal_map(a.n_rows)
    rows = t[a.row_indices()]
    cols = t[a.col_indices]
    return csr_from_coo(a.n_rows, a.n_cols, rows, cols, a.values)


def _check_diagonal(a: CsrMatrix, lower: bool) -> None:
    """Raise if a row has no diagonal entry or a zero one. For a lower
    triangular matrix the diagonal is the last entry of the row, for an upper
    triangular matrix it is the first."""
    n = a.n_rows
    if n > 0 and a.nnz == 0:
        raise SingularTriangularError(0)
    lengths = a.row_lengths
    non_empty = lengths > 0
    pos = np.full(n, -1, dtype=INDEX_DTYPE)
    if lower:
        pos[non_empty] = a.row_offsets[1:][non_empty] - 1
    else:
        pos[non_empty] = a.row_offsets[:-1][non_empty]
    diag_cols = np.where(non_empty, a.col_indices[np.maximum(pos, 0)], -1)
    diag_values = np.where(non_empty, a.values[np.maximum(pos, 0)], 0.0)
    bad = np.flatnonzero((diag_cols != np.arange(n)) | (diag_values == 0))
    if bad.size:
        raise SingularTriangularError(int(bad[0]))


def _prepare(
    l: CsrMatrix,
    width_policy: WidthPolicy,
    kind: TriangularKind,
    reversal_applied: bool,
) -> PreparedTriangular:
    levels = compute_levels(l)
    schedule = build_schedule(levels)
    reordered = reorder_matrix(l, schedule)
    hec = hec_from_csr(reordered, triangular=True, width_policy=width_policy)
    logging.info(
        f'Prepared {kind.value} triangular solver: {l.n_rows} rows, '
        f'{l.nnz} entries, {schedule.nlev} levels, ELL width '
        f'{hec.ell.width}'
    )
    return PreparedTriangular(
        kind=kind,
        hec=hec,
        schedule=schedule,
        reversal_applied=reversal_applied,
        n=l.n_rows,
    )


def prepare_lower(
    l: CsrMatrix, width_policy: WidthPolicy = WidthPolicy.auto()
) -> PreparedTriangular:
    """Preprocess a lower triangular matrix: compute the levels, the level
    order permutation, reorder the matrix and convert it to HEC.

    Raises:
        MatrixFormatError: the matrix is not square and lower triangular
        SingularTriangularError: a diagonal entry is zero or missing
    """
    if l.n_rows != l.n_cols or not l.is_lower_triangular():
        raise MatrixFormatError(
            'prepare_lower expects a square lower triangular matrix'
        )
    _check_diagonal(l, lower=True)
    return _prepare(l, width_policy, TriangularKind.LOWER, False)


def prepare_upper(
    u: CsrMatrix, width_policy: WidthPolicy = WidthPolicy.auto()
) -> PreparedTriangular:
    """Preprocess an upper triangular matrix.

    The rows and columns are reversed with t(i) = n - 1 - i, which yields a
    lower triangular matrix with the same entries, then the lower triangular
    preprocessing is applied.

    Raises:
        MatrixFormatError: the matrix is not square and upper triangular
        SingularTriangularError: a diagonal entry is zero or missing (the
            reported row is a row of u)
    """
    if u.n_rows != u.n_cols or not u.is_upper_triangular():
        raise MatrixFormatError(
            'prepare_upper expects a square upper triangular matrix'
        )
    _check_diagonal(u, lower=False)
    return _prepare(
        reverse_matrix(u), width_policy, TriangularKind.UPPER, True
    )
