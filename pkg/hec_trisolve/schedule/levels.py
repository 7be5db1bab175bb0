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

import numpy as np

from ..errors import LevelScheduleError, MatrixFormatError
from ..formats.csr import (
    INDEX_DTYPE,
    CsrMatrix,
    csr_from_coo,
    frozen_array,
)


@dataclass(frozen=True)
class LevelSchedule:
    """The level structure of a lower triangular matrix and the permutation
    that stores its rows level after level.

    Levels are numbered from 1. Row i of the original matrix becomes row
    perm[i] of the reordered matrix; the rows of level k + 1 are the rows
    level_starts[k] .. level_starts[k + 1] - 1 of the reordered matrix, in
    ascending original index order.
    """

    n: int

    # Level of each row of the original matrix, values 1 .. nlev
    level_of: np.ndarray

    # Old index -> new index
    perm: np.ndarray

    # New index -> old index
    inv_perm: np.ndarray

    # First reordered row of each level, plus n. Length nlev + 1.
    level_starts: np.ndarray

    nlev: int

    def __post_init__(self) -> None:
        for name in ['level_of', 'perm', 'inv_perm', 'level_starts']:
            object.__setattr__(
                self, name, frozen_array(getattr(self, name), INDEX_DTYPE)
            )

    @property
    def level_sizes(self) -> np.ndarray:
        """Number of rows in each level"""
        return np.diff(self.level_starts)

    def level_rows(self, k: int) -> range:
        """Reordered rows of the level with 0-based index k"""
        return range(int(self.level_starts[k]), int(self.level_starts[k + 1]))

    @classmethod
    def identity(cls, n: int) -> 'LevelSchedule':
        """A schedule with every row in its own level, in natural order"""
        return cls(
            n=n,
            level_of=np.arange(1, n + 1),
            perm=np.arange(n),
            inv_perm=np.arange(n),
            level_starts=np.arange(n + 1),
            nlev=n,
        )


def compute_levels(l: CsrMatrix) -> np.ndarray:
    """Level of every unknown of the lower triangular system L x = b.

    l(i) = 1 + max l(j) over the strictly lower entries L[i, j], and 1 for
    rows without any. Only the sparsity pattern matters. Computed in a single
    pass over the rows in ascending order.

    Raises:
        MatrixFormatError: L is not square or has an entry above the diagonal
    """
    if l.n_rows != l.n_cols:
        raise MatrixFormatError('A triangular matrix should be square')
    if not l.is_lower_triangular():
        raise MatrixFormatError(
            'Levels can only be computed for a lower triangular matrix'
        )
    offsets = l.row_offsets.tolist()
    cols = l.col_indices.tolist()
    levels = [0] * l.n_rows
    for i in range(l.n_rows):
        deepest = 0
        for j in cols[offsets[i] : offsets[i + 1]]:
            if j < i and levels[j] > deepest:
                deepest = levels[j]
        levels[i] = deepest + 1
    return np.array(levels, dtype=INDEX_DTYPE)


def build_schedule(levels: np.ndarray) -> LevelSchedule:
    """Build the level-order permutation from a level vector.

    perm[i] is the number of rows in levels before levels[i] plus the rank
    of i among the rows sharing its level.

    Raises:
        LevelScheduleError: the level values do not cover 1 .. nlev exactly
    """
    levels = np.asarray(levels, dtype=INDEX_DTYPE)
    n = levels.shape[0]
    if n == 0:
        return LevelSchedule(
            n=0,
            level_of=levels,
            perm=levels,
            inv_perm=levels,
            level_starts=np.zeros(1),
            nlev=0,
        )
    if levels.min() < 1:
        raise LevelScheduleError('Levels should be numbered from 1')
    nlev = int(levels.max())
    sizes = np.bincount(levels, minlength=nlev + 1)[1:]
    empty = np.flatnonzero(sizes == 0)
    if empty.size:
        raise LevelScheduleError(
            f'Level {empty[0] + 1} is empty although there are {nlev} levels'
        )
    level_starts = np.zeros(nlev + 1, dtype=INDEX_DTYPE)
    np.cumsum(sizes, out=level_starts[1:])
    # A stable sort keeps ascending original indices within each level.
    inv_perm = np.argsort(levels, kind='stable')
    perm = np.empty(n, dtype=INDEX_DTYPE)
    perm[inv_perm] = np.arange(n, dtype=INDEX_DTYPE)
    logging.debug(
        f'Level schedule: {n} rows in {nlev} levels, largest level '
        f'{sizes.max()} rows'
    )
    return LevelSchedule(
        n=n,
        level_of=levels,
        perm=perm,
        inv_perm=inv_perm,
        level_starts=level_starts,
        nlev=nlev,
    )


def reorder_matrix(l: CsrMatrix, s: LevelSchedule) -> CsrMatrix:
    """Apply the schedule permutation to rows and columns:
    L'[perm[i], perm[j]] = L[i, j]. Rows of the result are sorted again.

    Raises:
        LevelScheduleError: the schedule does not fit the matrix, or the
            reordered matrix is not lower triangular (the schedule was not
            built from this matrix's levels)
    """
    if s.n != l.n_rows or l.n_rows != l.n_cols:
        raise LevelScheduleError(
            f'A schedule over {s.n} rows cannot reorder a '
            f'{l.n_rows}x{l.n_cols} matrix'
        )
    rows = s.perm[l.row_indices()]
    cols = s.perm[l.col_indices]
    if np.any(cols > rows):
        raise LevelScheduleError(
            'The reordered matrix is not lower triangular: the schedule was '
            'not built from the levels of this matrix'
        )
    return csr_from_coo(l.n_rows, l.n_cols, rows, cols, l.values)


def permute_vector(v: np.ndarray, perm: np.ndarray) -> np.ndarray:
    """Scatter v through a permutation: out[perm[i]] = v[i]"""
    v = np.asarray(v, dtype=np.float64)
    if v.shape != perm.shape:
        raise MatrixFormatError(
            f'Cannot permute a vector of shape {v.shape} with a permutation '
            f'of length {perm.shape[0]}'
        )
    out = np.empty_like(v)
    out[perm] = v
    return out
