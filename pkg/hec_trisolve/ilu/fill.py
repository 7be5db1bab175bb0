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

import heapq
import logging
from typing import Dict, List

import numpy as np

from ..errors import ZeroPivotError
from ..formats.csr import CsrMatrix, csr_from_coo
from .factors import IluFactors, check_square, factor_on_pattern


def fill_pattern(a: CsrMatrix, k: int) -> CsrMatrix:
    """Symbolic ILU(k): the pattern of A augmented with every fill entry of
    level <= k, as a matrix holding the values of A and explicit zeros at
    the fill positions.

    Entries of A have level 0. Eliminating row p from row i creates (or
    lowers) the level of position (i, j) to lev(i, p) + lev(p, j) + 1.
    """
    check_square(a)
    if k < 0:
        raise ValueError(f'The fill level should be >= 0, got {k}')
    n = a.n_rows
    offsets = a.row_offsets.tolist()
    all_cols = a.col_indices.tolist()
    # Levels of the U part (columns > row) of each processed row
    upper_levels: List[Dict[int, int]] = []
    rows, cols = [], []
    for i in range(n):
        levels = {c: 0 for c in all_cols[offsets[i] : offsets[i + 1]]}
        heap = [c for c in levels if c < i]
        heapq.heapify(heap)
        while heap:
            p = heapq.heappop(heap)
            base = levels[p] + 1
            for j, level in upper_levels[p].items():
                new_level = base + level
                if new_level > k:
                    continue
                current = levels.get(j)
                if current is None:
                    levels[j] = new_level
                    if j < i:
                        heapq.heappush(heap, j)
                elif new_level < current:
                    levels[j] = new_level
        upper_levels.append({c: v for c, v in levels.items() if c > i})
        rows.extend([i] * len(levels))
        cols.extend(levels)
    pattern = csr_from_coo(n, n, rows, cols, np.zeros(len(rows)))
    # Scatter the values of A onto the augmented pattern
    values = np.zeros(pattern.nnz)
    key = pattern.row_indices() * n + pattern.col_indices
    a_key = a.row_indices() * n + a.col_indices
    values[np.searchsorted(key, a_key)] = a.values
    logging.debug(f'ILU({k}) pattern: {a.nnz} entries -> {pattern.nnz}')
    return CsrMatrix(
        n_rows=n,
        n_cols=n,
        row_offsets=pattern.row_offsets,
        col_indices=pattern.col_indices,
        values=values,
    )


def ilu_k(a: CsrMatrix, k: int) -> IluFactors:
    """ILU(k): incomplete LU factorization keeping fill-in up to level k.

    ilu_k(a, 0) is the same computation as ilu0(a).

    Raises:
        MatrixFormatError: the matrix is not square
        ValueError: k < 0
        ZeroPivotError: zero or missing pivot
    """
    pattern = fill_pattern(a, k)
    try:
        return factor_on_pattern(pattern)
    except ZeroPivotError:
        logging.warning(f'ILU({k}) met a zero pivot')
        raise
