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
import math
from typing import Dict, List

from ..errors import ZeroPivotError
from ..formats.csr import CsrMatrix
from .factors import IluFactors, Row, check_square, split_factors


def _largest(entries: Dict[int, float], p: int) -> Row:
    """The p entries of largest magnitude, ties to the lowest column, in
    ascending column order."""
    kept = sorted(entries.items(), key=lambda e: (-abs(e[1]), e[0]))[:p]
    kept.sort()
    return [c for c, _ in kept], [v for _, v in kept]


def ilut(a: CsrMatrix, p: int, tol: float) -> IluFactors:
    """ILUT(p, tol): incomplete LU factorization with dual dropping.

    Each row i is eliminated with a threshold thr = tol * ||A[i, :]||_2:
    a multiplier smaller than thr is dropped before it updates the row, and
    after elimination any entry smaller than thr is dropped. Then only the p
    largest entries left of the diagonal (L part) and the p largest right of
    it (U part) are kept. The diagonal is always kept.

    Args:
        a (CsrMatrix): square matrix
        p (int): maximum number of off-diagonal entries per row, in each of
            the L and U parts
        tol (float): relative drop tolerance

    Raises:
        MatrixFormatError: the matrix is not square
        ValueError: p < 1 or tol < 0
        ZeroPivotError: the diagonal is zero once the row is eliminated
    """
    check_square(a)
    if p < 1:
        raise ValueError(f'ILUT keeps p >= 1 entries per row, got p={p}')
    if tol < 0:
        raise ValueError(f'The drop tolerance should be >= 0, got {tol}')
    n = a.n_rows
    offsets = a.row_offsets.tolist()
    all_cols = a.col_indices.tolist()
    all_values = a.values.tolist()
    rows: List[Row] = []
    # Off-diagonal U part and pivot of each processed row
    upper: List[Row] = []
    pivots: List[float] = []
    for i in range(n):
        start, end = offsets[i], offsets[i + 1]
        w = dict(zip(all_cols[start:end], all_values[start:end]))
        thr = tol * math.sqrt(sum(v * v for v in all_values[start:end]))
        heap = [c for c in w if c < i]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            multiplier = w[k] / pivots[k]
            if abs(multiplier) < thr:
                del w[k]
                continue
            w[k] = multiplier
            for j, u_kj in zip(*upper[k]):
                if j in w:
                    w[j] -= multiplier * u_kj
                else:
                    w[j] = -multiplier * u_kj
                    if j < i:
                        heapq.heappush(heap, j)
        pivot = w.pop(i, 0.0)
        if pivot == 0:
            raise ZeroPivotError(i)
        l_cols, l_values = _largest(
            {c: v for c, v in w.items() if c < i and abs(v) >= thr}, p
        )
        u_cols, u_values = _largest(
            {c: v for c, v in w.items() if c > i and abs(v) >= thr}, p
        )
        upper.append((u_cols, u_values))
        pivots.append(pivot)
        rows.append((l_cols + [i] + u_cols, l_values + [pivot] + u_values))
    return split_factors(n, rows)
