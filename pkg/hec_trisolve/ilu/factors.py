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

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import MatrixFormatError, ZeroPivotError
from ..formats.csr import CsrMatrix

Row = Tuple[List[int], List[float]]


@dataclass(frozen=True)
class IluFactors:
    """Incomplete LU factors, A ~ L U.

    L is lower triangular with its unit diagonal stored explicitly, U is
    upper triangular with a nonzero diagonal.
    """

    l: CsrMatrix
    u: CsrMatrix
    n: int

    @property
    def nnz(self) -> int:
        """Stored entries of L and U, counting the diagonal once"""
        return self.l.nnz + self.u.nnz - self.n


def check_square(a: CsrMatrix) -> None:
    if a.n_rows != a.n_cols:
        raise MatrixFormatError(
            f'Cannot factor a non-square {a.n_rows}x{a.n_cols} matrix'
        )


def rows_to_csr(n: int, rows: List[Row]) -> CsrMatrix:
    """Assemble a square CSR matrix from rows already in ascending column
    order."""
    lengths = [len(cols) for cols, _ in rows]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    cols = [c for row_cols, _ in rows for c in row_cols]
    values = [v for _, row_values in rows for v in row_values]
    return CsrMatrix(
        n_rows=n,
        n_cols=n,
        row_offsets=offsets,
        col_indices=np.array(cols, dtype=np.int64),
        values=np.array(values, dtype=np.float64),
    )


def split_factors(n: int, rows: List[Row]) -> IluFactors:
    """Split factored rows (multipliers left of the diagonal, U entries from
    the diagonal on) into L with a unit diagonal and U."""
    l_rows: List[Row] = []
    u_rows: List[Row] = []
    for i, (cols, values) in enumerate(rows):
        d = cols.index(i)
        l_rows.append((cols[:d] + [i], values[:d] + [1.0]))
        u_rows.append((cols[d:], values[d:]))
    return IluFactors(l=rows_to_csr(n, l_rows), u=rows_to_csr(n, u_rows), n=n)


def factor_on_pattern(a: CsrMatrix) -> IluFactors:
    """Incomplete Gaussian elimination (IKJ variant) restricted to the
    stored pattern of `a`. Updates that would land outside the pattern are
    dropped. Explicitly stored zeros are part of the pattern.

    Raises:
        ZeroPivotError: a row has no diagonal entry, or its pivot is zero
            once eliminated
    """
    check_square(a)
    n = a.n_rows
    offsets = a.row_offsets.tolist()
    all_cols = a.col_indices.tolist()
    all_values = a.values.tolist()
    rows: List[Row] = []
    # Position of the diagonal in each factored row
    diag_pos: List[int] = []
    for i in range(n):
        cols = all_cols[offsets[i] : offsets[i + 1]]
        w = all_values[offsets[i] : offsets[i + 1]]
        where = {c: p for p, c in enumerate(cols)}
        if i not in where:
            raise ZeroPivotError(i)
        d = where[i]
        for p in range(d):
            k = cols[p]
            k_cols, k_values = rows[k]
            w[p] = w[p] / k_values[diag_pos[k]]
            for q in range(diag_pos[k] + 1, len(k_cols)):
                target = where.get(k_cols[q])
                if target is not None:
                    w[target] -= w[p] * k_values[q]
        if w[d] == 0:
            raise ZeroPivotError(i)
        rows.append((cols, w))
        diag_pos.append(d)
    return split_factors(n, rows)


def ilu0(a: CsrMatrix) -> IluFactors:
    """ILU(0): incomplete LU factorization without fill-in.

    L and U together have exactly the pattern of A, and (A - L U) vanishes
    on that pattern.

    Raises:
        MatrixFormatError: the matrix is not square
        ZeroPivotError: zero or missing pivot
    """
    return factor_on_pattern(a)
