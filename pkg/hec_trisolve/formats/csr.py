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
from typing import Iterable, Tuple, Union

import numpy as np
import scipy.sparse

from ..errors import DuplicateEntryError, MatrixFormatError
from .kernels import accumulate_rows, gather_positions

INDEX_DTYPE = np.int64


def frozen_array(array: np.ndarray, dtype) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class CsrMatrix:
    """A sparse matrix in compressed sparse row format.

    Rows are canonical: column indices are strictly ascending within each
    row. The arrays are read-only, the matrix can be shared between threads.
    """

    n_rows: int
    n_cols: int

    # Offset of the first entry of each row, plus the total number of
    # entries. Length n_rows + 1.
    row_offsets: np.ndarray

    # Column index of each entry. Length nnz.
    col_indices: np.ndarray

    # Value of each entry. Length nnz.
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.n_rows < 0 or self.n_cols < 0:
            raise MatrixFormatError(
                f'Invalid shape ({self.n_rows}, {self.n_cols})'
            )
        offsets = frozen_array(self.row_offsets, INDEX_DTYPE)
        cols = frozen_array(self.col_indices, INDEX_DTYPE)
        vals = frozen_array(self.values, np.float64)
        object.__setattr__(self, 'row_offsets', offsets)
        object.__setattr__(self, 'col_indices', cols)
        object.__setattr__(self, 'values', vals)
        if offsets.shape != (self.n_rows + 1,):
            raise MatrixFormatError(
                f'row_offsets should have length {self.n_rows + 1}, got '
                f'{offsets.shape[0]}'
            )
        nnz = cols.shape[0]
        if vals.shape[0] != nnz:
            raise MatrixFormatError(
                f'{nnz} column indices but {vals.shape[0]} values'
            )
        if offsets[0] != 0 or offsets[-1] != nnz:
            raise MatrixFormatError(
                f'row_offsets should start at 0 and end at nnz={nnz}'
            )
        if np.any(np.diff(offsets) < 0):
            raise MatrixFormatError('row_offsets should be non-decreasing')
        if nnz > 0 and (cols.min() < 0 or cols.max() >= self.n_cols):
            raise MatrixFormatError(
                f'Column index out of range [0, {self.n_cols})'
            )
        # Within a row, each column index must be larger than the previous
        # one. Steps crossing a row boundary are not checked.
        steps = np.diff(cols)
        same_row = np.ones(max(nnz - 1, 0), dtype=bool)
        boundaries = offsets[1:-1] - 1
        boundaries = boundaries[(boundaries >= 0) & (boundaries < nnz - 1)]
        same_row[boundaries] = False
        if np.any(steps[same_row] <= 0):
            raise MatrixFormatError(
                'Column indices should be strictly ascending within each row'
            )

    @property
    def nnz(self) -> int:
        return int(self.col_indices.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def row_lengths(self) -> np.ndarray:
        return np.diff(self.row_offsets)

    def row(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        """Column indices and values of row i"""
        start, end = self.row_offsets[i], self.row_offsets[i + 1]
        return self.col_indices[start:end], self.values[start:end]

    def row_indices(self) -> np.ndarray:
        """The row index of every stored entry"""
        return np.repeat(
            np.arange(self.n_rows, dtype=INDEX_DTYPE), self.row_lengths
        )

    def is_lower_triangular(self) -> bool:
        return bool(np.all(self.col_indices <= self.row_indices()))

    def is_upper_triangular(self) -> bool:
        return bool(np.all(self.col_indices >= self.row_indices()))

    def diagonal(self) -> np.ndarray:
        """The diagonal of the matrix, 0 where no diagonal entry is stored"""
        out = np.zeros(min(self.n_rows, self.n_cols))
        rows = self.row_indices()
        on_diag = rows == self.col_indices
        out[rows[on_diag]] = self.values[on_diag]
        return out

    def principal_submatrix(self, index: np.ndarray) -> 'CsrMatrix':
        """Extract the square submatrix A[index, index].

        Args:
            index (np.ndarray): strictly ascending row/column indices

        Returns:
            CsrMatrix: the submatrix in local numbering, explicit zeros of
                the original pattern included.
        """
        index = np.asarray(index, dtype=INDEX_DTYPE)
        if self.n_rows != self.n_cols:
            raise MatrixFormatError(
                'Principal submatrix of a non-square matrix'
            )
        if index.size and (
            index.min() < 0
            or index.max() >= self.n_rows
            or np.any(np.diff(index) <= 0)
        ):
            raise MatrixFormatError(
                'Submatrix indices should be strictly ascending and in range'
            )
        local = np.full(self.n_rows, -1, dtype=INDEX_DTYPE)
        local[index] = np.arange(index.size, dtype=INDEX_DTYPE)
        pos = gather_positions(self.row_offsets, index)
        lengths = self.row_offsets[index + 1] - self.row_offsets[index]
        rows = np.repeat(np.arange(index.size, dtype=INDEX_DTYPE), lengths)
        cols = local[self.col_indices[pos]]
        keep = cols >= 0
        return csr_from_coo(
            index.size,
            index.size,
            rows[keep],
            cols[keep],
            self.values[pos][keep],
        )

    def to_scipy(self) -> scipy.sparse.csr_matrix:
        return scipy.sparse.csr_matrix(
            (self.values, self.col_indices, self.row_offsets),
            shape=self.shape,
            copy=True,
        )

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        out[self.row_indices(), self.col_indices] = self.values
        return out

    @classmethod
    def from_scipy(cls, matrix: scipy.sparse.spmatrix) -> 'CsrMatrix':
        """Build a canonical CSR matrix from any scipy sparse matrix. Explicit
        zeros are kept, duplicate entries are an error."""
        coo = scipy.sparse.coo_matrix(matrix)
        return csr_from_coo(
            coo.shape[0], coo.shape[1], coo.row, coo.col, coo.data
        )

    @classmethod
    def identity(cls, n: int) -> 'CsrMatrix':
        return cls(
            n_rows=n,
            n_cols=n,
            row_offsets=np.arange(n + 1),
            col_indices=np.arange(n),
            values=np.ones(n),
        )


def csr_from_coo(
    n_rows: int,
    n_cols: int,
    rows: Union[np.ndarray, Iterable[int]],
    cols: Union[np.ndarray, Iterable[int]],
    values: Union[np.ndarray, Iterable[float]],
) -> CsrMatrix:
    """Build a canonical CSR matrix from coordinate arrays in any order.

    Raises:
        MatrixFormatError: an index is out of range or the arrays do not have
            the same length
        DuplicateEntryError: a (row, col) pair appears twice
    """
    rows = np.asarray(rows, dtype=INDEX_DTYPE).ravel()
    cols = np.asarray(cols, dtype=INDEX_DTYPE).ravel()
    values = np.asarray(values, dtype=np.float64).ravel()
    if not rows.shape == cols.shape == values.shape:
        raise MatrixFormatError(
            'Coordinate arrays should have the same length, got '
            f'{rows.shape[0]}, {cols.shape[0]} and {values.shape[0]}'
        )
    if rows.size:
        bad_row = (rows < 0) | (rows >= n_rows)
        bad_col = (cols < 0) | (cols >= n_cols)
        bad = np.flatnonzero(bad_row | bad_col)
        if bad.size:
            i = bad[0]
            raise MatrixFormatError(
                f'Entry ({rows[i]}, {cols[i]}) is out of range for a '
                f'{n_rows}x{n_cols} matrix'
            )
    order = np.lexsort((cols, rows))
    rows, cols, values = rows[order], cols[order], values[order]
    duplicates = np.flatnonzero(
        (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
    )
    if duplicates.size:
        i = duplicates[0]
        raise DuplicateEntryError(
            f'Entry ({rows[i]}, {cols[i]}) is given more than once'
        )
    offsets = np.zeros(n_rows + 1, dtype=INDEX_DTYPE)
    np.cumsum(np.bincount(rows, minlength=n_rows), out=offsets[1:])
    return CsrMatrix(
        n_rows=n_rows,
        n_cols=n_cols,
        row_offsets=offsets,
        col_indices=cols,
        values=values,
    )


def csr_from_triples(
    n_rows: int, n_cols: int, triples: Iterable[Tuple[int, int, float]]
) -> CsrMatrix:
    """Build a canonical CSR matrix from (row, col, value) triples.

    Duplicate positions are rejected rather than summed.
    """
    triples = list(triples)
    if len(triples) == 0:
        return csr_from_coo(n_rows, n_cols, [], [], [])
    rows, cols, values = zip(*triples)
    return csr_from_coo(n_rows, n_cols, rows, cols, values)


def check_vector(x: np.ndarray, length: int, name: str = 'x') -> np.ndarray:
    """Return x as a 1-D float array, checking its length"""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != length:
        raise MatrixFormatError(
            f'Vector {name} should have length {length}, got shape {x.shape}'
        )
    return x


def spmv_csr(a: CsrMatrix, x: np.ndarray) -> np.ndarray:
    """Compute y = A x, summing each row in ascending column order"""
    x = check_vector(x, a.n_cols)
    y = np.zeros(a.n_rows)
    accumulate_rows(
        y, a.row_offsets, a.col_indices, a.values, x, 0, a.n_rows
    )
    return y
