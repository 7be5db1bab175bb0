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
from typing import Optional, Tuple

import numpy as np

from ..errors import MatrixFormatError, SingularTriangularError
from .csr import (
    INDEX_DTYPE,
    CsrMatrix,
    check_vector,
    csr_from_coo,
    frozen_array,
)
from .kernels import accumulate_rows


@dataclass(frozen=True)
class WidthPolicy:
    """How wide the ELL block of a HEC matrix is.

    Use ``WidthPolicy.fixed(w)`` for an explicit width or
    ``WidthPolicy.auto()`` to take the median number of entries available to
    the ELL block over all rows."""

    # None means automatic selection
    width: Optional[int] = None

    @classmethod
    def fixed(cls, width: int) -> 'WidthPolicy':
        if width < 0:
            raise ValueError(f'The ELL width should be >= 0, got {width}')
        return cls(width=width)

    @classmethod
    def auto(cls) -> 'WidthPolicy':
        return cls(width=None)

    def resolve(self, available: np.ndarray) -> int:
        """The ELL width for rows holding `available` entries each that may
        go to the ELL block."""
        if self.width is not None:
            return self.width
        if available.size == 0:
            return 0
        median = int(np.floor(np.median(available)))
        return int(np.clip(median, 0, available.max()))

    def __str__(self) -> str:
        return 'auto' if self.width is None else f'fixed({self.width})'


@dataclass(frozen=True)
class EllMatrix:
    """A fixed-width sparse block stored column-major: slot k of row i is at
    position k * n_rows + i.

    Padding slots hold the value 0 and the row's own index as column. They
    are skipped by products and triangular solves, so a non-finite entry of
    the input vector never reaches a row through them."""

    n_rows: int
    width: int

    # Column indices, column-major, length n_rows * width
    col_indices: np.ndarray

    # Values, same layout
    values: np.ndarray

    # Number of non-padding slots of each row. They are the slots
    # 0 .. row_lengths[i] - 1.
    row_lengths: np.ndarray

    def __post_init__(self) -> None:
        for name, dtype in [
            ('col_indices', INDEX_DTYPE),
            ('values', np.float64),
            ('row_lengths', INDEX_DTYPE),
        ]:
            object.__setattr__(
                self, name, frozen_array(getattr(self, name), dtype)
            )
        size = self.n_rows * self.width
        if self.col_indices.shape != (size,) or self.values.shape != (size,):
            raise MatrixFormatError(
                f'ELL arrays should have length {size} '
                f'({self.n_rows} rows x width {self.width})'
            )
        if self.row_lengths.shape != (self.n_rows,) or np.any(
            self.row_lengths > self.width
        ):
            raise MatrixFormatError('Invalid ELL row lengths')

    def slot(self, k: int) -> Tuple[np.ndarray, np.ndarray]:
        """Column indices and values of slot k for all rows"""
        start, end = k * self.n_rows, (k + 1) * self.n_rows
        return self.col_indices[start:end], self.values[start:end]

    @property
    def nnz(self) -> int:
        return int(self.row_lengths.sum())


@dataclass(frozen=True)
class HecMatrix:
    """A hybrid ELL + CSR sparse matrix.

    Logical row i is the ELL part of row i followed by the CSR part of row i,
    the concatenation having strictly ascending column indices. When built
    from a lower triangular matrix, every CSR row ends with the diagonal.
    """

    ell: EllMatrix
    csr: CsrMatrix
    n_rows: int
    n_cols: int

    def __post_init__(self) -> None:
        if self.ell.n_rows != self.n_rows or self.csr.n_rows != self.n_rows:
            raise MatrixFormatError(
                'The ELL and CSR blocks should have the same number of rows'
            )
        if self.csr.n_cols != self.n_cols:
            raise MatrixFormatError(
                'The CSR block should have the same number of columns as the'
                ' HEC matrix'
            )

    @property
    def nnz(self) -> int:
        return self.ell.nnz + self.csr.nnz

    def to_triples(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """The stored entries as (rows, cols, values) arrays, padding left
        out."""
        n, width = self.n_rows, self.ell.width
        slots = np.arange(width, dtype=INDEX_DTYPE)
        used = slots[:, np.newaxis] < self.ell.row_lengths[np.newaxis, :]
        ell_rows = np.broadcast_to(np.arange(n), (width, n))[used]
        ell_pos = (slots[:, np.newaxis] * n + np.arange(n))[used]
        rows = np.concatenate([ell_rows, self.csr.row_indices()])
        cols = np.concatenate(
            [self.ell.col_indices[ell_pos], self.csr.col_indices]
        )
        values = np.concatenate([self.ell.values[ell_pos], self.csr.values])
        return rows, cols, values


def hec_from_csr(
    a: CsrMatrix,
    triangular: bool = False,
    width_policy: WidthPolicy = WidthPolicy.auto(),
) -> HecMatrix:
    """Split a CSR matrix into a HEC matrix.

    The ELL block holds the first min(w, nnz_i - r_i) entries of each row,
    the CSR block the rest. In triangular mode, r_i = 1: the diagonal is
    reserved for the CSR block so that every CSR row ends with it.

    Args:
        a (CsrMatrix): the matrix to convert. In triangular mode, it must be
            lower triangular with a stored diagonal on every row.
        triangular (bool): reserve the diagonal for the CSR block
        width_policy (WidthPolicy): how to choose the ELL width w

    Raises:
        MatrixFormatError: triangular mode on a non lower triangular matrix
        SingularTriangularError: triangular mode and a row has no diagonal
    """
    n = a.n_rows
    lengths = a.row_lengths
    if triangular:
        if a.n_rows != a.n_cols:
            raise MatrixFormatError('A triangular matrix should be square')
        if not a.is_lower_triangular():
            raise MatrixFormatError(
                'Triangular HEC conversion expects a lower triangular matrix'
            )
        last_cols = np.full(n, -1, dtype=INDEX_DTYPE)
        non_empty = lengths > 0
        last_cols[non_empty] = a.col_indices[a.row_offsets[1:][non_empty] - 1]
        missing = np.flatnonzero(last_cols != np.arange(n))
        if missing.size:
            raise SingularTriangularError(
                int(missing[0]),
                f'Row {missing[0]} has no diagonal entry',
            )
    available = lengths - (1 if triangular else 0)
    width = width_policy.resolve(available)
    ell_lengths = np.minimum(available, width)

    # Padding points at the row itself (the last column for the rows of a
    # tall matrix that have no such column).
    padding_cols = np.minimum(
        np.arange(n, dtype=INDEX_DTYPE), max(a.n_cols - 1, 0)
    )
    ell_cols = np.tile(padding_cols, width)
    ell_values = np.zeros(n * width)
    rows = np.repeat(np.arange(n, dtype=INDEX_DTYPE), ell_lengths)
    slots = np.arange(rows.size, dtype=INDEX_DTYPE) - np.repeat(
        np.cumsum(ell_lengths) - ell_lengths, ell_lengths
    )
    src = a.row_offsets[rows] + slots
    dest = slots * n + rows
    ell_cols[dest] = a.col_indices[src]
    ell_values[dest] = a.values[src]

    # Position of every entry within its row; entries past the ELL share
    # stay in the CSR block.
    position = np.arange(a.nnz, dtype=INDEX_DTYPE) - np.repeat(
        a.row_offsets[:-1], lengths
    )
    keep = position >= np.repeat(ell_lengths, lengths)
    offsets = np.zeros(n + 1, dtype=INDEX_DTYPE)
    np.cumsum(lengths - ell_lengths, out=offsets[1:])
    csr = CsrMatrix(
        n_rows=n,
        n_cols=a.n_cols,
        row_offsets=offsets,
        col_indices=a.col_indices[keep],
        values=a.values[keep],
    )
    ell = EllMatrix(
        n_rows=n,
        width=width,
        col_indices=ell_cols,
        values=ell_values,
        row_lengths=ell_lengths,
    )
    if n > 0 and width > 0:
        logging.debug(
            f'HEC conversion: ELL width {width} ({width_policy}), '
            f'{ell.nnz} ELL entries, {csr.nnz} CSR entries, '
            f'padding ratio {1.0 - ell.nnz / (n * width):.2f}'
        )
    return HecMatrix(ell=ell, csr=csr, n_rows=n, n_cols=a.n_cols)


def hec_to_csr(h: HecMatrix) -> CsrMatrix:
    """Flatten a HEC matrix back to canonical CSR"""
    rows, cols, values = h.to_triples()
    return csr_from_coo(h.n_rows, h.n_cols, rows, cols, values)


def spmv_hec(h: HecMatrix, x: np.ndarray) -> np.ndarray:
    """Compute y = A x for a HEC matrix.

    Each row is summed ELL slots first then CSR entries, which is ascending
    column order: the result is bitwise equal to spmv_csr on the source CSR
    matrix."""
    x = check_vector(x, h.n_cols)
    y = np.zeros(h.n_rows)
    for k in range(h.ell.width):
        cols, values = h.ell.slot(k)
        used = k < h.ell.row_lengths
        y[used] += values[used] * x[cols[used]]
    accumulate_rows(
        y,
        h.csr.row_offsets,
        h.csr.col_indices,
        h.csr.values,
        x,
        0,
        h.n_rows,
    )
    return y
