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

"""Row kernels shared by the sparse products and the triangular solves.

Every kernel accumulates the terms of a row one at a time, in storage order,
starting from the value already present in the accumulator. Two storage
formats holding the same row in the same order therefore produce bitwise
identical results, whatever the number of rows processed at once.
"""

import numpy as np


def gather_positions(row_offsets: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Positions in the column/value arrays of all entries of the given rows,
    row after row."""
    starts = row_offsets[rows]
    lengths = row_offsets[rows + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    shift = np.repeat(starts - (np.cumsum(lengths) - lengths), lengths)
    return np.arange(total, dtype=np.int64) + shift


def accumulate_rows(
    acc: np.ndarray,
    row_offsets: np.ndarray,
    col_indices: np.ndarray,
    values: np.ndarray,
    x: np.ndarray,
    start: int,
    end: int,
    skip_last: bool = False,
) -> None:
    """Add to acc[r - start] the terms values[j] * x[col_indices[j]] of every
    row r in [start, end), in ascending storage order.

    Args:
        acc (np.ndarray): accumulator of length end - start, updated in place
        row_offsets, col_indices, values: the CSR arrays
        x (np.ndarray): the vector the row entries multiply
        start (int): first row of the range
        end (int): row after the last row of the range
        skip_last (bool): leave out the last entry of each row (the diagonal
            of a lower triangular CSR block)
    """
    begins = row_offsets[start:end]
    lengths = row_offsets[start + 1 : end + 1] - begins
    if skip_last:
        lengths = np.maximum(lengths - 1, 0)
    if lengths.size == 0:
        return
    max_len = int(lengths.max())
    if max_len == 0:
        return
    # Rows sorted by decreasing length: the rows still holding a k-th term
    # are a prefix of this order.
    order = np.argsort(-lengths, kind='stable')
    sorted_begins = begins[order]
    active = np.searchsorted(
        -lengths[order], -np.arange(max_len), side='left'
    )
    for k in range(max_len):
        m = active[k]
        rows = order[:m]
        pos = sorted_begins[:m] + k
        acc[rows] += values[pos] * x[col_indices[pos]]
