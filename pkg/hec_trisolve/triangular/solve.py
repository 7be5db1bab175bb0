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

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from ..errors import (
    LevelScheduleError,
    MatrixFormatError,
    SingularTriangularError,
)
from ..formats.csr import CsrMatrix, check_vector
from ..formats.hec import HecMatrix
from ..formats.kernels import accumulate_rows, gather_positions
from ..schedule.levels import permute_vector
from .prepared import PreparedTriangular


@lru_cache(maxsize=1)
def _executor(workers: int) -> ThreadPoolExecutor:
    """The pool of the last number of workers used. A replaced pool stops its
    threads once it is garbage collected."""
    return ThreadPoolExecutor(
        max_workers=workers, thread_name_prefix=f'hec-level-{workers}'
    )


def split_range(start: int, end: int, workers: int) -> List[Tuple[int, int]]:
    """Split [start, end) into at most `workers` contiguous non-empty
    chunks of nearly equal size."""
    size = end - start
    n_chunks = min(workers, size)
    if n_chunks <= 0:
        return []
    edges = start + (size * np.arange(n_chunks + 1)) // n_chunks
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


def _check_written(
    written: np.ndarray, cols: np.ndarray, context: str
) -> None:
    unread = cols[~written[cols]]
    if unread.size:
        raise LevelScheduleError(
            f'Row {unread[0]} of the prepared matrix is read by {context} '
            'before being solved'
        )


def _solve_rows(
    h: HecMatrix,
    b: np.ndarray,
    x: np.ndarray,
    start: int,
    end: int,
    written: Optional[np.ndarray],
) -> None:
    """Solve rows [start, end) of the prepared lower triangular system. All
    the unknowns these rows depend on must already be in x."""
    n = h.n_rows
    acc = np.zeros(end - start)
    ell = h.ell
    for k in range(ell.width):
        cols = ell.col_indices[k * n + start : k * n + end]
        values = ell.values[k * n + start : k * n + end]
        used = k < ell.row_lengths[start:end]
        if written is not None:
            _check_written(written, cols[used], f'ELL slot {k}')
        acc[used] += values[used] * x[cols[used]]
    csr = h.csr
    if written is not None:
        pos = gather_positions(csr.row_offsets, np.arange(start, end))
        off_diagonal = np.isin(
            pos, csr.row_offsets[start + 1 : end + 1] - 1, invert=True
        )
        _check_written(written, csr.col_indices[pos[off_diagonal]], 'CSR')
    accumulate_rows(
        acc,
        csr.row_offsets,
        csr.col_indices,
        csr.values,
        x,
        start,
        end,
        skip_last=True,
    )
    diagonal = csr.values[csr.row_offsets[start + 1 : end + 1] - 1]
    x[start:end] = (b[start:end] - acc) / diagonal


def solve(
    p: PreparedTriangular,
    b: np.ndarray,
    workers: int = 1,
    check_levels: bool = False,
) -> np.ndarray:
    """Solve L x = b (or U x = b) with the prepared matrix, level by level.

    The right-hand side is permuted into level order, then the levels are
    solved one after the other. The rows of a level do not depend on each
    other: they are split into contiguous chunks solved concurrently by
    `workers` threads, and all chunks of a level complete before the next
    level starts. The solution is finally permuted back.

    Each row sums its terms in storage order whatever the chunking, so the
    result does not depend on the number of workers.

    Args:
        p (PreparedTriangular): the output of prepare_lower or prepare_upper
        b (np.ndarray): the right-hand side, in the original row order
        workers (int): number of threads solving the rows of a level
        check_levels (bool): track which unknowns are solved and raise if a
            row reads one that is not, before computing it

    Returns:
        np.ndarray: the solution x in the original row order
    """
    b = check_vector(b, p.n, 'b')
    if workers < 1:
        raise ValueError(
            f'The number of workers should be >= 1, got {workers}'
        )
    row_map = p.row_map
    b_level = permute_vector(b, row_map)
    x_level = np.zeros(p.n)
    written = np.zeros(p.n, dtype=bool) if check_levels else None
    pool = _executor(workers)
    starts = p.schedule.level_starts
    for k in range(p.schedule.nlev):
        start, end = int(starts[k]), int(starts[k + 1])
        futures = [
            pool.submit(
                _solve_rows,
                p.hec,
                b_level,
                x_level,
                chunk_start,
                chunk_end,
                written,
            )
            for chunk_start, chunk_end in split_range(start, end, workers)
        ]
        # Barrier between levels
        for future in futures:
            future.result()
        if written is not None:
            written[start:end] = True
    return x_level[row_map]


def _check_square(a: CsrMatrix, b: np.ndarray) -> np.ndarray:
    if a.n_rows != a.n_cols:
        raise MatrixFormatError('A triangular matrix should be square')
    return check_vector(b, a.n_rows, 'b')


def serial_forward_solve(l: CsrMatrix, b: np.ndarray) -> np.ndarray:
    """Textbook forward substitution, row after row. Reference
    implementation for the level-parallel solve."""
    b = _check_square(l, b)
    offsets = l.row_offsets.tolist()
    cols = l.col_indices.tolist()
    values = l.values.tolist()
    x = [0.0] * l.n_rows
    for i in range(l.n_rows):
        start, end = offsets[i], offsets[i + 1]
        if end > start and cols[end - 1] > i:
            raise MatrixFormatError(
                f'Row {i} has an entry above the diagonal'
            )
        if end == start or cols[end - 1] != i or values[end - 1] == 0:
            raise SingularTriangularError(i)
        s = 0.0
        for j in range(start, end - 1):
            s += values[j] * x[cols[j]]
        x[i] = (b[i] - s) / values[end - 1]
    return np.array(x)


def serial_backward_solve(u: CsrMatrix, b: np.ndarray) -> np.ndarray:
    """Textbook backward substitution, from the last row to the first.
    Reference implementation for the level-parallel solve."""
    b = _check_square(u, b)
    offsets = u.row_offsets.tolist()
    cols = u.col_indices.tolist()
    values = u.values.tolist()
    x = [0.0] * u.n_rows
    for i in reversed(range(u.n_rows)):
        start, end = offsets[i], offsets[i + 1]
        if end > start and cols[start] < i:
            raise MatrixFormatError(
                f'Row {i} has an entry below the diagonal'
            )
        if end == start or cols[start] != i or values[start] == 0:
            raise SingularTriangularError(i)
        s = 0.0
        for j in range(start + 1, end):
            s += values[j] * x[cols[j]]
        x[i] = (b[i] - s) / values[start]
    return np.array(x)
