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
import math
from collections import deque
from dataclasses import dataclass
from typing import List

import numpy as np
import scipy.sparse

from ..errors import MatrixFormatError
from ..formats.csr import INDEX_DTYPE, CsrMatrix
from ..formats.kernels import gather_positions


@dataclass(frozen=True)
class Partition:
    """A split of the rows [0, n) into n_parts disjoint non-empty parts"""

    n: int
    n_parts: int

    # The part each row belongs to
    part_of: np.ndarray

    # The rows of each part, ascending
    parts: List[np.ndarray]

    @property
    def sizes(self) -> List[int]:
        return [int(p.size) for p in self.parts]


def adjacency(a: CsrMatrix) -> scipy.sparse.csr_matrix:
    """The graph of the symmetrized pattern of A, without self loops.

    Explicitly stored zeros count as edges. Neighbor lists are ascending.
    """
    if a.n_rows != a.n_cols:
        raise MatrixFormatError('The graph of a non-square matrix')
    pattern = scipy.sparse.csr_matrix(
        (np.ones(a.nnz), a.col_indices, a.row_offsets), shape=a.shape
    )
    coo = (pattern + pattern.T).tocoo()
    off_diagonal = coo.row != coo.col
    graph = scipy.sparse.csr_matrix(
        (
            np.ones(int(off_diagonal.sum())),
            (coo.row[off_diagonal], coo.col[off_diagonal]),
        ),
        shape=a.shape,
    )
    graph.sum_duplicates()
    graph.sort_indices()
    return graph


def check_balance(sizes: List[int], n: int, s: int) -> bool:
    """Whether no part holds more than twice the ideal ceil(n / s) rows.
    Logs a warning otherwise."""
    bound = 2 * math.ceil(n / s)
    if max(sizes, default=0) > bound:
        logging.warning(
            f'Unbalanced partition of {n} rows into {s} parts: the largest '
            f'part has {max(sizes)} rows, more than {bound}'
        )
        return False
    return True


def partition_graph(a: CsrMatrix, s: int) -> Partition:
    """Split the graph of A into s parts by breadth-first graph growing.

    Part k is grown from the lowest unassigned vertex until it holds
    ceil(remaining / (s - k)) vertices, visiting neighbors in ascending
    order. When the connected component is exhausted, growth resumes from
    the next lowest unassigned vertex. The result is deterministic and every
    part is non-empty.

    Raises:
        MatrixFormatError: A is not square
        ValueError: s < 1 or s > n
    """
    graph = adjacency(a)
    n = a.n_rows
    if s < 1 or s > n:
        raise ValueError(
            f'Cannot split {n} rows into {s} parts (need 1 <= s <= n)'
        )
    indptr, indices = graph.indptr, graph.indices
    part_of = np.full(n, -1, dtype=INDEX_DTYPE)
    seed = 0
    remaining = n
    for k in range(s):
        target = math.ceil(remaining / (s - k))
        claimed = 0
        queue: deque = deque()
        while claimed < target:
            if not queue:
                while part_of[seed] != -1:
                    seed += 1
                part_of[seed] = k
                queue.append(seed)
                claimed += 1
                continue
            v = queue.popleft()
            for u in indices[indptr[v] : indptr[v + 1]]:
                if claimed == target:
                    break
                if part_of[u] == -1:
                    part_of[u] = k
                    queue.append(u)
                    claimed += 1
        remaining -= claimed
    parts = [np.flatnonzero(part_of == k) for k in range(s)]
    sizes = [p.size for p in parts]
    logging.info(
        f'Partitioned {n} rows into {s} parts of {min(sizes)} to '
        f'{max(sizes)} rows'
    )
    check_balance(sizes, n, s)
    return Partition(n=n, n_parts=s, part_of=part_of, parts=parts)


def extend_overlap(
    a: CsrMatrix, p: Partition, overlap: int
) -> List[np.ndarray]:
    """Grow every part by `overlap` rounds of one-hop neighbors in the
    graph of A. The returned index arrays are ascending."""
    if overlap < 0:
        raise ValueError(f'The overlap should be >= 0, got {overlap}')
    if overlap == 0:
        return [part.copy() for part in p.parts]
    graph = adjacency(a)
    indptr = graph.indptr.astype(INDEX_DTYPE)
    indices = graph.indices.astype(INDEX_DTYPE)
    extended = []
    for part in p.parts:
        member = np.zeros(p.n, dtype=bool)
        member[part] = True
        frontier = part
        for _ in range(overlap):
            neighbors = indices[gather_positions(indptr, frontier)]
            frontier = np.unique(neighbors[~member[neighbors]])
            if frontier.size == 0:
                break
            member[frontier] = True
        extended.append(np.flatnonzero(member))
    logging.debug(
        f'Overlap {overlap}: extended part sizes '
        f'{[int(e.size) for e in extended]}'
    )
    return extended
