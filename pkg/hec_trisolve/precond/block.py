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
from typing import List, Optional

import numpy as np

from ..errors import MatrixFormatError, ZeroPivotError
from ..formats.csr import INDEX_DTYPE, CsrMatrix, check_vector
from ..formats.hec import WidthPolicy
from ..ilu import IluFactors, ilu0, ilu_k, ilut
from ..triangular import (
    PreparedTriangular,
    prepare_lower,
    prepare_upper,
    solve,
)
from .description import Preconditioner
from .params import IluMethod, IluParams, PreconditionerKind, block_method
from .partition import Partition, extend_overlap, partition_graph


def factor_block(
    a: CsrMatrix, method: IluMethod, params: IluParams
) -> IluFactors:
    if method is IluMethod.ILUK:
        return ilu_k(a, params.fill_level)
    if method is IluMethod.ILUT:
        return ilut(a, params.max_fill, params.drop_tol)
    return ilu0(a)


def block_diagonal(blocks: List[CsrMatrix]) -> CsrMatrix:
    """diag(B_1, ..., B_s) for square blocks"""
    sizes = [b.n_rows for b in blocks]
    shifts = np.concatenate([[0], np.cumsum(sizes)]).astype(INDEX_DTYPE)
    nnz_shifts = np.concatenate([[0], np.cumsum([b.nnz for b in blocks])])
    offsets = np.concatenate(
        [[0]]
        + [b.row_offsets[1:] + nnz_shifts[i] for i, b in enumerate(blocks)]
    )
    n = int(shifts[-1])
    return CsrMatrix(
        n_rows=n,
        n_cols=n,
        row_offsets=offsets,
        col_indices=np.concatenate(
            [np.zeros(0, dtype=INDEX_DTYPE)]
            + [b.col_indices + shifts[i] for i, b in enumerate(blocks)]
        ),
        values=np.concatenate([np.zeros(0)] + [b.values for b in blocks]),
    )


@dataclass(frozen=True)
class BlockPreconditioner(Preconditioner):
    """Block ILU or restricted additive Schwarz preconditioner.

    Every (extended) part i gives a principal submatrix A_i, factored as
    L_i U_i. The factors are assembled into diag(L_1, ..., L_s) and
    diag(U_1, ..., U_s) over the concatenated local ordering, and each
    assembled factor is prepared once for the level-parallel solve.
    """

    kind: PreconditionerKind
    method: IluMethod
    partition: Partition
    overlap: int

    # Rows of each block, ascending. Equal to partition.parts when overlap
    # is 0.
    extended_parts: List[np.ndarray]

    block_factors: List[IluFactors]
    prepared_l: PreparedTriangular
    prepared_u: PreparedTriangular

    # Global row of each local row, blocks concatenated
    gather_index: np.ndarray

    # Local rows owned by their block: exactly one copy of every global row
    owned: np.ndarray

    @property
    def n(self) -> int:
        return self.partition.n

    @property
    def n_blocks(self) -> int:
        return self.partition.n_parts

    @property
    def restriction(self) -> List[np.ndarray]:
        """Per block, the flags of its owned rows"""
        bounds = np.cumsum([e.size for e in self.extended_parts])[:-1]
        return np.split(self.owned, bounds)

    def apply(self, r: np.ndarray, workers: int = 1) -> np.ndarray:
        """Solve diag(L_i) diag(U_i) z = r restricted to each block, and
        return for every row the value computed by its owning block.
        Overlap copies are discarded, never summed."""
        r = check_vector(r, self.n, 'r')
        y = solve(self.prepared_l, r[self.gather_index], workers)
        z = solve(self.prepared_u, y, workers)
        out = np.empty(self.n)
        out[self.gather_index[self.owned]] = z[self.owned]
        return out


def build_preconditioner(
    a: CsrMatrix,
    kind: PreconditionerKind,
    s: int,
    overlap: int = 0,
    ilu_params: Optional[IluParams] = None,
    width_policy: WidthPolicy = WidthPolicy.auto(),
) -> BlockPreconditioner:
    """Partition A into s blocks, factor each block and prepare the
    assembled factors.

    Args:
        a (CsrMatrix): the square system matrix
        kind (PreconditionerKind): bilu0, biluk, bilut or ras
        s (int): number of blocks
        overlap (int): RAS overlap rounds. Must be 0 for the block ILU kinds.
        ilu_params (IluParams): parameters of the block factorizations
        width_policy (WidthPolicy): ELL width of the prepared factors

    Raises:
        ValueError: invalid s or overlap
        ZeroPivotError: a block factorization met a zero pivot, the error
            carries the block id and the local row
    """
    if a.n_rows != a.n_cols:
        raise MatrixFormatError('Cannot precondition a non-square matrix')
    if overlap < 0:
        raise ValueError(f'The overlap should be >= 0, got {overlap}')
    if overlap > 0 and not kind.allows_overlap:
        raise ValueError(
            f'{kind.value} is a non-overlapping block preconditioner, '
            f'got overlap={overlap}'
        )
    params = ilu_params or IluParams()
    method = block_method(kind, params)
    partition = partition_graph(a, s)
    extended = extend_overlap(a, partition, overlap)

    factors = []
    for block, index in enumerate(extended):
        try:
            factors.append(
                factor_block(a.principal_submatrix(index), method, params)
            )
        except ZeroPivotError as e:
            raise ZeroPivotError(e.row, block=block) from e

    prepared_l = prepare_lower(
        block_diagonal([f.l for f in factors]), width_policy
    )
    prepared_u = prepare_upper(
        block_diagonal([f.u for f in factors]), width_policy
    )
    gather_index = np.concatenate(extended)
    owned = np.concatenate(
        [partition.part_of[index] == b for b, index in enumerate(extended)]
    )
    logging.info(
        f'Built {kind.value} preconditioner with {params.describe(method)} '
        f'on {s} blocks (overlap {overlap}): {gather_index.size} local rows, '
        f'{prepared_l.nlev} lower and {prepared_u.nlev} upper levels'
    )
    return BlockPreconditioner(
        kind=kind,
        method=method,
        partition=partition,
        overlap=overlap,
        extended_parts=extended,
        block_factors=factors,
        prepared_l=prepared_l,
        prepared_u=prepared_u,
        gather_index=gather_index,
        owned=owned,
    )
