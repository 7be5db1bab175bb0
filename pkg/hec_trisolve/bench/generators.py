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

import numpy as np

from ..formats.csr import INDEX_DTYPE, CsrMatrix


def gen_poisson7(nx: int, ny: int, nz: int) -> CsrMatrix:
    """The 7-point finite difference Laplacian on an nx x ny x nz grid with
    Dirichlet boundaries: 6 on the diagonal, -1 for each existing axis
    neighbor.

    Grid point (x, y, z) is row x + nx * (y + ny * z). The matrix has
    7n - 2(nx ny + ny nz + nx nz) entries.
    """
    for name, size in (('nx', nx), ('ny', ny), ('nz', nz)):
        if size < 1:
            raise ValueError(f'{name} should be >= 1, got {size}')
    n = nx * ny * nz
    if 7 * n > np.iinfo(INDEX_DTYPE).max:
        raise ValueError(f'A {nx}x{ny}x{nz} grid overflows the index range')
    index = np.arange(n, dtype=INDEX_DTYPE)
    x = index % nx
    y = (index // nx) % ny
    z = index // (nx * ny)
    # Stencil points in ascending column order, with their existence mask
    stencil = [
        (-nx * ny, z > 0),
        (-nx, y > 0),
        (-1, x > 0),
        (0, np.ones(n, dtype=bool)),
        (1, x < nx - 1),
        (nx, y < ny - 1),
        (nx * ny, z < nz - 1),
    ]
    shifts = np.array([shift for shift, _ in stencil], dtype=INDEX_DTYPE)
    exists = np.stack([mask for _, mask in stencil], axis=1)
    cols = (index[:, None] + shifts[None, :])[exists]
    values = np.where(shifts == 0, 6.0, -1.0)[None, :].repeat(n, axis=0)
    offsets = np.zeros(n + 1, dtype=INDEX_DTYPE)
    np.cumsum(exists.sum(axis=1), out=offsets[1:])
    logging.debug(f'Poisson {nx}x{ny}x{nz}: n={n}, nnz={cols.size}')
    return CsrMatrix(
        n_rows=n,
        n_cols=n,
        row_offsets=offsets,
        col_indices=cols,
        values=values[exists],
    )
