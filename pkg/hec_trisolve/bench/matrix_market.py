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
from pathlib import Path
from typing import Union

import scipy.io
import scipy.sparse

from ..errors import MatrixMarketError
from ..formats.csr import CsrMatrix, csr_from_coo

_FIELDS = ('real', 'integer')
_SYMMETRIES = ('general', 'symmetric')


def read_matrix_market(path: Union[str, Path]) -> CsrMatrix:
    """Read a MatrixMarket coordinate file into a canonical CSR matrix.

    Real and integer fields are accepted, with general or symmetric
    storage. A symmetric file is expanded to both triangles. File indices
    are 1-based, the returned matrix is 0-based.

    Raises:
        MatrixMarketError: the file is missing, its header is not supported
            or its entries cannot be parsed
        DuplicateEntryError: the same position is given twice
    """
    path = Path(path)
    try:
        _, _, _, fmt, field, symmetry = scipy.io.mminfo(str(path))
        if fmt != 'coordinate':
            raise MatrixMarketError(
                f'{path}: only coordinate MatrixMarket files are supported, '
                f'got {fmt}'
            )
        if field not in _FIELDS or symmetry not in _SYMMETRIES:
            raise MatrixMarketError(
                f'{path}: unsupported MatrixMarket type {field} {symmetry}'
            )
        coo = scipy.sparse.coo_matrix(scipy.io.mmread(str(path)))
    except MatrixMarketError:
        raise
    except (OSError, ValueError, IndexError) as e:
        raise MatrixMarketError(f'{path}: {e}') from e
    a = csr_from_coo(coo.shape[0], coo.shape[1], coo.row, coo.col, coo.data)
    logging.info(
        f'Read {path.name}: {a.n_rows}x{a.n_cols}, {a.nnz} entries '
        f'({symmetry})'
    )
    return a


def write_matrix_market(a: CsrMatrix, path: Union[str, Path]) -> None:
    """Write a matrix as a general real MatrixMarket coordinate file, with
    enough digits to read back the exact same values."""
    with open(path, 'wb') as f:
        scipy.io.mmwrite(
            f,
            a.to_scipy().tocoo(),
            field='real',
            symmetry='general',
            precision=17,
        )
