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

# pylint: disable=redefined-outer-name

from typing import Callable

import numpy as np
import pytest
import scipy.sparse

from hec_trisolve.formats import CsrMatrix


def pytest_addoption(parser):
    parser.addoption(
        '--atmosmodd',
        action='store',
        dest='atmosmodd',
        default=None,
        help='path of the atmosmodd.mtx file from the SuiteSparse collection',
    )


@pytest.fixture
def atmosmodd(request):
    """The path of the atmosmodd matrix, if provided"""
    return request.config.getoption('atmosmodd')


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


def _random_pattern(
    rng: np.random.Generator, n: int, density: float
) -> scipy.sparse.coo_matrix:
    m = scipy.sparse.random(
        n, n, density=density, format='coo', random_state=rng
    )
    m.data = 2 * m.data - 1
    return m


def _dominant_diagonal(
    rng: np.random.Generator, off: scipy.sparse.spmatrix
) -> scipy.sparse.csr_matrix:
    """Add a diagonal larger than the sum of the row magnitudes, with a
    random sign."""
    n = off.shape[0]
    row_sums = np.asarray(abs(off).sum(axis=1)).ravel()
    signs = rng.choice([-1.0, 1.0], size=n)
    return (off + scipy.sparse.diags(signs * (1.0 + row_sums))).tocsr()


@pytest.fixture
def random_lower(
    rng: np.random.Generator,
) -> Callable[[int, float], CsrMatrix]:
    """Random nonsingular lower triangular matrices with a dominant
    diagonal"""

    def make(n: int, density: float) -> CsrMatrix:
        off = scipy.sparse.tril(_random_pattern(rng, n, density), k=-1)
        return CsrMatrix.from_scipy(_dominant_diagonal(rng, off))

    return make


@pytest.fixture
def random_upper(
    rng: np.random.Generator,
) -> Callable[[int, float], CsrMatrix]:
    """Random nonsingular upper triangular matrices with a dominant
    diagonal"""

    def make(n: int, density: float) -> CsrMatrix:
        off = scipy.sparse.triu(_random_pattern(rng, n, density), k=1)
        return CsrMatrix.from_scipy(_dominant_diagonal(rng, off))

    return make


@pytest.fixture
def diagonally_dominant(
    rng: np.random.Generator,
) -> Callable[[int, float], CsrMatrix]:
    """Random sparse matrices with a dominant diagonal, for which the
    incomplete factorizations never meet a zero pivot"""

    def make(n: int, density: float) -> CsrMatrix:
        m = _random_pattern(rng, n, density)
        keep = m.row != m.col
        off = scipy.sparse.coo_matrix(
            (m.data[keep], (m.row[keep], m.col[keep])), shape=(n, n)
        )
        return CsrMatrix.from_scipy(_dominant_diagonal(rng, off))

    return make


def tridiagonal(n: int, lower: float, diag: float, upper: float) -> CsrMatrix:
    return CsrMatrix.from_scipy(
        scipy.sparse.diags(
            [lower, diag, upper], [-1, 0, 1], shape=(n, n), format='csr'
        )
    )


@pytest.fixture
def laplacian_1d() -> Callable[[int], CsrMatrix]:
    """tridiag(-1, 2, -1)"""
    return lambda n: tridiagonal(n, -1.0, 2.0, -1.0)


@pytest.fixture
def path_graph() -> CsrMatrix:
    """The 4x4 matrix of the path graph 0-1-2-3"""
    return tridiagonal(4, -1.0, 4.0, -1.0)
