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

"""Preconditioned GMRES(20) on the 40 x 40 x 40 Poisson problem"""

# pylint: disable=redefined-outer-name

import numpy as np
import pytest

from hec_trisolve.bench import gen_poisson7
from hec_trisolve.formats import CsrMatrix, spmv_csr
from hec_trisolve.krylov import SolverConfig, gmres
from hec_trisolve.precond import (
    IluParams,
    PreconditionerKind,
    build_preconditioner,
)
from hec_trisolve.triangular import prepare_lower, solve


@pytest.fixture(scope='module')
def poisson() -> CsrMatrix:
    return gen_poisson7(40, 40, 40)


@pytest.mark.parametrize(
    'kind, overlap, params',
    [
        (PreconditionerKind.BILU0, 0, IluParams()),
        (PreconditionerKind.RAS, 1, IluParams()),
        (PreconditionerKind.BILUT, 0, IluParams(max_fill=7, drop_tol=0.1)),
    ],
)
def test_convergence(poisson: CsrMatrix, kind, overlap, params) -> None:
    b = spmv_csr(poisson, np.ones(poisson.n_rows))
    m = build_preconditioner(poisson, kind, 16, overlap, params)
    x, report = gmres(poisson, b, m, SolverConfig())
    assert report.converged
    assert report.final_relative_residual <= 1e-6
    assert np.max(np.abs(x - 1.0)) <= 1e-4


def test_triangular_solve_is_bitwise_deterministic(
    poisson: CsrMatrix,
) -> None:
    m = build_preconditioner(poisson, PreconditionerKind.BILU0, 16)
    b = np.cos(np.arange(poisson.n_rows, dtype=float))
    reference = m.apply(b, workers=1)
    for workers in (2, 8):
        assert m.apply(b, workers=workers).tolist() == reference.tolist()
    l = prepare_lower(m.block_factors[0].l)
    rhs = b[: l.n]
    assert solve(l, rhs, 8).tolist() == solve(l, rhs, 1).tolist()


def test_gmres_is_bitwise_deterministic(poisson: CsrMatrix) -> None:
    b = spmv_csr(poisson, np.ones(poisson.n_rows))
    m = build_preconditioner(poisson, PreconditionerKind.BILU0, 16)
    cfg = SolverConfig(restart=20, rel_tol=1e-6)
    x1, r1 = gmres(poisson, b, m, cfg, workers=1)
    for workers in (2, 8):
        x, report = gmres(poisson, b, m, cfg, workers=workers)
        assert report.iterations == r1.iterations
        assert report.final_relative_residual == r1.final_relative_residual
        assert x.tolist() == x1.tolist()
