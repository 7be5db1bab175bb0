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
import time
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from ..errors import MatrixFormatError
from ..formats.csr import CsrMatrix, check_vector, spmv_csr
from ..precond.description import IdentityPreconditioner, Preconditioner
from .config import SolveReport, SolverConfig


class _TimedPreconditioner:
    """Counts and times the applications of a preconditioner"""

    def __init__(self, m: Preconditioner, workers: int):
        self._m = m
        self._workers = workers
        self.applications = 0
        self.seconds = 0.0

    def __call__(self, r: np.ndarray) -> np.ndarray:
        start = time.perf_counter()
        z = self._m.apply(r, self._workers)
        self.seconds += time.perf_counter() - start
        self.applications += 1
        return z


def gmres(
    a: CsrMatrix,
    b: np.ndarray,
    m: Optional[Preconditioner] = None,
    cfg: SolverConfig = SolverConfig(),
    workers: int = 1,
    setup_seconds: float = 0.0,
) -> Tuple[np.ndarray, SolveReport]:
    """Solve A x = b with restarted GMRES and right preconditioning.

    The iteration solves A M^-1 u = b and returns x = M^-1 u, so the
    residual it minimizes is the true residual of A x = b. The Arnoldi basis
    is orthogonalized with modified Gram-Schmidt and the least-squares
    problem is reduced with Givens rotations. The initial guess is zero.

    Args:
        a (CsrMatrix): the square system matrix
        b (np.ndarray): the right-hand side
        m (Preconditioner): the preconditioner, None for no preconditioning
        cfg (SolverConfig): restart length, iteration limit and tolerances
        workers (int): threads used by the preconditioner
        setup_seconds (float): time spent building m, copied to the report

    Returns:
        Tuple[np.ndarray, SolveReport]: the last iterate and the report.
            When the iteration limit is reached, the report says
            converged=False.
    """
    if a.n_rows != a.n_cols:
        raise MatrixFormatError('GMRES needs a square matrix')
    n = a.n_rows
    b = check_vector(b, n, 'b')
    if m is None:
        m = IdentityPreconditioner(n)
    elif m.n != n:
        raise MatrixFormatError(
            f'Preconditioner of dimension {m.n} for a system of dimension {n}'
        )
    precondition = _TimedPreconditioner(m, workers)
    start_time = time.perf_counter()

    b_norm = float(np.linalg.norm(b))
    target = max(cfg.rel_tol * b_norm, cfg.abs_tol)
    x = np.zeros(n)
    history = []
    iterations = 0
    beta = b_norm
    r = b.copy()
    restart = cfg.restart
    eps = np.finfo(np.float64).eps

    while beta > target and iterations < cfg.max_iters:
        basis = np.zeros((restart + 1, n))
        hessenberg = np.zeros((restart + 1, restart))
        cos = np.zeros(restart)
        sin = np.zeros(restart)
        g = np.zeros(restart + 1)
        g[0] = beta
        basis[0] = r / beta
        size = 0
        breakdown = False
        for j in range(restart):
            if iterations >= cfg.max_iters:
                break
            w = spmv_csr(a, precondition(basis[j]))
            w_norm = np.linalg.norm(w)
            for i in range(j + 1):
                hessenberg[i, j] = np.dot(w, basis[i])
                w -= hessenberg[i, j] * basis[i]
            h = np.linalg.norm(w)
            hessenberg[j + 1, j] = h
            breakdown = h <= eps * w_norm
            if not breakdown:
                basis[j + 1] = w / h
            for i in range(j):
                top = hessenberg[i, j]
                bottom = hessenberg[i + 1, j]
                hessenberg[i, j] = cos[i] * top + sin[i] * bottom
                hessenberg[i + 1, j] = -sin[i] * top + cos[i] * bottom
            denominator = np.hypot(hessenberg[j, j], hessenberg[j + 1, j])
            if denominator == 0:
                logging.warning(
                    f'GMRES: singular Hessenberg matrix at iteration '
                    f'{iterations}'
                )
                break
            cos[j] = hessenberg[j, j] / denominator
            sin[j] = hessenberg[j + 1, j] / denominator
            hessenberg[j, j] = denominator
            hessenberg[j + 1, j] = 0.0
            g[j + 1] = -sin[j] * g[j]
            g[j] = cos[j] * g[j]
            size = j + 1
            iterations += 1
            history.append(abs(g[j + 1]))
            if abs(g[j + 1]) <= target or breakdown:
                break
        if size == 0:
            break
        y = scipy.linalg.solve_triangular(
            hessenberg[:size, :size], g[:size], lower=False
        )
        x += precondition(basis[:size].T @ y)
        r = b - spmv_csr(a, x)
        beta = float(np.linalg.norm(r))
        logging.debug(
            f'GMRES restart after {iterations} iterations: residual '
            f'{beta:.3e} (estimate {history[-1]:.3e})'
        )
        if breakdown and beta > target:
            logging.warning(
                'GMRES breakdown without convergence of the true residual, '
                'restarting'
            )

    converged = beta <= target
    relative = beta / b_norm if b_norm > 0 else 0.0
    if converged:
        logging.info(
            f'GMRES({restart}) converged in {iterations} iterations, '
            f'relative residual {relative:.3e}'
        )
    else:
        logging.warning(
            f'GMRES({restart}) did not converge in {iterations} iterations, '
            f'relative residual {relative:.3e}'
        )
    report = SolveReport(
        converged=converged,
        iterations=iterations,
        final_relative_residual=relative,
        setup_seconds=setup_seconds,
        solve_seconds=time.perf_counter() - start_time,
        residual_history=history,
        preconditioner_applications=precondition.applications,
        precond_seconds=precondition.seconds,
    )
    return x, report
