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

import csv
import logging
import statistics
import time
from functools import partial
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from ..errors import DeterminismError
from ..formats.csr import CsrMatrix, spmv_csr
from ..formats.hec import WidthPolicy
from ..krylov import SolveReport, SolverConfig, gmres
from ..precond import Preconditioner
from .display import end_step, show_progress, start_step
from .specs import (
    CSV_COLUMNS,
    BenchRow,
    ExperimentSpec,
    MatrixSource,
    PreconditionerSpec,
)


def _median_seconds(run: Callable[[], object], repeats: int) -> float:
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        run()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def _speedup(serial: float, parallel: float) -> float:
    if serial <= 0 or parallel <= 0:
        return 1.0
    return serial / parallel


def _solve(
    a: CsrMatrix,
    b: np.ndarray,
    m: Optional[Preconditioner],
    cfg: SolverConfig,
    workers: int,
    repeats: int,
    setup_seconds: float,
) -> Tuple[np.ndarray, SolveReport, float]:
    """Run the solve `repeats` times and return the last solution, its
    report and the median solve time."""
    times = []
    for i in range(repeats):
        show_progress(
            f'GMRES with {workers} worker(s), run {i + 1}/{repeats}'
        )
        x, report = gmres(a, b, m, cfg, workers, setup_seconds)
        times.append(report.solve_seconds)
    return x, report, statistics.median(times)


def run_benchmark(
    matrix_source: Union[MatrixSource, CsrMatrix],
    precond_spec: PreconditionerSpec,
    blocks: int,
    overlap: int,
    workers: int,
    cfg: SolverConfig = SolverConfig(),
    repeats: int = 3,
    width_policy: WidthPolicy = WidthPolicy.auto(),
) -> BenchRow:
    """Build the preconditioner and solve A x = A 1 with GMRES, once with
    one worker and once with `workers` workers.

    Times are medians over `repeats` runs. Non-convergence is reported in
    the row, not raised.

    Raises:
        DeterminismError: the two worker counts did not give the same
            iterations, residual and solution
    """
    if repeats < 1:
        raise ValueError(f'repeats should be >= 1, got {repeats}')
    if workers < 1:
        raise ValueError(f'workers should be >= 1, got {workers}')
    if isinstance(matrix_source, MatrixSource):
        a = matrix_source.load()
    else:
        a = matrix_source
    b = spmv_csr(a, np.ones(a.n_cols))

    start_step(f'Building {precond_spec.label} on {blocks} block(s)')
    start = time.perf_counter()
    m = precond_spec.build(a, blocks, overlap, width_policy)
    setup_seconds = time.perf_counter() - start

    results = {}
    for w in (1, workers):
        x, report, solve_seconds = _solve(
            a, b, m, cfg, w, repeats, setup_seconds
        )
        if m is not None:
            precond_seconds = _median_seconds(partial(m.apply, b, w), repeats)
        else:
            precond_seconds = 0.0
        results[w] = (x, report, solve_seconds, precond_seconds)
    x_serial, serial, solve_serial, pre_serial = results[1]
    x_parallel, parallel, solve_parallel, pre_parallel = results[workers]

    if (
        serial.iterations != parallel.iterations
        or serial.final_relative_residual != parallel.final_relative_residual
        or not np.array_equal(x_serial, x_parallel)
    ):
        raise DeterminismError(
            f'{precond_spec.label}: 1 worker gave {serial.iterations} '
            f'iterations (residual {serial.final_relative_residual!r}), '
            f'{workers} workers gave {parallel.iterations} '
            f'(residual {parallel.final_relative_residual!r})'
        )
    error = float(np.max(np.abs(x_parallel - 1.0))) if a.n_rows else 0.0
    end_step(
        f'{precond_spec.label} on {blocks} block(s): {parallel.iterations} '
        f'iterations, {solve_serial:.3f}s -> {solve_parallel:.3f}s'
    )
    logging.info(
        f'{precond_spec.label}, {blocks} block(s): setup {setup_seconds:.3f}s,'
        f' {parallel.preconditioner_applications} preconditioner '
        f'applications, max |x - 1| = {error:.3e}'
    )
    return BenchRow(
        preconditioner=precond_spec.label,
        blocks=blocks,
        solve_seconds_serial=solve_serial,
        solve_seconds_parallel=solve_parallel,
        solve_speedup=_speedup(solve_serial, solve_parallel),
        precond_seconds_serial=pre_serial,
        precond_seconds_parallel=pre_parallel,
        precond_speedup=_speedup(pre_serial, pre_parallel),
        iterations=parallel.iterations,
        converged=parallel.converged,
    )


def run_experiment(
    spec: ExperimentSpec,
    workers: int,
    cfg: SolverConfig = SolverConfig(),
    repeats: int = 3,
    matrix: Optional[MatrixSource] = None,
    width_policy: WidthPolicy = WidthPolicy.auto(),
) -> List[BenchRow]:
    """Run every row of an experiment on its matrix, or on `matrix` when
    given. The matrix is loaded once."""
    source = matrix or MatrixSource.parse(spec.matrix)
    logging.info(f'Experiment {spec.name} on {source}')
    a = source.load()
    return [
        run_benchmark(
            a,
            PreconditionerSpec.parse(run.precond),
            run.blocks,
            run.overlap,
            workers,
            cfg,
            repeats,
            width_policy,
        )
        for run in spec.runs
    ]


def write_csv(rows: List[BenchRow], path: Union[str, Path]) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.model_dump(by_alias=True))


def format_table(rows: List[BenchRow]) -> str:
    """Render rows as a plain text table with the CSV column names"""
    cells = [CSV_COLUMNS]
    for row in rows:
        values = row.model_dump(by_alias=True)
        cells.append(
            [
                f'{v:.4g}' if isinstance(v, float) else str(v)
                for v in (values[c] for c in CSV_COLUMNS)
            ]
        )
    widths = [max(len(cell) for cell in column) for column in zip(*cells)]
    return '\n'.join(
        '  '.join(cell.rjust(width) for cell, width in zip(line, widths))
        for line in cells
    )
