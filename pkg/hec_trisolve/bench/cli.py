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

"""The hec-bench command: run preconditioned GMRES benchmarks and print or
save a result table."""

import argparse
import logging
import os
import sys
from typing import List, Optional

from ..errors import HecTrisolveException
from ..formats.hec import WidthPolicy
from ..krylov import SolverConfig
from .harness import format_table, run_benchmark, run_experiment, write_csv
from .specs import MatrixSource, PreconditionerSpec, load_experiment


def _width_policy(text: str) -> WidthPolicy:
    if text == 'auto':
        return WidthPolicy.auto()
    try:
        return WidthPolicy.fixed(int(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f'expected auto or a width >= 0, got {text!r}'
        ) from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hec-bench',
        description=(
            'Solve A x = A 1 with preconditioned GMRES, using one worker '
            'then W workers, and report times and speedups.'
        ),
    )
    parser.add_argument(
        '--matrix',
        help='poisson:NX,NY,NZ or mm:PATH (overrides the experiment matrix)',
    )
    parser.add_argument(
        '--precond',
        default='bilu0',
        help='none, bilu0, biluk:K, bilut:P,TOL, ras or ras:METHOD',
    )
    parser.add_argument('--blocks', type=int, default=1)
    parser.add_argument('--overlap', type=int, default=0)
    parser.add_argument('--workers', type=int, default=os.cpu_count() or 1)
    parser.add_argument('--restart', type=int, default=20)
    parser.add_argument('--tol', type=float, default=1e-6)
    parser.add_argument('--max-iters', type=int, default=10000)
    parser.add_argument('--repeats', type=int, default=3)
    parser.add_argument(
        '--ell-width',
        type=_width_policy,
        default=WidthPolicy.auto(),
        help='ELL width of the prepared factors, auto or an integer',
    )
    parser.add_argument('--out', help='write the result rows to this CSV')
    parser.add_argument(
        '--experiment',
        help=(
            'run a series of benchmarks from a JSON file or a packaged '
            'preset (poisson_table, atmosmodd_table)'
        ),
    )
    parser.add_argument('--verbose', action='store_true')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s %(levelname)s %(message)s',
    )
    if args.matrix is None and args.experiment is None:
        parser.error('one of --matrix or --experiment is required')
    try:
        cfg = SolverConfig(
            restart=args.restart, max_iters=args.max_iters, rel_tol=args.tol
        )
        matrix = MatrixSource.parse(args.matrix) if args.matrix else None
        if args.experiment:
            rows = run_experiment(
                load_experiment(args.experiment),
                args.workers,
                cfg,
                args.repeats,
                matrix,
                args.ell_width,
            )
        else:
            assert matrix is not None
            rows = [
                run_benchmark(
                    matrix,
                    PreconditionerSpec.parse(args.precond),
                    args.blocks,
                    args.overlap,
                    args.workers,
                    cfg,
                    args.repeats,
                    args.ell_width,
                )
            ]
    except (HecTrisolveException, ValueError) as e:
        logging.error(f'{type(e).__name__}: {e}')
        return 1
    print(format_table(rows))
    if args.out:
        write_csv(rows, args.out)
        logging.info(f'Wrote {len(rows)} row(s) to {args.out}')
    return 0


if __name__ == '__main__':
    sys.exit(main())
