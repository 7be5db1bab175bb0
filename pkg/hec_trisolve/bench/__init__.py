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

"""Benchmark matrices, MatrixMarket I/O and the benchmark harness behind the
hec-bench command."""

# flake8: noqa: F401

from .generators import gen_poisson7
from .harness import format_table, run_benchmark, run_experiment, write_csv
from .matrix_market import read_matrix_market, write_matrix_market
from .specs import (
    CSV_COLUMNS,
    BenchRow,
    ExperimentRun,
    ExperimentSpec,
    MatrixSource,
    PreconditionerSpec,
    load_experiment,
    parse_ilu_method,
)
