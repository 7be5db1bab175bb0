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

# flake8: noqa: F401

from .errors import (
    DeterminismError,
    DuplicateEntryError,
    HecTrisolveException,
    LevelScheduleError,
    MatrixFormatError,
    MatrixMarketError,
    SingularTriangularError,
    ZeroPivotError,
)
from .formats import (
    CsrMatrix,
    HecMatrix,
    WidthPolicy,
    hec_from_csr,
    spmv_csr,
    spmv_hec,
)
from .ilu import IluFactors, ilu0, ilu_k, ilut
from .krylov import SolveReport, SolverConfig, gmres
from .precond import (
    BlockPreconditioner,
    IdentityPreconditioner,
    IluParams,
    Preconditioner,
    PreconditionerKind,
    build_preconditioner,
)
from .schedule import LevelSchedule, build_schedule, compute_levels
from .triangular import (
    PreparedTriangular,
    prepare_lower,
    prepare_upper,
    solve,
)
