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

from dataclasses import dataclass, field
from typing import List

from pydantic import BaseModel, ConfigDict, Field


class SolverConfig(BaseModel):
    """Parameters of the restarted GMRES solver"""

    model_config = ConfigDict(frozen=True)

    # Number of inner iterations between two restarts, the m of GMRES(m)
    restart: int = Field(default=20, ge=1)

    # Total number of inner iterations allowed over all restarts
    max_iters: int = Field(default=10000, ge=1)

    # The solver stops when ||b - A x||_2 <= max(rel_tol ||b||_2, abs_tol)
    rel_tol: float = Field(default=1e-6, ge=0)
    abs_tol: float = Field(default=0.0, ge=0)


@dataclass(frozen=True)
class SolveReport:
    """The outcome of a GMRES solve"""

    converged: bool

    # Inner iterations over all restart cycles, one preconditioned SpMV each
    iterations: int

    # ||b - A x||_2 / ||b||_2, recomputed explicitly for the returned x
    final_relative_residual: float

    # Preconditioner construction time, as given by the caller that built
    # the preconditioner
    setup_seconds: float
    solve_seconds: float

    # Least-squares residual norm estimate after every inner iteration
    residual_history: List[float] = field(default_factory=list)

    preconditioner_applications: int = 0

    # Time spent in preconditioner applications, included in solve_seconds
    precond_seconds: float = 0.0
