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

from abc import ABC, abstractmethod

import numpy as np

from ..formats.csr import check_vector


class Preconditioner(ABC):
    """An operator approximating the inverse of a matrix A, applied to a
    residual inside a Krylov iteration."""

    @property
    @abstractmethod
    def n(self) -> int:
        """The dimension of the operator"""

    @abstractmethod
    def apply(self, r: np.ndarray, workers: int = 1) -> np.ndarray:
        """Return M^-1 r.

        The result should not depend on the number of workers.
        """


class IdentityPreconditioner(Preconditioner):
    """M = I, the unpreconditioned case"""

    def __init__(self, n: int):
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    def apply(self, r: np.ndarray, workers: int = 1) -> np.ndarray:
        return check_vector(r, self._n, 'r').copy()
